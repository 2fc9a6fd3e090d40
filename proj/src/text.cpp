#include "text.hpp"

#include <array>
#include <cstdlib>

namespace tprr::text {

double parse_double(std::string_view tok, const std::string& where) {
  // std::from_chars<double> is incomplete on some libstdc++ versions; strtod
  // accepts the same shortest-round-trip forms we emit.
  std::string buf(tok);
  char* end = nullptr;
  double value = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty())
    throw ParseError(where + ": expected number, got '" + buf + "'");
  return value;
}

std::string format_double(double v) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace tprr::text
