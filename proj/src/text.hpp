#ifndef TPRR_SRC_TEXT_HPP
#define TPRR_SRC_TEXT_HPP

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "tprr/errors.hpp"

namespace tprr::text {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Strips a '#' comment, trims whitespace.
inline std::string_view strip_comment(std::string_view s) {
  if (auto pos = s.find('#'); pos != std::string_view::npos) s = s.substr(0, pos);
  return trim(s);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename Int>
Int parse_int(std::string_view tok, const std::string& where) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(where + ": expected integer, got '" + std::string(tok) + "'");
  return value;
}

double parse_double(std::string_view tok, const std::string& where);

// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

// Reads line by line, invoking fn(line_number, stripped_line) for every
// non-empty line after comment removal.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = strip_comment(line);
    if (!body.empty()) fn(lineno, body);
  }
}

}  // namespace tprr::text

#endif
