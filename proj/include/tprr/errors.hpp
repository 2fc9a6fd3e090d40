#ifndef TPRR_ERRORS_HPP
#define TPRR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tprr {

// Malformed or inconsistent input: graph/overlay/dump/config files,
// routing-table entries that do not match the physical graph.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// An enumeration-based operation was asked to exceed its edge-count guard.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tprr

#endif
