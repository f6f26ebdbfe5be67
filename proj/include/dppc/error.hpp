#pragma once

#include <stdexcept>
#include <string>

namespace dppc {

// Error kinds double as CLI exit codes.
enum class ErrorKind : int {
  parse = 2,       // malformed input text or files
  validation = 3,  // structurally invalid diagram, term, decomposition, ...
  resource = 4,    // a configured size/precision limit was exceeded
  unresolved = 5,  // inference cannot certify a result (acceptance probability ~ 0)
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, std::string msg) : std::runtime_error(std::move(msg)), kind(k) {}
};

[[noreturn]] inline void raise(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline void check(bool ok, ErrorKind k, const std::string& msg) {
  if (!ok) throw Error(k, msg);
}

}  // namespace dppc
