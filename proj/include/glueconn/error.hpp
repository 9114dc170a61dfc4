#pragma once

#include <stdexcept>
#include <string>

namespace glueconn {

/// Failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
  parse,         // malformed input text or arguments
  domain,        // mathematically undefined request (e.g. lambda_2 of one vertex)
  spec,          // invalid graph, bridge or interface description
  precondition,  // input valid in itself but outside an operation's assumptions
  stability,     // integrator step above the stability limit
  numerical,     // solver failure
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::domain: return "domain";
    case ErrorKind::spec: return "spec";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::stability: return "stability";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

}  // namespace glueconn
