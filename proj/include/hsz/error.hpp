#pragma once

#include <stdexcept>
#include <string>

namespace hsz {

enum class ErrorKind {
  invalid_parameter,
  not_schur_function,
  not_normalized,
  inconsistent_input,
  invalid_weight,
  degenerate,
  singular_factor,
  refused,
  provenance,
  io,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this exception; the kind lets
// the CLI map failures onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hsz
