#include "hsz/error.hpp"

namespace hsz {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid parameter";
    case ErrorKind::not_schur_function: return "not a Schur function";
    case ErrorKind::not_normalized: return "not normalized";
    case ErrorKind::inconsistent_input: return "inconsistent input";
    case ErrorKind::invalid_weight: return "invalid weight";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::singular_factor: return "singular factor";
    case ErrorKind::refused: return "refused";
    case ErrorKind::provenance: return "provenance";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace hsz
