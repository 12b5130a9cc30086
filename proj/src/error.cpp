#include "gterrain/error.hpp"

namespace gterrain {

std::string_view error_token(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::io: return "io-error";
    case ErrorKind::parse: return "parse-error";
    case ErrorKind::empty_graph: return "empty-graph";
    case ErrorKind::coverage: return "coverage-error";
    case ErrorKind::duplicate_definition: return "duplicate-definition";
    case ErrorKind::unknown_id: return "unknown-id";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::cap_exceeded: return "cap-exceeded";
    case ErrorKind::size_mismatch: return "size-mismatch";
  }
  return "error";
}

}  // namespace gterrain
