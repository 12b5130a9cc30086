#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gterrain {

enum class ErrorKind {
  io,
  parse,
  empty_graph,
  coverage,
  duplicate_definition,
  unknown_id,
  invalid_argument,
  cap_exceeded,
  size_mismatch,
};

/// Stable token used in CLI and service messages, e.g. "empty-graph".
std::string_view error_token(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace gterrain
