#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inet {

enum class ErrorKind {
  syntax,
  unknown_symbol,
  arity_mismatch,
  linearity,
  invalid_program,
  stuck_active_pair,
  self_capture,
  cyclic_indirection,
  step_limit_exceeded,
  heap_exhausted,
  undeclared_symbol,
  missing_rule,
  double_free,
  io,
};

std::string_view to_string(ErrorKind kind);

// All toolkit failures are reported through this one exception type; callers
// that care about the cause switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int line = 0,
        int column = 0);

  ErrorKind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  ErrorKind kind_;
  int line_;
  int column_;
};

}  // namespace inet
