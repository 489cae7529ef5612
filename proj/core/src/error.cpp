#include "inet/error.hpp"

namespace inet {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax: return "SyntaxError";
    case ErrorKind::unknown_symbol: return "UnknownSymbol";
    case ErrorKind::arity_mismatch: return "ArityMismatch";
    case ErrorKind::linearity: return "LinearityError";
    case ErrorKind::invalid_program: return "InvalidProgram";
    case ErrorKind::stuck_active_pair: return "StuckActivePair";
    case ErrorKind::self_capture: return "SelfCapture";
    case ErrorKind::cyclic_indirection: return "CyclicIndirection";
    case ErrorKind::step_limit_exceeded: return "StepLimitExceeded";
    case ErrorKind::heap_exhausted: return "HeapExhausted";
    case ErrorKind::undeclared_symbol: return "UndeclaredSymbol";
    case ErrorKind::missing_rule: return "MissingRule";
    case ErrorKind::double_free: return "DoubleFree";
    case ErrorKind::io: return "IoError";
  }
  return "Error";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message, int line,
                     int column) {
  std::string out(to_string(kind));
  if (line > 0) {
    out += " at " + std::to_string(line) + ":" + std::to_string(column);
  }
  out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, int line, int column)
    : std::runtime_error(decorate(kind, message, line, column)),
      kind_(kind),
      line_(line),
      column_(column) {}

}  // namespace inet
