#include "spx/error.hpp"

namespace spx {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::ContractViolation: return "contract violation";
    case ErrorKind::WidthState: return "width state";
    case ErrorKind::WidthRange: return "width range";
    case ErrorKind::Width: return "width";
    case ErrorKind::WidthMix: return "width mix";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::NotOwned: return "not owned";
    case ErrorKind::Lifecycle: return "lifecycle";
    case ErrorKind::InvalidColumn: return "invalid column";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::RankAborted: return "rank aborted";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

CapacityError::CapacityError(int required, const std::string& what)
    : Error(ErrorKind::Capacity, what + " (required " + std::to_string(required) + ")"),
      required_(required) {}

ParseError::ParseError(long long line, const std::string& what)
    : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what), line_(line) {}

void throw_error(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace spx
