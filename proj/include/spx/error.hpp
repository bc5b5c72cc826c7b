#ifndef SPX_ERROR_HPP
#define SPX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spx {

enum class ErrorKind {
  Usage,              // bad argument at an API boundary (rank ids, flags)
  ContractViolation,  // precondition of an operation not met
  WidthState,         // object has no valid global index width
  WidthRange,         // value does not fit the requested 32-bit width
  Width,              // narrow entry point called on a 64-bit object
  WidthMix,           // 32-bit and 64-bit objects combined in one operation
  Consistency,        // caller-stated value disagrees with the computed one
  NotOwned,           // global index is not owned by the calling rank
  Lifecycle,          // operation not allowed in the object's current state
  InvalidColumn,      // column index not resolvable during fill
  Capacity,           // caller buffer too small
  Parse,              // malformed input file
  Io,                 // filesystem failure
  RankAborted,        // another rank failed during a collective
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown when an output buffer is too small; carries the length needed.
class CapacityError : public Error {
 public:
  CapacityError(int required, const std::string& what);
  int required() const noexcept { return required_; }

 private:
  int required_;
};

/// Thrown by the file readers; line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(long long line, const std::string& what);
  long long line() const noexcept { return line_; }

 private:
  long long line_;
};

[[noreturn]] void throw_error(ErrorKind kind, const std::string& what);

}  // namespace spx

#endif  // SPX_ERROR_HPP
