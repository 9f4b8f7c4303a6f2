#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cdsort {

enum class ErrorCode {
  ParseError,
  NotABijection,
  ZeroEntry,
  SignedEntryInUnsignedMode,
  SizeMismatch,
  OutOfRange,
  InvalidContext,
  NotSortable,
  PileTooSmall,
  NotInPile,
  InvalidF,
  FNotSubsetOfPile,
  NoMove,
  TooLarge,
  IllegalMove,
  Finished,
  NotFound,
  BadRequest,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI and the service can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cdsort
