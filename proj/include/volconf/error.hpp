#pragma once

#include <stdexcept>
#include <string>

namespace volconf {

enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  Infeasible,
  Protocol,
  Io,
};

/// Every failure raised by the core carries one of the codes above; the C
/// layer maps them one-to-one onto status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace volconf
