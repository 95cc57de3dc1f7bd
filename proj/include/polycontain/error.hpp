#pragma once

#include <stdexcept>
#include <string>

namespace polycontain {

// Mirrors pc_status in polycontain.h; values must stay in sync.
enum class ErrorCode : int {
  kParse = 1,
  kDimension = 2,
  kPrecondition = 3,
  kGuard = 4,
  kSolver = 5,
  kFingerprint = 6,
  kArgument = 7,
  kIo = 8,
  kInternal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polycontain
