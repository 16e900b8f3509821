#pragma once

#include <stdexcept>
#include <string>

namespace toric {

enum class ErrorCode {
  InvalidArgument,
  RankMismatch,
  TorsionObstruction,
  NotSaturated,
  ForeignPrime,
  HasUnits,
  NotPointed,
  TorsionQuotient,
  NotFullGroup,
  TorsionByUnits,
  NoTargetCone,
};

const char* error_code_name(ErrorCode code);

class ToricError : public std::runtime_error {
 public:
  ToricError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace toric
