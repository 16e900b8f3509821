#include "toric/errors.hpp"

namespace toric {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::TorsionObstruction: return "TorsionObstruction";
    case ErrorCode::NotSaturated: return "NotSaturated";
    case ErrorCode::ForeignPrime: return "ForeignPrime";
    case ErrorCode::HasUnits: return "HasUnits";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::TorsionQuotient: return "TorsionQuotient";
    case ErrorCode::NotFullGroup: return "NotFullGroup";
    case ErrorCode::TorsionByUnits: return "TorsionByUnits";
    case ErrorCode::NoTargetCone: return "NoTargetCone";
  }
  return "Unknown";
}

}  // namespace toric
