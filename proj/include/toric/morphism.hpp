#pragma once

// Homomorphisms of fans phi: G -> G' with phi(P) inside some P' for each
// source cone P.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/errors.hpp"
#include "toric/fan.hpp"
#include "toric/scheme.hpp"

namespace toric {

struct FanMorphism {
  IntMatrix matrix;  // n' x n
  Fan source;
  Fan target;
  std::vector<std::size_t> assignment;  // source cone -> target cone

  IntVector apply(const IntVector& x) const { return matrix * x; }
};

/// Thrown by make_fan_morphism when some source cone maps into no target cone.
class NoTargetConeError : public ToricError {
 public:
  NoTargetConeError(std::size_t source_cone, IntVector witness, const std::string& what)
      : ToricError(ErrorCode::NoTargetCone, what), source_cone_(source_cone), witness_(std::move(witness)) {}
  std::size_t source_cone() const { return source_cone_; }
  const IntVector& witness() const { return witness_; }

 private:
  std::size_t source_cone_;
  IntVector witness_;
};

/// Assigns each source cone the first target cone (in cone order) that
/// contains its image.
FanMorphism make_fan_morphism(const IntMatrix& a, const Fan& src, const Fan& dst);

/// Every source cone P with phi(P) inside target cone j.
std::vector<std::size_t> chart_preimage(const FanMorphism& f, std::size_t j);

/// {x : phi(x) in P'_j}, pulled back through the transpose.
RationalCone pulled_back_cone(const FanMorphism& f, std::size_t j);

struct Properness {
  bool proper = true;
  std::optional<std::size_t> target_cone;  // first target cone whose preimage is not covered
  std::optional<IntVector> witness;        // a lattice point of that preimage in no member
};

/// phi^-1(P') is the union of the source cones mapping into P', for every P'.
Properness is_proper_morphism(const FanMorphism& f, unsigned threads = 1);

/// True iff phi is a group isomorphism, when R is a field. Over other rings
/// an isomorphism still gives True and anything else gives Unknown.
Tri is_birational(const FanMorphism& f, const RingDescriptor& r);

/// Row k: the pullback of the k-th generator of the target chart,
/// as coefficients over the generators of source chart i (both in
/// chart_presentation order). Non-invertible columns are nonnegative.
IntMatrix induced_chart_hom(const FanMorphism& f, std::size_t i);

struct MorphismReport {
  bool valid = true;
  Properness proper;
  Tri birational = Tri::Unknown;
  std::map<std::size_t, std::vector<std::size_t>> chart_preimages;
  std::map<std::string, std::string> notes;
};

MorphismReport morphism_report(const FanMorphism& f, const RingDescriptor& r, unsigned threads = 1);

}  // namespace toric
