#pragma once

// Finite fans of convex cones: face closure, axiom checks, support and
// completeness.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toric/cone.hpp"

namespace toric {

enum class FanIssue { NotAFace, TorsionQuotient, NotPointed, BadIntersection };

std::string fan_issue_name(FanIssue kind);

struct FanDiagnostic {
  FanIssue kind;
  std::vector<std::size_t> cones;  // indices into the input list of maximal cones
  IntVector witness;
  std::string message;
};

/// P_i ∩ P_j == P_i - p == P_j - q.
struct CommonFace {
  std::size_t index;
  PrimeIdeal p;  // prime of P_i
  PrimeIdeal q;  // prime of P_j
};

class Fan {
 public:
  Eigen::Index ambient_rank() const { return rank_; }
  std::size_t size() const { return cones_.size(); }
  const std::vector<ConvexCone>& cones() const { return cones_; }
  const ConvexCone& cone(std::size_t i) const { return cones_.at(i); }

  /// Primes of P_i in spec_faces order, with the index of each face.
  const std::vector<PrimeIdeal>& primes(std::size_t i) const { return primes_.at(i); }
  const std::vector<std::size_t>& face_indices(std::size_t i) const { return face_index_.at(i); }

  /// Cones that are faces of no other cone, in cone order.
  const std::vector<std::size_t>& maximal() const { return maximal_; }

  CommonFace common_face(std::size_t i, std::size_t j) const;
  std::optional<std::size_t> index_of(const ConvexCone& c) const;

 private:
  friend struct FanBuilder;
  Eigen::Index rank_ = 0;
  std::vector<ConvexCone> cones_;
  std::vector<std::vector<PrimeIdeal>> primes_;
  std::vector<std::vector<std::size_t>> face_index_;
  std::vector<std::size_t> maximal_;
  std::vector<CommonFace> relation_;  // upper triangle, row-major, i <= j
};

struct FanValidation {
  std::optional<Fan> fan;
  std::vector<FanDiagnostic> diagnostics;
  bool ok() const { return fan.has_value(); }
};

/// Face closure of the given maximal cones with both fan axioms checked.
/// `threads` > 1 spreads the pairwise checks over worker threads.
FanValidation validate_fan(const std::vector<std::vector<IntVector>>& max_cones, Eigen::Index ambient_rank,
                           unsigned threads = 1);

bool support_contains(const Fan& f, const IntVector& x);

/// Wall criterion: some cone has full rank, each codimension-one face of a
/// full-rank cone lies in exactly two full-rank cones, and full-rank cones
/// are connected through shared walls.
bool is_complete(const Fan& f);

}  // namespace toric
