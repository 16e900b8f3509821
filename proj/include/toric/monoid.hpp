#pragma once

// Finitely generated submonoids of Z^n, written additively.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "toric/integer.hpp"
#include "toric/lattice.hpp"
#include "toric/polyhedral.hpp"

namespace toric {

/// A finitely generated submonoid of Z^n. The generator list is sorted
/// lexicographically, duplicate free, free of zero and minimal. Values share
/// an immutable core whose derived data (rational cone, units, saturation
/// flag) is computed on first use under std::call_once.
class FgMonoid {
 public:
  struct Minimal {};  // tag: generators already canonical and minimal

  FgMonoid() : FgMonoid(std::vector<IntVector>{}, 0) {}
  FgMonoid(std::vector<IntVector> generators, Eigen::Index ambient_rank);
  FgMonoid(std::vector<IntVector> generators, Eigen::Index ambient_rank, Minimal);

  static FgMonoid trivial(Eigen::Index ambient_rank) { return FgMonoid({}, ambient_rank); }

  Eigen::Index ambient_rank() const;
  const std::vector<IntVector>& generators() const;
  std::size_t size() const { return generators().size(); }

  const IntSublattice& groth() const;
  const IntSublattice& units() const;
  const RationalCone& cone() const;
  bool saturated() const;

  bool contains(const IntVector& x) const;

  /// Coefficients c over generators() with sum c_i g_i == x. Coefficients
  /// of non-unit generators are nonnegative; those of unit generators may be
  /// negative (every unit generator has an inverse in the monoid).
  std::optional<IntVector> decompose(const IntVector& x) const;

  friend bool operator==(const FgMonoid& a, const FgMonoid& b);

 private:
  struct Core;
  std::shared_ptr<const Core> core_;
};

/// A prime ideal p of a monoid M, held through its complementary face
/// N = M - p.
struct PrimeIdeal {
  std::vector<IntVector> parent_generators;
  std::vector<std::size_t> face_generators;  // indices into parent_generators
  IntVector supporting_functional;            // zero on the face, > 0 on the other generators

  bool belongs_to(const FgMonoid& m) const;
  bool is_empty() const { return face_generators.size() == parent_generators.size(); }
  std::vector<IntVector> face_vectors() const;
  std::vector<std::size_t> prime_generators() const;
  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.face_generators == b.face_generators && a.parent_generators.size() == b.parent_generators.size() &&
           std::equal(a.parent_generators.begin(), a.parent_generators.end(), b.parent_generators.begin(),
                      [](const IntVector& x, const IntVector& y) { return equal(x, y); });
  }
};

IntSublattice grothendieck_group(const FgMonoid& m);
IntSublattice units_subgroup(const FgMonoid& m);
bool membership(const FgMonoid& m, const IntVector& x);
bool is_saturated(const FgMonoid& m);
FgMonoid saturation(const FgMonoid& m);

/// All primes of a saturated monoid, one per face of its cone. The empty
/// prime comes first; larger faces precede smaller ones.
std::vector<PrimeIdeal> spec_faces(const FgMonoid& m);

/// M_p: the generators of M together with the negated face generators.
FgMonoid localize(const FgMonoid& m, const PrimeIdeal& p);

struct FaceQuotient {
  FgMonoid image;
  IntMatrix projection;  // Z^n -> Z^n / saturate(Groth(N)), surjective
};
FaceQuotient quotient_by_face(const FgMonoid& m, const PrimeIdeal& p);

struct UnitSplitting {
  FgMonoid pointed;
  IntSublattice units;
};
UnitSplitting split_units(const FgMonoid& m);

/// Length of the longest chain of primes.
std::size_t monoid_dim(const FgMonoid& m);

/// sigma with sigma|_N = 0 and sigma(g) >= b on every generator of p.
IntVector separating_functional(const FgMonoid& m, const PrimeIdeal& p, const Integer& b);

/// x -> (s_1(x), ..., s_s(x)) where the s_i form the Hilbert basis of the
/// dual cone of M inside Hom(Groth(M), Z).
struct MonoidEmbedding {
  IntSublattice domain;                   // Groth(M)
  IntMatrix coordinate_rows;              // acting on coordinates over domain's basis
  std::optional<IntMatrix> ambient_rows;  // same maps on Z^n, when Groth(M) is saturated

  Eigen::Index target_rank() const { return coordinate_rows.rows(); }
  /// nullopt when x is not in the domain
  std::optional<IntVector> apply(const IntVector& x) const;
};
MonoidEmbedding embed_into_Nn(const FgMonoid& m);

}  // namespace toric
