#pragma once

// Convex and concave cones in a lattice G = Z^n and the dualities
// M -> M-check (into G*) and N -> N-hat.

#include <optional>
#include <vector>

#include "toric/integer.hpp"
#include "toric/lattice.hpp"
#include "toric/monoid.hpp"

namespace toric {

/// A saturated, pointed monoid M with G / Groth(M) torsion free.
struct ConvexCone {
  Eigen::Index ambient_rank = 0;
  std::vector<IntVector> hilbert_basis;  // lex-sorted
  IntSublattice span;                    // Groth(M), saturated in G
  std::vector<IntVector> facet_normals;  // Hilbert basis of the dual modulo its units
  FgMonoid monoid;

  Eigen::Index rank() const { return span.rank(); }
  bool contains(const IntVector& x) const { return monoid.contains(x); }
  friend bool operator==(const ConvexCone& a, const ConvexCone& b);
};

/// A saturated monoid N with Groth(N) = G and G / N* torsion free.
struct ConcaveCone {
  Eigen::Index ambient_rank = 0;
  std::vector<IntVector> hilbert_basis;  // pointed part, reduced modulo units, lex-sorted
  IntSublattice units;                   // N*
  FgMonoid monoid;                       // generated by hilbert_basis and +-units

  Eigen::Index rank() const { return ambient_rank; }
  bool contains(const IntVector& x) const { return monoid.contains(x); }
  friend bool operator==(const ConcaveCone& a, const ConcaveCone& b);
};

ConvexCone make_convex_cone(const std::vector<IntVector>& gens, Eigen::Index ambient_rank);
ConvexCone make_convex_cone(const std::vector<IntVector>& gens);
ConcaveCone make_concave_cone(const std::vector<IntVector>& gens, Eigen::Index ambient_rank);
ConcaveCone make_concave_cone(const std::vector<IntVector>& gens);

ConcaveCone dual_convex(const ConvexCone& m);
ConvexCone dual_concave(const ConcaveCone& n);

/// Minimal generators of cone(gens) ∩ saturate(span(gens)): the pointed
/// Hilbert basis followed by +-b for each basis vector b of the units.
std::vector<IntVector> hilbert_basis(const std::vector<IntVector>& gens, Eigen::Index ambient_rank);
std::vector<IntVector> hilbert_basis(const std::vector<IntVector>& gens);

/// p -> {s in M-check : s(x) > 0 for some x in M - p}, as a prime of
/// dual.monoid. `dual` must be dual_convex(m).
PrimeIdeal dual_prime(const ConvexCone& m, const ConcaveCone& dual, const PrimeIdeal& p);
PrimeIdeal dual_prime(const ConvexCone& m, const PrimeIdeal& p);

/// q -> {x in N-hat : s(x) > 0 for some s in N - q}, as a prime of
/// hat.monoid. `hat` must be dual_concave(n).
PrimeIdeal hat_prime(const ConcaveCone& n, const ConvexCone& hat, const PrimeIdeal& q);
PrimeIdeal hat_prime(const ConcaveCone& n, const PrimeIdeal& q);

/// The face M - p as a convex cone.
ConvexCone face_cone(const ConvexCone& m, const PrimeIdeal& p);

ConvexCone intersect_cones(const ConvexCone& p, const ConvexCone& q);

/// The prime p of P with C == P - p, if C is a face of P.
std::optional<PrimeIdeal> face_test(const ConvexCone& c, const ConvexCone& p);

}  // namespace toric
