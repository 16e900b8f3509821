#pragma once

// Rational polyhedral cones over exact integers: double description,
// placing triangulations and Hilbert bases of cone ∩ lattice.

#include <cstddef>
#include <vector>

#include "toric/integer.hpp"
#include "toric/lattice.hpp"

namespace toric {

/// {s : <s, a> >= 0 for every a in constraints} as lineality + extreme rays.
struct DualDescription {
  IntSublattice lineality;        // lattice points of the lineality space
  std::vector<IntVector> rays;    // canonical extreme rays modulo lineality, lex-sorted
};

DualDescription dual_description(const std::vector<IntVector>& constraints, Eigen::Index ambient_rank);

/// A rational cone in Q^n with both descriptions.
struct RationalCone {
  Eigen::Index ambient_rank = 0;
  std::vector<IntVector> rays;     // extreme rays modulo lineality
  std::vector<IntVector> facets;   // inward facet normals modulo equations
  IntSublattice equations;         // annihilator of the linear span
  IntSublattice lineality;         // lattice points of the lineality space

  Eigen::Index dim() const { return ambient_rank - equations.rank(); }
  bool pointed() const { return lineality.rank() == 0; }
  bool contains(const IntVector& x) const;
  /// x lies in the cone but on none of its facets
  bool in_relative_interior(const IntVector& x) const;
};

RationalCone cone_from_generators(const std::vector<IntVector>& gens, Eigen::Index ambient_rank);
RationalCone cone_from_inequalities(const std::vector<IntVector>& inequalities,
                                    const std::vector<IntVector>& equations, Eigen::Index ambient_rank);

/// Simplices (as index lists into `rays`) of the placing triangulation of a
/// pointed cone, inserting rays in the given order.
std::vector<std::vector<std::size_t>> placing_triangulation(const std::vector<IntVector>& rays);

/// Nonzero lattice points sum(l_i v_i) with 0 <= l_i < 1, for linearly
/// independent v_1..v_d spanning Q^d.
std::vector<IntVector> parallelepiped_points(const std::vector<IntVector>& simplex);

enum class HilbertMethod {
  Automatic,      // triangulation unless the simplices are too large
  Triangulation,  // parallelepiped points of a placing triangulation
  Cutting,        // intersect the orthant with one facet at a time
};

/// Hilbert basis of a pointed full-dimensional cone ∩ Z^d, lex-sorted.
std::vector<IntVector> pointed_hilbert_basis(const RationalCone& cone,
                                             HilbertMethod method = HilbertMethod::Automatic);

struct HilbertBasis {
  std::vector<IntVector> elements;  // minimal generators of the pointed part, lex-sorted
  IntSublattice units;              // lattice points of the lineality space within L
};

/// Hilbert basis of cone(gens) ∩ L, where L contains gens and has the rank
/// of their span. Units are split off; the pointed generators are lifted
/// from the quotient by the units through one fixed linear section, so they
/// generate a complement of the units.
HilbertBasis hilbert_basis_in(const std::vector<IntVector>& gens, const IntSublattice& L);

}  // namespace toric
