#include "toric/cone.hpp"

#include <algorithm>

#include "toric/errors.hpp"
#include "toric/polyhedral.hpp"

namespace toric {
namespace {

Eigen::Index common_rank(const std::vector<IntVector>& gens) {
  if (gens.empty()) throw ToricError(ErrorCode::InvalidArgument, "empty generator list without an ambient rank");
  return gens.front().size();
}

void check_lengths(const std::vector<IntVector>& gens, Eigen::Index n) {
  for (const IntVector& g : gens)
    if (g.size() != n) throw ToricError(ErrorCode::RankMismatch, "generators of differing ambient rank");
}

std::vector<IntVector> with_units(std::vector<IntVector> gens, const IntSublattice& units) {
  for (const IntVector& u : units.basis_vectors()) {
    gens.push_back(u);
    gens.push_back(-u);
  }
  return gens;
}

/// Hilbert basis of the cone dual to cone(coords) in Z^k, for coords
/// spanning Q^k.
std::vector<IntVector> dual_hilbert_basis(const std::vector<IntVector>& coords, Eigen::Index k) {
  if (k == 0) return {};
  const RationalCone c = cone_from_generators(coords, k);
  const IntSublattice full = IntSublattice::span_of(IntMatrix::Identity(k, k));
  return hilbert_basis_in(c.facets, full).elements;
}

ConvexCone build_convex(std::vector<IntVector> hb, IntSublattice span, Eigen::Index n) {
  ConvexCone m;
  m.ambient_rank = n;
  sort_unique(hb);
  m.hilbert_basis = std::move(hb);
  m.span = std::move(span);
  m.monoid = FgMonoid(m.hilbert_basis, n, FgMonoid::Minimal{});
  // dual side: functionals on span coordinates, lifted to G*
  std::vector<IntVector> coords;
  for (const IntVector& h : m.hilbert_basis) coords.push_back(*m.span.solve(h));
  for (const IntVector& t : dual_hilbert_basis(coords, m.span.rank()))
    m.facet_normals.push_back(extend_functional(m.span, t));
  sort_unique(m.facet_normals);
  return m;
}

ConcaveCone build_concave(std::vector<IntVector> hb, IntSublattice units, Eigen::Index n) {
  ConcaveCone c;
  c.ambient_rank = n;
  for (IntVector& h : hb) h = units.reduce(h);
  sort_unique(hb);
  c.hilbert_basis = std::move(hb);
  c.units = std::move(units);
  // already minimal: a unit is never a sum involving a non-unit
  std::vector<IntVector> gens = with_units(c.hilbert_basis, c.units);
  sort_unique(gens);
  c.monoid = FgMonoid(std::move(gens), n, FgMonoid::Minimal{});
  return c;
}

PrimeIdeal matching_prime(const FgMonoid& target, const IntVector& witness) {
  std::vector<std::size_t> face;
  for (std::size_t i = 0; i < target.size(); ++i)
    if (dot(target.generators()[i], witness) == 0) face.push_back(i);
  for (PrimeIdeal& q : spec_faces(target))
    if (q.face_generators == face) return q;
  throw ToricError(ErrorCode::InvalidArgument, "dual face not found; cones are not dual to each other");
}

IntVector face_sum(const PrimeIdeal& p, Eigen::Index n) {
  IntVector w = IntVector::Zero(n);
  for (const IntVector& v : p.face_vectors()) w += v;
  return w;
}

}  // namespace

bool operator==(const ConvexCone& a, const ConvexCone& b) {
  return a.ambient_rank == b.ambient_rank && a.monoid == b.monoid;
}

bool operator==(const ConcaveCone& a, const ConcaveCone& b) {
  return a.ambient_rank == b.ambient_rank && a.units == b.units && a.hilbert_basis.size() == b.hilbert_basis.size() &&
         std::equal(a.hilbert_basis.begin(), a.hilbert_basis.end(), b.hilbert_basis.begin(),
                    [](const IntVector& x, const IntVector& y) { return equal(x, y); });
}

ConvexCone make_convex_cone(const std::vector<IntVector>& gens, Eigen::Index n) {
  check_lengths(gens, n);
  std::vector<IntVector> nonzero;
  for (const IntVector& g : gens) {
    if (is_zero(g)) continue;
    // N g alone is not saturated in Z^n when g is not primitive
    if (content(g) != 1)
      throw ToricError(ErrorCode::TorsionQuotient,
                       "generator " + to_string(g) + " is not primitive: lattice quotient has torsion");
    nonzero.push_back(g);
  }
  const RationalCone cone = cone_from_generators(nonzero, n);
  if (!cone.pointed())
    throw ToricError(ErrorCode::NotPointed, "cone contains a nonzero unit " + to_string(cone.lineality.basis_vectors().front()));
  IntSublattice span = saturate_lattice(lattice_from_vectors(nonzero, n));
  std::vector<IntVector> hb = hilbert_basis_in(nonzero, span).elements;
  return build_convex(std::move(hb), std::move(span), n);
}

ConvexCone make_convex_cone(const std::vector<IntVector>& gens) { return make_convex_cone(gens, common_rank(gens)); }

ConcaveCone make_concave_cone(const std::vector<IntVector>& gens, Eigen::Index n) {
  check_lengths(gens, n);
  const IntSublattice groth = lattice_from_vectors(gens, n);
  if (!groth.is_full())
    throw ToricError(ErrorCode::NotFullGroup, "generators span a subgroup of index other than 1");
  const FgMonoid generated(gens, n);
  if (!quotient_torsion_free(generated.units()))
    throw ToricError(ErrorCode::TorsionByUnits, "quotient by the unit group has torsion");
  HilbertBasis hb = hilbert_basis_in(gens, groth);
  return build_concave(std::move(hb.elements), std::move(hb.units), n);
}

ConcaveCone make_concave_cone(const std::vector<IntVector>& gens) { return make_concave_cone(gens, common_rank(gens)); }

ConcaveCone dual_convex(const ConvexCone& m) {
  return build_concave(m.facet_normals, annihilator(m.span), m.ambient_rank);
}

ConvexCone dual_concave(const ConcaveCone& n) {
  // x in N-hat kills the units, so x = B^T c with B a basis of their annihilator
  IntSublattice span = annihilator(n.units);
  const IntMatrix& B = span.basis();
  std::vector<IntVector> images;
  for (const IntVector& s : n.hilbert_basis) images.push_back(B * s);
  std::vector<IntVector> hb;
  for (const IntVector& c : dual_hilbert_basis(images, span.rank())) hb.push_back(B.transpose() * c);
  return build_convex(std::move(hb), std::move(span), n.ambient_rank);
}

std::vector<IntVector> hilbert_basis(const std::vector<IntVector>& gens, Eigen::Index n) {
  check_lengths(gens, n);
  const IntSublattice span = saturate_lattice(lattice_from_vectors(gens, n));
  const HilbertBasis hb = hilbert_basis_in(gens, span);
  return with_units(hb.elements, hb.units);
}

std::vector<IntVector> hilbert_basis(const std::vector<IntVector>& gens) { return hilbert_basis(gens, common_rank(gens)); }

PrimeIdeal dual_prime(const ConvexCone& m, const ConcaveCone& dual, const PrimeIdeal& p) {
  if (!p.belongs_to(m.monoid)) throw ToricError(ErrorCode::ForeignPrime, "prime ideal belongs to another cone");
  return matching_prime(dual.monoid, face_sum(p, m.ambient_rank));
}

PrimeIdeal dual_prime(const ConvexCone& m, const PrimeIdeal& p) { return dual_prime(m, dual_convex(m), p); }

PrimeIdeal hat_prime(const ConcaveCone& n, const ConvexCone& hat, const PrimeIdeal& q) {
  if (!q.belongs_to(n.monoid)) throw ToricError(ErrorCode::ForeignPrime, "prime ideal belongs to another cone");
  return matching_prime(hat.monoid, face_sum(q, n.ambient_rank));
}

PrimeIdeal hat_prime(const ConcaveCone& n, const PrimeIdeal& q) { return hat_prime(n, dual_concave(n), q); }

ConvexCone face_cone(const ConvexCone& m, const PrimeIdeal& p) {
  if (!p.belongs_to(m.monoid)) throw ToricError(ErrorCode::ForeignPrime, "prime ideal belongs to another cone");
  return make_convex_cone(p.face_vectors(), m.ambient_rank);
}

ConvexCone intersect_cones(const ConvexCone& p, const ConvexCone& q) {
  if (p.ambient_rank != q.ambient_rank) throw ToricError(ErrorCode::RankMismatch, "cones in different lattices");
  const Eigen::Index n = p.ambient_rank;
  std::vector<IntVector> ineqs, eqs;
  for (const ConvexCone* c : {&p, &q}) {
    const RationalCone& rc = c->monoid.cone();
    ineqs.insert(ineqs.end(), rc.facets.begin(), rc.facets.end());
    for (const IntVector& e : rc.equations.basis_vectors()) eqs.push_back(e);
  }
  const RationalCone both = cone_from_inequalities(ineqs, eqs, n);
  return make_convex_cone(both.rays, n);
}

std::optional<PrimeIdeal> face_test(const ConvexCone& c, const ConvexCone& p) {
  if (c.ambient_rank != p.ambient_rank) throw ToricError(ErrorCode::RankMismatch, "cones in different lattices");
  for (PrimeIdeal& q : spec_faces(p.monoid)) {
    const std::vector<IntVector> face = q.face_vectors();
    if (face.size() != c.hilbert_basis.size()) continue;
    if (std::equal(face.begin(), face.end(), c.hilbert_basis.begin(),
                   [](const IntVector& x, const IntVector& y) { return equal(x, y); }))
      return q;
  }
  return std::nullopt;
}

}  // namespace toric
