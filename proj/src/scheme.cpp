#include "toric/scheme.hpp"

#include "toric/errors.hpp"

namespace toric {

std::string tri_name(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

RingDescriptor RingDescriptor::normalized() const {
  RingDescriptor r = *this;
  if (r.is_field == Tri::True) {
    r.is_noetherian = r.is_regular = r.is_integral = r.is_integrally_closed = Tri::True;
  }
  return r;
}

RingDescriptor RingDescriptor::field(std::string name) {
  RingDescriptor r;
  r.name = std::move(name);
  r.is_field = Tri::True;
  return r.normalized();
}

ChartPresentation chart_presentation(const Fan& f, std::size_t i) {
  if (i >= f.size()) throw ToricError(ErrorCode::InvalidArgument, "cone index out of range");
  const ConcaveCone dual = dual_convex(f.cone(i));
  ChartPresentation c;
  c.cone_index = i;
  c.monoid_generators = dual.hilbert_basis;
  c.invertible.assign(dual.hilbert_basis.size(), false);
  for (const IntVector& u : dual.units.basis_vectors()) {
    c.monoid_generators.push_back(u);
    c.monoid_generators.push_back(-u);
    c.invertible.push_back(true);
    c.invertible.push_back(true);
  }
  c.units_rank = dual.units.rank();
  const Eigen::Index k = static_cast<Eigen::Index>(c.monoid_generators.size());
  IntMatrix g(f.ambient_rank(), k);
  for (Eigen::Index j = 0; j < k; ++j) g.col(j) = c.monoid_generators[static_cast<std::size_t>(j)];
  c.relation_lattice = kernel_lattice<Integer>(g);
  return c;
}

namespace {

/// Sum of the pointed dual Hilbert basis elements of P vanishing on C.
IntVector localizing_element(const ConvexCone& p, const ConvexCone& c) {
  IntVector m = IntVector::Zero(p.ambient_rank);
  for (const IntVector& s : p.facet_normals) {
    bool vanishes = true;
    for (const IntVector& h : c.hilbert_basis) vanishes = vanishes && dot(s, h) == 0;
    if (vanishes) m += s;
  }
  return m;
}

}  // namespace

GluingDatum gluing_datum(const Fan& f, std::size_t i, std::size_t j) {
  const CommonFace cf = f.common_face(i, j);
  const ConvexCone& c = f.cone(cf.index);
  return GluingDatum{i, j, cf.index, localizing_element(f.cone(i), c), localizing_element(f.cone(j), c)};
}

std::vector<GluingDatum> gluing_data(const Fan& f) {
  std::vector<GluingDatum> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) out.push_back(gluing_datum(f, i, j));
  return out;
}

bool is_smooth_cone(const ConvexCone& p) {
  if (static_cast<Eigen::Index>(p.hilbert_basis.size()) != p.rank()) return false;
  if (p.hilbert_basis.empty()) return true;
  for (const Integer& d : smith_decompose<Integer>(rows_matrix(p.hilbert_basis, p.ambient_rank)).invariant_factors)
    if (d != 1) return false;
  return true;
}

SchemeReport scheme_report(const Fan& f, const RingDescriptor& ring) {
  const RingDescriptor r = ring.normalized();
  SchemeReport s;
  s.notes["separated"] = "every toric scheme built from a fan is separated over its base";
  s.notes["quasi_compact"] = "fans are finite by construction, so finitely many affine charts cover";
  s.finite_fan = true;
  s.notes["finite_fan"] = "only finite fans are representable; finiteness always holds";
  s.noetherian = r.is_noetherian;
  s.notes["noetherian"] = "finite type over R, hence noetherian exactly when R is";
  s.complete_fan = is_complete(f);
  s.proper = s.finite_fan && s.complete_fan;
  s.notes["proper"] = "proper over R iff the fan is finite and complete";
  if (r.is_field == Tri::True) s.dimension = f.ambient_rank();
  s.notes["dimension"] = r.is_field == Tri::True ? "over a field the dimension equals the lattice rank"
                                                 : "dimension is reported only over a field";
  bool all_smooth = true;
  for (const ConvexCone& c : f.cones()) {
    s.smooth.push_back(is_smooth_cone(c));
    all_smooth = all_smooth && s.smooth.back();
  }
  if (r.is_regular == Tri::Unknown)
    s.regular = Tri::Unknown;
  else
    s.regular = tri_and(r.is_regular, all_smooth ? Tri::True : Tri::False);
  s.notes["regular"] = "regular iff R is regular and every cone is generated by part of a lattice basis";
  s.log_regular = r.is_regular;
  s.notes["log_regular"] = "log regular whenever R is regular";
  s.integral = r.is_integral;
  s.notes["integral"] = "integral iff R is integral";
  s.normal = r.is_integrally_closed;
  s.notes["normal"] = "normal iff R is integrally closed";
  return s;
}

}  // namespace toric
