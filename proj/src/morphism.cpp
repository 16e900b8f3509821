#include "toric/morphism.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <thread>

#include "toric/polyhedral.hpp"

namespace toric {
namespace {

bool maps_into(const FanMorphism& f, const ConvexCone& p, const ConvexCone& target) {
  for (const IntVector& h : p.hilbert_basis)
    if (!target.contains(f.apply(h))) return false;
  return true;
}

bool covered(const FanMorphism& f, const std::vector<std::size_t>& members, const IntVector& x) {
  for (std::size_t i : members)
    if (f.source.cone(i).contains(x)) return true;
  return false;
}

std::vector<IntVector> spanning_points(const RationalCone& c) {
  std::vector<IntVector> out = c.rays;
  for (const IntVector& l : c.lineality.basis_vectors()) {
    out.push_back(l);
    out.push_back(-l);
  }
  return out;
}

IntVector sum_of(const std::vector<IntVector>& vs, Eigen::Index n) {
  IntVector s = IntVector::Zero(n);
  for (const IntVector& v : vs) s += v;
  return s;
}

std::optional<IntVector> box_search(const FanMorphism& f, const std::vector<std::size_t>& members,
                                    const RationalCone& c, int max_radius) {
  const Eigen::Index n = c.ambient_rank;
  for (int b = 1; b <= max_radius; ++b) {
    IntVector x = IntVector::Constant(n, Integer(-b));
    for (;;) {
      if (c.contains(x) && !covered(f, members, x)) return x;
      Eigen::Index k = 0;
      while (k < n && x(k) == b) x(k++) = -b;
      if (k == n) break;
      x(k) += 1;
    }
  }
  return std::nullopt;
}

/// Relative wall criterion: the full-dimensional members tile C.
Properness check_target(const FanMorphism& f, std::size_t j) {
  Properness out;
  const RationalCone c = pulled_back_cone(f, j);
  const std::vector<std::size_t> members = chart_preimage(f, j);
  const Eigen::Index d = c.dim();
  if (d == 0) return out;

  std::vector<std::size_t> top;
  for (std::size_t i : members)
    if (f.source.cone(i).rank() == d) top.push_back(i);
  std::map<std::size_t, std::vector<std::size_t>> walls;
  for (std::size_t t : top)
    for (std::size_t w : f.source.face_indices(t))
      if (f.source.cone(w).rank() == d - 1) walls[w].push_back(t);

  const Eigen::Index n = c.ambient_rank;
  std::vector<std::pair<std::size_t, std::size_t>> open_walls;  // (wall, its only cone)
  for (const auto& [w, sides] : walls) {
    if (sides.size() != 1) continue;
    const IntVector s = sum_of(f.source.cone(w).hilbert_basis, n);
    const bool on_boundary =
        std::any_of(c.facets.begin(), c.facets.end(), [&](const IntVector& fn) { return dot(fn, s) == 0; });
    if (!on_boundary) open_walls.emplace_back(w, sides.front());
  }
  if (!top.empty() && open_walls.empty()) return out;

  out.proper = false;
  out.target_cone = j;
  for (const IntVector& r : spanning_points(c))
    if (!covered(f, members, r)) {
      out.witness = r;
      return out;
    }
  // step across an open wall, away from its only cone
  for (const auto& [w, t] : open_walls) {
    const IntVector s = sum_of(f.source.cone(w).hilbert_basis, n);
    for (const IntVector& fn : f.source.cone(t).monoid.cone().facets) {
      if (dot(fn, s) != 0) continue;
      for (const IntVector& y : spanning_points(c)) {
        if (dot(fn, y) >= 0) continue;
        for (int k = 1; k <= 64; ++k) {
          const IntVector x = Integer(k) * s + y;
          if (c.contains(x) && !covered(f, members, x)) {
            out.witness = x;
            return out;
          }
        }
      }
    }
  }
  out.witness = box_search(f, members, c, 8);
  return out;
}

}  // namespace

FanMorphism make_fan_morphism(const IntMatrix& a, const Fan& src, const Fan& dst) {
  if (a.cols() != src.ambient_rank() || a.rows() != dst.ambient_rank())
    throw ToricError(ErrorCode::RankMismatch, "matrix shape does not match the fan ranks");
  FanMorphism f{a, src, dst, {}};
  for (std::size_t i = 0; i < src.size(); ++i) {
    const ConvexCone& p = src.cone(i);
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < dst.size() && !found; ++j)
      if (maps_into(f, p, dst.cone(j))) found = j;
    if (found) {
      f.assignment.push_back(*found);
      continue;
    }
    IntVector witness = f.apply(sum_of(p.hilbert_basis, src.ambient_rank()));
    for (const IntVector& h : p.hilbert_basis)
      if (!support_contains(dst, f.apply(h))) {
        witness = f.apply(h);
        break;
      }
    throw NoTargetConeError(i, witness,
                            "source cone " + std::to_string(i) + " maps into no target cone; image point " +
                                to_string(witness));
  }
  return f;
}

std::vector<std::size_t> chart_preimage(const FanMorphism& f, std::size_t j) {
  const ConvexCone& target = f.target.cone(j);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.source.size(); ++i)
    if (maps_into(f, f.source.cone(i), target)) out.push_back(i);
  return out;
}

RationalCone pulled_back_cone(const FanMorphism& f, std::size_t j) {
  const RationalCone& t = f.target.cone(j).monoid.cone();
  const IntMatrix at = f.matrix.transpose();
  std::vector<IntVector> ineqs, eqs;
  for (const IntVector& fn : t.facets) ineqs.push_back(at * fn);
  for (const IntVector& e : t.equations.basis_vectors()) eqs.push_back(at * e);
  return cone_from_inequalities(ineqs, eqs, f.source.ambient_rank());
}

Properness is_proper_morphism(const FanMorphism& f, unsigned threads) {
  std::vector<Properness> results(f.target.size());
  const std::size_t count = f.target.size();
  if (threads <= 1) {
    for (std::size_t j = 0; j < count; ++j) results[j] = check_target(f, j);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t j = t; j < count; j += threads) results[j] = check_target(f, j);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (Properness& p : results)
    if (!p.proper) return p;
  return Properness{};
}

Tri is_birational(const FanMorphism& f, const RingDescriptor& ring) {
  const RingDescriptor r = ring.normalized();
  bool iso = f.matrix.rows() == f.matrix.cols();
  if (iso) {
    const Integer det = determinant<Integer>(f.matrix);
    iso = det == 1 || det == -1;
  }
  if (iso) return Tri::True;
  return r.is_field == Tri::True ? Tri::False : Tri::Unknown;
}

IntMatrix induced_chart_hom(const FanMorphism& f, std::size_t i) {
  if (i >= f.source.size()) throw ToricError(ErrorCode::InvalidArgument, "cone index out of range");
  const ChartPresentation src = chart_presentation(f.source, i);
  const ChartPresentation dst = chart_presentation(f.target, f.assignment[i]);
  const FgMonoid chart(src.monoid_generators, f.source.ambient_rank(), FgMonoid::Minimal{});
  const IntMatrix at = f.matrix.transpose();
  IntMatrix out(static_cast<Eigen::Index>(dst.monoid_generators.size()),
                static_cast<Eigen::Index>(src.monoid_generators.size()));
  for (std::size_t k = 0; k < dst.monoid_generators.size(); ++k) {
    const auto c = chart.decompose(IntVector(at * dst.monoid_generators[k]));
    if (!c) throw ToricError(ErrorCode::InvalidArgument, "pullback leaves the source chart");
    out.row(static_cast<Eigen::Index>(k)) = c->transpose();
  }
  return out;
}

MorphismReport morphism_report(const FanMorphism& f, const RingDescriptor& r, unsigned threads) {
  MorphismReport m;
  m.valid = true;
  m.proper = is_proper_morphism(f, threads);
  m.birational = is_birational(f, r);
  for (std::size_t j = 0; j < f.target.size(); ++j) m.chart_preimages[j] = chart_preimage(f, j);
  m.notes["proper"] =
      "proper iff each preimage cone is the union of the source cones mapping into the target cone";
  m.notes["birational"] = r.normalized().is_field == Tri::True
                              ? "birational iff the matrix is a group isomorphism"
                              : "the isomorphism criterion is stated over a field; non-isomorphisms are left undecided";
  return m;
}

}  // namespace toric
