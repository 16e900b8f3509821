#include "toric/polyhedral.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "toric/errors.hpp"

namespace toric {
namespace {

std::vector<bool> zero_set(const IntVector& r, const std::vector<IntVector>& processed) {
  std::vector<bool> z(processed.size());
  for (std::size_t j = 0; j < processed.size(); ++j) z[j] = dot(processed[j], r) == 0;
  return z;
}

bool subset_of(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] && !b[j]) return false;
  return true;
}

std::vector<bool> intersect(const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] && b[j];
  return out;
}

IntVector combine(const Integer& s, const IntVector& x, const Integer& t, const IntVector& y) {
  IntVector v(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) v(i) = s * x(i) - t * y(i);
  return primitive(v);
}

std::vector<IntVector> with_negations(const std::vector<IntVector>& ineqs, const IntSublattice& eqs) {
  std::vector<IntVector> out = ineqs;
  for (const IntVector& b : eqs.basis_vectors()) {
    out.push_back(b);
    out.push_back(-b);
  }
  return out;
}

}  // namespace

DualDescription dual_description(const std::vector<IntVector>& constraints, Eigen::Index n) {
  std::vector<IntVector> cons;
  for (const IntVector& a : constraints) {
    if (a.size() != n) throw ToricError(ErrorCode::RankMismatch, "constraint of wrong length");
    if (!is_zero(a)) cons.push_back(primitive(a));
  }
  sort_unique(cons);

  std::vector<IntVector> lin;
  for (Eigen::Index i = 0; i < n; ++i) lin.push_back(IntVector::Unit(n, i));
  std::vector<IntVector> rays;
  std::vector<IntVector> processed;

  for (const IntVector& a : cons) {
    auto it = std::find_if(lin.begin(), lin.end(), [&](const IntVector& l) { return dot(a, l) != 0; });
    if (it != lin.end()) {
      IntVector l0 = *it;
      lin.erase(it);
      if (dot(a, l0) < 0) l0 = -l0;
      const Integer al0 = dot(a, l0);
      for (IntVector& l : lin) l = combine(al0, l, dot(a, l), l0);
      for (IntVector& r : rays) r = combine(al0, r, dot(a, r), l0);
      rays.push_back(l0);
    } else {
      std::vector<std::vector<bool>> zs;
      zs.reserve(rays.size());
      for (const IntVector& r : rays) zs.push_back(zero_set(r, processed));
      std::vector<std::size_t> pos, neg;
      std::vector<IntVector> next;
      for (std::size_t i = 0; i < rays.size(); ++i) {
        const Integer v = dot(a, rays[i]);
        if (v > 0) pos.push_back(i);
        if (v < 0) neg.push_back(i);
        if (v >= 0) next.push_back(rays[i]);
      }
      for (std::size_t p : pos)
        for (std::size_t q : neg) {
          const std::vector<bool> common = intersect(zs[p], zs[q]);
          bool adjacent = true;
          for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
            if (r != p && r != q && subset_of(common, zs[r])) adjacent = false;
          if (adjacent) next.push_back(combine(dot(a, rays[p]), rays[q], dot(a, rays[q]), rays[p]));
        }
      rays = std::move(next);
    }
    processed.push_back(a);
  }

  DualDescription out;
  out.lineality = kernel_lattice<Integer>(rows_matrix(cons, n));
  // canonical ray representatives: primitive image in the quotient by the
  // lineality space, lifted back through a fixed section
  const IntMatrix proj = annihilator(out.lineality).basis();
  const IntMatrix section = section_of<Integer>(proj);
  for (const IntVector& r : rays) {
    const IntVector y = primitive<Integer>(proj * r);
    out.rays.push_back(out.lineality.reduce(section * y));
  }
  sort_unique(out.rays);
  return out;
}

bool RationalCone::contains(const IntVector& x) const {
  for (Eigen::Index i = 0; i < equations.rank(); ++i)
    if (dot(equations.basis().row(i).transpose(), x) != 0) return false;
  for (const IntVector& f : facets)
    if (dot(f, x) < 0) return false;
  return true;
}

bool RationalCone::in_relative_interior(const IntVector& x) const {
  if (!contains(x)) return false;
  for (const IntVector& f : facets)
    if (dot(f, x) == 0) return false;
  return true;
}

RationalCone cone_from_generators(const std::vector<IntVector>& gens, Eigen::Index n) {
  RationalCone c;
  c.ambient_rank = n;
  DualDescription dual = dual_description(gens, n);
  c.facets = std::move(dual.rays);
  c.equations = std::move(dual.lineality);
  DualDescription primal = dual_description(with_negations(c.facets, c.equations), n);
  c.rays = std::move(primal.rays);
  c.lineality = std::move(primal.lineality);
  return c;
}

RationalCone cone_from_inequalities(const std::vector<IntVector>& inequalities,
                                    const std::vector<IntVector>& equations, Eigen::Index n) {
  std::vector<IntVector> cons = inequalities;
  for (const IntVector& e : equations) {
    cons.push_back(e);
    cons.push_back(-e);
  }
  DualDescription primal = dual_description(cons, n);
  std::vector<IntVector> gens = primal.rays;
  for (const IntVector& l : primal.lineality.basis_vectors()) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  return cone_from_generators(gens, n);
}

std::vector<std::vector<std::size_t>> placing_triangulation(const std::vector<IntVector>& rays) {
  std::vector<std::vector<std::size_t>> simplices;
  std::vector<IntVector> used;
  Eigen::Index rank = 0;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const IntVector& r = rays[i];
    const Eigen::Index n = r.size();
    if (simplices.empty()) {
      simplices.push_back({i});
      used.push_back(r);
      rank = 1;
      continue;
    }
    std::vector<IntVector> grown = used;
    grown.push_back(r);
    const Eigen::Index new_rank = hermite<Integer>(rows_matrix(grown, n)).rank();
    if (new_rank > rank) {
      for (auto& s : simplices) s.push_back(i);
      rank = new_rank;
      used = std::move(grown);
      continue;
    }
    // facets seen once are on the boundary of the current cone
    std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> facets;
    for (const auto& s : simplices)
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<std::size_t> f;
        for (std::size_t k = 0; k < s.size(); ++k)
          if (k != drop) f.push_back(s[k]);
        auto& entry = facets[f];
        entry.first += 1;
        entry.second = s[drop];
      }
    std::vector<std::vector<std::size_t>> added;
    for (const auto& [f, entry] : facets) {
      if (entry.first != 1) continue;
      // a functional vanishing on the facet but not on the current span
      std::vector<IntVector> rows;
      for (std::size_t k : f) rows.push_back(rays[k]);
      const IntSublattice vanishing = kernel_lattice<Integer>(rows_matrix(rows, n));
      const IntVector& apex = rays[entry.second];
      IntVector normal;
      for (const IntVector& b : vanishing.basis_vectors())
        if (dot(b, apex) != 0) {
          normal = b;
          break;
        }
      if (dot(normal, apex) < 0) normal = -normal;
      if (dot(normal, r) < 0) {
        std::vector<std::size_t> s = f;
        s.push_back(i);
        added.push_back(std::move(s));
      }
    }
    for (auto& s : added) simplices.push_back(std::move(s));
    used = std::move(grown);
  }
  for (auto& s : simplices) std::sort(s.begin(), s.end());
  std::sort(simplices.begin(), simplices.end());
  return simplices;
}

std::vector<IntVector> parallelepiped_points(const std::vector<IntVector>& simplex) {
  const Eigen::Index d = static_cast<Eigen::Index>(simplex.size());
  std::vector<IntVector> out;
  if (d == 0) return out;
  IntMatrix V(d, d);
  for (Eigen::Index j = 0; j < d; ++j) V.col(j) = simplex[static_cast<std::size_t>(j)];
  const SmithDecomposition<Integer> s = smith_decompose<Integer>(V);
  if (static_cast<Eigen::Index>(s.invariant_factors.size()) != d)
    throw ToricError(ErrorCode::InvalidArgument, "simplex vectors are linearly dependent");
  const std::vector<Integer>& f = s.invariant_factors;
  const Integer N = f.back();
  std::vector<Integer> scale(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) scale[k] = N / f[k];

  // coset z in prod Z/d_k  ->  l = W diag(1/d_k) z, taken modulo 1
  std::vector<Integer> z(f.size(), Integer(0));
  for (;;) {
    std::size_t k = 0;
    while (k < z.size()) {
      z[k] += 1;
      if (z[k] < f[k]) break;
      z[k] = 0;
      ++k;
    }
    if (k == z.size()) break;
    IntVector point = IntVector::Zero(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      Integer num = 0;
      for (Eigen::Index c = 0; c < d; ++c) num += s.V(j, c) * z[static_cast<std::size_t>(c)] * scale[static_cast<std::size_t>(c)];
      num = mod_floor(num, N);
      if (num != 0) point += num * V.col(j);
    }
    for (Eigen::Index j = 0; j < d; ++j) point(j) /= N;
    out.push_back(std::move(point));
  }
  return out;
}

namespace {

/// Hilbert basis by triangulating and collecting parallelepiped points.
std::vector<IntVector> triangulation_hilbert_basis(const RationalCone& cone) {
  std::vector<IntVector> candidates = cone.rays;
  for (const auto& simplex : placing_triangulation(cone.rays)) {
    std::vector<IntVector> vs;
    for (std::size_t k : simplex) vs.push_back(cone.rays[k]);
    for (IntVector& p : parallelepiped_points(vs)) candidates.push_back(std::move(p));
  }
  // a reducible point is some basis element plus a cone point, so checking
  // candidates by increasing degree against the basis so far suffices
  IntVector grading = IntVector::Zero(cone.ambient_rank);
  for (const IntVector& f : cone.facets) grading += f;
  std::vector<std::pair<Integer, IntVector>> graded;
  for (IntVector& c : candidates) {
    const Integer deg = dot(grading, c);
    graded.emplace_back(deg, std::move(c));
  }
  std::sort(graded.begin(), graded.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return lex_less(x.second, y.second);
  });
  graded.erase(std::unique(graded.begin(), graded.end(),
                           [](const auto& x, const auto& y) { return x.second == y.second; }),
               graded.end());
  std::vector<IntVector> basis;
  for (const auto& [deg, c] : graded) {
    bool reducible = false;
    for (std::size_t j = 0; j < basis.size() && !reducible; ++j)
      reducible = cone.contains(IntVector(c - basis[j]));
    if (!reducible) basis.push_back(c);
  }
  return basis;
}

Integer simplex_volume(const RationalCone& cone) {
  Integer total = 0;
  for (const auto& simplex : placing_triangulation(cone.rays)) {
    std::vector<IntVector> vs;
    for (std::size_t k : simplex) vs.push_back(cone.rays[k]);
    total += abs(determinant<Integer>(rows_matrix(vs, cone.ambient_rank)));
  }
  return total;
}

/// Minimal nonzero y in N^d with sum y_j g_j = 0 in prod Z/f_k, where g_j
/// is the class of e_j. Grows zero-sum free sequences one degree at a time;
/// a child that sums to zero is minimal because its parent was zero-sum free.
std::vector<std::vector<Integer>> zero_sum_atoms(const std::vector<std::vector<Integer>>& g,
                                                 const std::vector<Integer>& f) {
  const std::size_t d = g.size();
  struct Node {
    std::vector<Integer> y, sum;
    std::size_t last;
  };
  std::vector<std::vector<Integer>> atoms;
  std::map<std::pair<std::size_t, Integer>, std::vector<std::size_t>> by_entry;
  std::vector<Node> level{{std::vector<Integer>(d, 0), std::vector<Integer>(f.size(), 0), 0}};
  while (!level.empty()) {
    std::vector<Node> next;
    for (const Node& node : level)
      for (std::size_t j = node.last; j < d; ++j) {
        Node c = node;
        c.y[j] += 1;
        c.last = j;
        bool zero = true;
        for (std::size_t k = 0; k < f.size(); ++k) {
          c.sum[k] += g[j][k];
          if (c.sum[k] >= f[k]) c.sum[k] -= f[k];
          zero = zero && c.sum[k] == 0;
        }
        // the parent is not above any atom, so an atom below c agrees with it at j
        const auto bucket = by_entry.find({j, c.y[j]});
        const bool dominated = bucket != by_entry.end() &&
                               std::any_of(bucket->second.begin(), bucket->second.end(), [&](std::size_t i) {
                                 for (std::size_t k = 0; k < d; ++k)
                                   if (atoms[i][k] > c.y[k]) return false;
                                 return true;
                               });
        if (dominated) continue;
        if (zero) {
          for (std::size_t k = 0; k < d; ++k)
            if (c.y[k] != 0) by_entry[{k, c.y[k]}].push_back(atoms.size());
          atoms.push_back(c.y);
        } else
          next.push_back(std::move(c));
      }
    level = std::move(next);
  }
  return atoms;
}

/// d linearly independent facets, shortest first.
IntMatrix simplicial_frame(const RationalCone& cone) {
  const Eigen::Index d = cone.ambient_rank;
  std::vector<IntVector> order = cone.facets;
  std::stable_sort(order.begin(), order.end(), [](const IntVector& x, const IntVector& y) {
    return x.cwiseAbs().sum() < y.cwiseAbs().sum();
  });
  std::vector<IntVector> picked;
  for (const IntVector& f : order) {
    picked.push_back(f);
    if (hermite<Integer>(rows_matrix(picked, d)).rank() < static_cast<Eigen::Index>(picked.size()))
      picked.pop_back();
    if (static_cast<Eigen::Index>(picked.size()) == d) break;
  }
  return rows_matrix(picked, d);
}

struct CutElement {
  IntVector x;
  std::vector<Integer> slack;  // values of the inequalities applied so far
  Integer degree;              // sum of the frame slacks
  Integer value;               // value of the inequality being applied
};

/// z - w satisfies every applied inequality.
bool dominates(const CutElement& z, const CutElement& w) {
  for (std::size_t k = 0; k < z.slack.size(); ++k)
    if (z.slack[k] < w.slack[k]) return false;
  return true;
}

/// Hilbert basis from a simplicial outer cone {A x >= 0}: its lattice
/// points are Z^d/A Z^d zero-sum sequences in the coordinates y = A x.
/// The remaining facets then cut it one at a time, pairing elements on
/// opposite sides and keeping the sums no smaller element reduces.
std::vector<IntVector> cutting_hilbert_basis(const RationalCone& cone) {
  const Eigen::Index d = cone.ambient_rank;
  const IntMatrix A = simplicial_frame(cone);
  const SmithDecomposition<Integer> sd = smith_decompose<Integer>(A);
  // class of y in Z^d / A Z^d is (U y) mod f
  const std::vector<Integer>& f = sd.invariant_factors;
  std::vector<std::vector<Integer>> g(static_cast<std::size_t>(d), std::vector<Integer>(f.size()));
  for (Eigen::Index j = 0; j < d; ++j)
    for (std::size_t k = 0; k < f.size(); ++k)
      g[static_cast<std::size_t>(j)][k] = mod_floor(Integer(sd.U(static_cast<Eigen::Index>(k), j)), f[k]);

  // U A V = D, so A x = y solves as x = V D^-1 U y; integral for y in A Z^d
  std::vector<CutElement> basis;
  for (auto& atom : zero_sum_atoms(g, f)) {
    IntVector y(d);
    for (Eigen::Index j = 0; j < d; ++j) y(j) = atom[static_cast<std::size_t>(j)];
    IntVector z = sd.U * y;
    for (Eigen::Index i = 0; i < d; ++i) z(i) /= sd.D(i, i);
    CutElement e{sd.V * z, std::move(atom), 0, 0};
    for (const Integer& v : e.slack) e.degree += v;
    basis.push_back(std::move(e));
  }

  std::vector<IntVector> rest;
  for (const IntVector& fct : cone.facets) {
    bool in_frame = false;
    for (Eigen::Index i = 0; i < d && !in_frame; ++i) in_frame = IntVector(A.row(i).transpose()) == fct;
    if (!in_frame) rest.push_back(fct);
  }

  for (const IntVector& mu : rest) {
    std::vector<CutElement> pos, neg, zero;
    for (CutElement& e : basis) {
      e.value = dot(mu, e.x);
      (e.value > 0 ? pos : e.value < 0 ? neg : zero).push_back(std::move(e));
    }
    std::set<IntVector, decltype(&lex_less<Integer>)> seen(&lex_less<Integer>);
    for (auto* side : {&pos, &neg, &zero})
      for (const CutElement& e : *side) seen.insert(e.x);

    // a candidate pos[a] + neg[b], built in full only once it survives
    struct Pair {
      std::size_t a, b;
      Integer degree, value;
    };
    std::vector<Integer> slack;
    // w reduces z when z - w stays in the cone cut so far and on z's side
    auto reduced_by = [&](const Pair& z, const std::vector<CutElement>& ws) {
      for (const CutElement& w : ws) {
        if (w.degree >= z.degree) continue;
        if (z.value > 0 ? w.value > z.value : w.value < z.value) continue;
        if (z.value == 0 && w.value != 0) continue;
        bool below = true;
        for (std::size_t k = 0; k < slack.size() && below; ++k) below = w.slack[k] <= slack[k];
        if (below) return true;
      }
      return false;
    };

    std::size_t pos_done = 0, neg_done = 0;
    while (!neg.empty()) {
      std::vector<Pair> cand;
      for (std::size_t a = 0; a < pos.size(); ++a)
        for (std::size_t b = (a < pos_done ? neg_done : 0); b < neg.size(); ++b)
          cand.push_back({a, b, pos[a].degree + neg[b].degree, pos[a].value + neg[b].value});
      pos_done = pos.size();
      neg_done = neg.size();
      if (cand.empty()) break;
      std::stable_sort(cand.begin(), cand.end(), [](const Pair& x, const Pair& y) { return x.degree < y.degree; });
      for (const Pair& z : cand) {
        const CutElement& p = pos[z.a];
        const CutElement& n = neg[z.b];
        slack.resize(p.slack.size());
        for (std::size_t k = 0; k < slack.size(); ++k) {
          slack[k] = p.slack[k];
          slack[k] += n.slack[k];
        }
        std::vector<CutElement>& side = z.value > 0 ? pos : z.value < 0 ? neg : zero;
        if (reduced_by(z, side) || reduced_by(z, zero)) continue;
        IntVector x = p.x + n.x;
        if (!seen.insert(x).second) continue;
        side.push_back({std::move(x), slack, z.degree, z.value});
      }
    }

    std::vector<CutElement> kept;
    for (auto* side : {&pos, &zero})
      for (CutElement& e : *side) {
        e.slack.push_back(e.value);
        kept.push_back(std::move(e));
      }
    basis.clear();
    for (std::size_t a = 0; a < kept.size(); ++a) {
      bool reducible = false;
      for (std::size_t b = 0; b < kept.size() && !reducible; ++b) reducible = b != a && dominates(kept[a], kept[b]);
      if (!reducible) basis.push_back(kept[a]);
    }
  }
  std::vector<IntVector> out;
  for (CutElement& e : basis) out.push_back(std::move(e.x));
  sort_unique(out);
  return out;
}

constexpr long kParallelepipedBudget = 2000;

}  // namespace

std::vector<IntVector> pointed_hilbert_basis(const RationalCone& cone, HilbertMethod method) {
  if (cone.ambient_rank == 0 || cone.rays.empty()) return {};
  if (method == HilbertMethod::Automatic) {
    const Integer volume = simplex_volume(cone);
    method = volume <= kParallelepipedBudget || volume <= abs(determinant<Integer>(simplicial_frame(cone)))
                 ? HilbertMethod::Triangulation
                 : HilbertMethod::Cutting;
  }
  std::vector<IntVector> out =
      method == HilbertMethod::Triangulation ? triangulation_hilbert_basis(cone) : cutting_hilbert_basis(cone);
  sort_unique(out);
  return out;
}

HilbertBasis hilbert_basis_in(const std::vector<IntVector>& gens, const IntSublattice& L) {
  const Eigen::Index n = L.ambient_rank();
  const Eigen::Index k = L.rank();
  HilbertBasis hb;
  hb.units = IntSublattice(n);
  if (k == 0) return hb;

  std::vector<IntVector> coords;
  for (const IntVector& g : gens) {
    auto c = L.solve(g);
    if (!c) throw ToricError(ErrorCode::InvalidArgument, "generator outside the given lattice");
    coords.push_back(*c);
  }
  const RationalCone cone = cone_from_generators(coords, k);
  if (cone.dim() != k)
    throw ToricError(ErrorCode::InvalidArgument, "lattice rank exceeds the rank of the cone");

  const IntSublattice& units = cone.lineality;
  hb.units = IntSublattice::span_of(IntMatrix(units.basis() * L.basis()));
  if (units.rank() == k) return hb;

  const IntMatrix proj = annihilator(units).basis();
  std::vector<IntVector> projected;
  for (const IntVector& c : coords) projected.push_back(proj * c);
  const RationalCone pointed = cone_from_generators(projected, proj.rows());
  const IntMatrix section = section_of<Integer>(proj);
  const IntMatrix lift = L.basis().transpose() * section;
  for (const IntVector& h : pointed_hilbert_basis(pointed))
    hb.elements.push_back(lift * h);
  sort_unique(hb.elements);
  return hb;
}

}  // namespace toric
