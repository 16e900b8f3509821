#pragma once

// Shared helpers for the test binaries: random inputs and brute-force
// oracles. The oracles use plain 64-bit arithmetic and never call into the
// polyhedral code under test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "toric/cone.hpp"
#include "toric/fan.hpp"
#include "toric/integer.hpp"

namespace testing_support {

using toric::IntVector;
using toric::Integer;
using Small = std::vector<long long>;

inline Small to_small(const IntVector& v) {
  Small s(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) s[static_cast<std::size_t>(i)] = v(i).convert_to<long long>();
  return s;
}

inline IntVector from_small(const Small& s) {
  IntVector v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

inline std::vector<Small> to_small(const std::vector<IntVector>& vs) {
  std::vector<Small> out;
  for (const IntVector& v : vs) out.push_back(to_small(v));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<IntVector> vecs(std::initializer_list<std::initializer_list<long long>> gens) {
  std::vector<IntVector> vs;
  for (auto g : gens) vs.push_back(toric::ivec(g));
  return vs;
}

inline long long sdot(const Small& a, const Small& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Rank by fraction-free elimination.
inline int small_rank(std::vector<Small> rows) {
  if (rows.empty()) return 0;
  const std::size_t n = rows.front().size();
  int r = 0;
  for (std::size_t c = 0; c < n && r < static_cast<int>(rows.size()); ++c) {
    std::size_t p = static_cast<std::size_t>(r);
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[static_cast<std::size_t>(r)]);
    const Small& piv = rows[static_cast<std::size_t>(r)];
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows.size(); ++i) {
      const long long f = rows[i][c];
      if (f == 0) continue;
      long long g = 0;
      for (std::size_t k = 0; k < n; ++k) {
        rows[i][k] = rows[i][k] * piv[c] - f * piv[k];
        g = std::gcd(g, rows[i][k]);
      }
      if (g > 1)
        for (long long& x : rows[i]) x /= g;
    }
    ++r;
  }
  return r;
}

inline long long small_det(std::vector<Small> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  // cofactor expansion; sizes here are at most 4
  if (n == 1) return m[0][0];
  long long d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Small> minor;
    for (std::size_t r = 1; r < n; ++r) {
      Small row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    d += ((c % 2) ? -1 : 1) * m[0][c] * small_det(minor);
  }
  return d;
}

/// cone(gens) by brute force: every (r-1)-subset of generators spanning a
/// hyperplane of the span yields a candidate facet.
class BruteCone {
 public:
  BruteCone(std::vector<Small> gens, std::size_t n) : n_(n) {
    for (Small& g : gens)
      if (std::any_of(g.begin(), g.end(), [](long long x) { return x != 0; })) gens_.push_back(g);
    rank_ = small_rank(gens_);
    std::vector<Small> basis;
    for (const Small& g : gens_) {
      basis.push_back(g);
      if (small_rank(basis) < static_cast<int>(basis.size())) basis.pop_back();
    }
    basis_ = basis;
    if (rank_ == 0) return;
    const std::size_t r = static_cast<std::size_t>(rank_);
    std::vector<std::size_t> pick(r - 1);
    enumerate(0, 0, pick);
  }

  bool contains(const Small& x) const {
    std::vector<Small> grown = basis_;
    grown.push_back(x);
    if (small_rank(grown) > rank_) return false;
    for (const Small& f : facets_)
      if (sdot(f, x) < 0) return false;
    return true;
  }

  const std::vector<Small>& facets() const { return facets_; }
  int rank() const { return rank_; }

  /// Strictly positive on the nonzero points of a pointed cone.
  Small grading() const {
    Small w(n_, 0);
    for (const Small& f : facets_)
      for (std::size_t i = 0; i < n_; ++i) w[i] += f[i];
    if (facets_.empty() && rank_ == 1) w = basis_.front();
    return w;
  }

 private:
  void enumerate(std::size_t start, std::size_t depth, std::vector<std::size_t>& pick) {
    if (depth == pick.size()) {
      consider(pick);
      return;
    }
    for (std::size_t i = start; i < gens_.size(); ++i) {
      pick[depth] = i;
      enumerate(i + 1, depth + 1, pick);
    }
  }

  void consider(const std::vector<std::size_t>& pick) {
    const std::size_t r = basis_.size();
    // f = sum c_j b_j with <f, g_s> = 0; c from signed maximal minors
    std::vector<Small> a;
    for (std::size_t s : pick) {
      Small row;
      for (const Small& b : basis_) row.push_back(sdot(b, gens_[s]));
      a.push_back(row);
    }
    Small c(r);
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<Small> minor;
      for (const Small& row : a) {
        Small m;
        for (std::size_t k = 0; k < r; ++k)
          if (k != j) m.push_back(row[k]);
        minor.push_back(m);
      }
      c[j] = ((j % 2) ? -1 : 1) * small_det(minor);
    }
    Small f(n_, 0);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < n_; ++i) f[i] += c[j] * basis_[j][i];
    if (std::all_of(f.begin(), f.end(), [](long long x) { return x == 0; })) return;
    bool pos = false, neg = false;
    for (const Small& g : gens_) {
      const long long v = sdot(f, g);
      pos = pos || v > 0;
      neg = neg || v < 0;
    }
    if (pos && neg) return;
    if (neg) for (long long& x : f) x = -x;
    if (!pos && !neg) return;
    long long g = 0;
    for (long long x : f) g = std::gcd(g, x);
    for (long long& x : f) x /= g;
    if (std::find(facets_.begin(), facets_.end(), f) == facets_.end()) facets_.push_back(f);
  }

  std::size_t n_;
  std::vector<Small> gens_, basis_, facets_;
  int rank_ = 0;
};

/// Hilbert basis of cone(gens) ∩ Z^n for a pointed cone by enumerating
/// lattice points with coordinates in [-box, box] and keeping the ones that
/// are not a sum of two nonzero cone points.
inline std::vector<Small> brute_hilbert_basis(const std::vector<Small>& gens, std::size_t n, long long box = 12) {
  for (std::size_t i = 0; i < n; ++i) {
    long long spread = 0;
    for (const Small& g : gens) spread += std::llabs(g[i]);
    if (spread > box) throw std::runtime_error("generators too large for the enumeration box");
  }
  const BruteCone cone(gens, n);
  const Small w = cone.grading();
  long long bound = 0;
  for (const Small& g : gens) bound += sdot(w, g);

  std::vector<std::pair<long long, Small>> pts;
  Small x(n, -box);
  for (;;) {
    const long long wx = sdot(w, x);
    if (wx > 0 && wx <= bound && cone.contains(x)) pts.emplace_back(wx, x);
    std::size_t k = 0;
    while (k < n && x[k] == box) x[k++] = -box;
    if (k == n) break;
    ++x[k];
  }
  std::sort(pts.begin(), pts.end());
  std::vector<Small> basis;
  for (const auto& [wx, p] : pts) {
    bool reducible = false;
    for (const auto& [wy, q] : pts) {
      if (wy >= wx) break;
      Small d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = p[i] - q[i];
      if (cone.contains(d)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(p);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

inline Small random_vector(std::mt19937_64& rng, std::size_t n, long long lo, long long hi) {
  std::uniform_int_distribution<long long> d(lo, hi);
  Small v(n);
  for (long long& x : v) x = d(rng);
  return v;
}

inline bool primitive_nonzero(const Small& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x);
  return g == 1;
}

/// Generators of a random valid convex cone: primitive vectors whose cone
/// is pointed.
inline std::vector<IntVector> random_convex_generators(std::mt19937_64& rng, std::size_t n, std::size_t count,
                                                       long long range) {
  for (;;) {
    std::vector<IntVector> gens;
    while (gens.size() < count) {
      const Small v = random_vector(rng, n, -range, range);
      if (primitive_nonzero(v)) gens.push_back(from_small(v));
    }
    try {
      toric::make_convex_cone(gens, static_cast<Eigen::Index>(n));
      return gens;
    } catch (const toric::ToricError&) {
    }
  }
}

/// Maximal cones of the face fan of conv(+-v_i): one cone per facet of the
/// polytope, generated by the points on that facet.
inline std::vector<std::vector<IntVector>> face_fan(const std::vector<IntVector>& pts, Eigen::Index n) {
  std::vector<IntVector> lifted;
  for (const IntVector& p : pts) {
    IntVector q(n + 1);
    q.head(n) = p;
    q(n) = 1;
    lifted.push_back(q);
  }
  const toric::RationalCone hom = toric::cone_from_generators(lifted, n + 1);
  std::vector<std::vector<IntVector>> cones;
  for (const IntVector& f : hom.facets) {
    std::vector<IntVector> on;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (toric::dot(f, lifted[i]) == 0) on.push_back(pts[i]);
    cones.push_back(on);
  }
  return cones;
}

/// A complete fan from a random centrally symmetric point set spanning Q^n.
inline std::vector<std::vector<IntVector>> random_complete_fan(std::mt19937_64& rng, std::size_t n, std::size_t k,
                                                               long long range) {
  for (;;) {
    std::vector<IntVector> pts;
    std::vector<Small> smalls;
    while (pts.size() < 2 * k) {
      const Small v = random_vector(rng, n, -range, range);
      if (!primitive_nonzero(v)) continue;
      Small w = v;
      for (long long& x : w) x = -x;
      if (std::find(smalls.begin(), smalls.end(), v) != smalls.end()) continue;
      smalls.push_back(v);
      smalls.push_back(w);
      pts.push_back(from_small(v));
      pts.push_back(from_small(w));
    }
    if (small_rank(smalls) < static_cast<int>(n)) continue;
    return face_fan(pts, static_cast<Eigen::Index>(n));
  }
}

}  // namespace testing_support
