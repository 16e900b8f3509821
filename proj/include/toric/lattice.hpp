#pragma once

// Exact integer linear algebra: Hermite and Smith normal forms, sublattices
// of Z^n, saturation, kernels and integral solving. Everything is templated
// on the scalar so the same code runs on toric::Integer and on built-in
// integers in tests.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "toric/errors.hpp"
#include "toric/integer.hpp"

namespace toric {

template <typename Scalar>
struct HermiteForm {
  Mat<Scalar> H;  // U * A, row echelon with positive reduced pivots
  Mat<Scalar> U;  // unimodular, m x m
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Row-style Hermite normal form. Nonzero rows come first, pivots are
/// positive and entries above each pivot lie in [0, pivot).
template <typename Scalar>
HermiteForm<Scalar> hermite(const Mat<Scalar>& A) {
  const Eigen::Index m = A.rows(), n = A.cols();
  HermiteForm<Scalar> out{A, Mat<Scalar>::Identity(m, m), {}};
  Mat<Scalar>& H = out.H;
  Mat<Scalar>& U = out.U;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    for (Eigen::Index i = r + 1; i < m; ++i) {
      if (H(i, c) == Scalar(0)) continue;
      if (H(r, c) == Scalar(0)) {
        H.row(r).swap(H.row(i));
        U.row(r).swap(U.row(i));
        continue;
      }
      Scalar x, y;
      const Scalar a = H(r, c), b = H(i, c);
      const Scalar g = ext_gcd(a, b, x, y);
      const Scalar ag = a / g, bg = b / g;
      // [x y; -b/g a/g] has determinant 1
      for (Eigen::Index k = 0; k < n; ++k) {
        const Scalar hr = H(r, k), hi = H(i, k);
        H(r, k) = x * hr + y * hi;
        H(i, k) = ag * hi - bg * hr;
      }
      for (Eigen::Index k = 0; k < m; ++k) {
        const Scalar ur = U(r, k), ui = U(i, k);
        U(r, k) = x * ur + y * ui;
        U(i, k) = ag * ui - bg * ur;
      }
    }
    if (H(r, c) == Scalar(0)) continue;
    if (H(r, c) < Scalar(0)) {
      H.row(r) = -H.row(r);
      U.row(r) = -U.row(r);
    }
    for (Eigen::Index i = 0; i < r; ++i) {
      const Scalar q = floor_div<Scalar>(H(i, c), H(r, c));
      if (q == Scalar(0)) continue;
      H.row(i) -= q * H.row(r);
      U.row(i) -= q * U.row(r);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

template <typename Scalar>
struct SmithDecomposition {
  Mat<Scalar> U, V, D;
  std::vector<Scalar> invariant_factors;  // nonzero diagonal entries of D
};

/// U * A * V == D with D diagonal, nonnegative, d_1 | d_2 | ...
template <typename Scalar>
SmithDecomposition<Scalar> smith_decompose(const Mat<Scalar>& A) {
  const Eigen::Index m = A.rows(), n = A.cols();
  SmithDecomposition<Scalar> s{Mat<Scalar>::Identity(m, m), Mat<Scalar>::Identity(n, n), A, {}};
  Mat<Scalar>& D = s.D;
  Mat<Scalar>& U = s.U;
  Mat<Scalar>& V = s.V;
  const Eigen::Index steps = std::min(m, n);
  for (Eigen::Index t = 0; t < steps; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      Eigen::Index pi = -1, pj = -1;
      Scalar best = 0;
      for (Eigen::Index i = t; i < m; ++i)
        for (Eigen::Index j = t; j < n; ++j)
          if (D(i, j) != Scalar(0) &&
              (pi < 0 || detail::abs_value(D(i, j)) < best)) {
            best = detail::abs_value(D(i, j));
            pi = i;
            pj = j;
          }
      if (pi < 0) break;
      D.row(t).swap(D.row(pi));
      U.row(t).swap(U.row(pi));
      D.col(t).swap(D.col(pj));
      V.col(t).swap(V.col(pj));

      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (D(i, t) == Scalar(0)) continue;
        const Scalar q = D(i, t) / D(t, t);
        D.row(i) -= q * D.row(t);
        U.row(i) -= q * U.row(t);
        if (D(i, t) != Scalar(0)) clean = false;
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (D(t, j) == Scalar(0)) continue;
        const Scalar q = D(t, j) / D(t, t);
        D.col(j) -= q * D.col(t);
        V.col(j) -= q * V.col(t);
        if (D(t, j) != Scalar(0)) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold an offending row into row t and go again
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != Scalar(0)) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      D.row(t) += D.row(bad);
      U.row(t) += U.row(bad);
    }
    if (D(t, t) < Scalar(0)) {
      D.row(t) = -D.row(t);
      U.row(t) = -U.row(t);
    }
  }
  for (Eigen::Index t = 0; t < steps; ++t)
    if (D(t, t) != Scalar(0)) s.invariant_factors.push_back(D(t, t));
  return s;
}

/// Fraction-free (Bareiss) determinant of a square matrix.
template <typename Scalar>
Scalar determinant(Mat<Scalar> M) {
  const Eigen::Index n = M.rows();
  if (n == 0) return Scalar(1);
  Scalar sign = 1, prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (M(k, k) == Scalar(0)) {
      Eigen::Index p = k + 1;
      while (p < n && M(p, k) == Scalar(0)) ++p;
      if (p == n) return Scalar(0);
      M.row(k).swap(M.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

/// A subgroup of Z^n held as the nonzero rows of its Hermite normal form, so
/// equal sublattices compare equal structurally.
template <typename Scalar>
class Sublattice {
 public:
  Sublattice() = default;
  explicit Sublattice(Eigen::Index ambient_rank)
      : ambient_rank_(ambient_rank), basis_(0, ambient_rank) {}

  /// Takes the row span of `generators`.
  static Sublattice span_of(const Mat<Scalar>& generators) {
    Sublattice L(generators.cols());
    if (generators.rows() == 0) return L;
    HermiteForm<Scalar> h = hermite(generators);
    L.basis_ = h.H.topRows(h.rank());
    L.pivots_ = std::move(h.pivots);
    return L;
  }

  Eigen::Index ambient_rank() const { return ambient_rank_; }
  Eigen::Index rank() const { return basis_.rows(); }
  const Mat<Scalar>& basis() const { return basis_; }
  const std::vector<Eigen::Index>& pivots() const { return pivots_; }
  bool is_zero() const { return basis_.rows() == 0; }
  bool is_full() const {
    if (rank() != ambient_rank_) return false;
    for (Eigen::Index i = 0; i < rank(); ++i)
      if (basis_(i, i) != Scalar(1)) return false;
    return true;
  }

  std::vector<Vec<Scalar>> basis_vectors() const { return matrix_rows(basis_); }

  /// Coefficients of x over the basis rows, or nullopt if x is not in the lattice.
  std::optional<Vec<Scalar>> solve(const Vec<Scalar>& x) const {
    if (x.size() != ambient_rank_)
      throw ToricError(ErrorCode::RankMismatch, "vector rank differs from lattice ambient rank");
    Vec<Scalar> rest = x;
    Vec<Scalar> coeffs(rank());
    Eigen::Index prev = -1;
    for (Eigen::Index i = 0; i < rank(); ++i) {
      const Eigen::Index p = pivots_[static_cast<std::size_t>(i)];
      for (Eigen::Index c = prev + 1; c < p; ++c)
        if (rest(c) != Scalar(0)) return std::nullopt;
      if (rest(p) % basis_(i, p) != Scalar(0)) return std::nullopt;
      coeffs(i) = rest(p) / basis_(i, p);
      if (coeffs(i) != Scalar(0)) rest -= coeffs(i) * basis_.row(i).transpose();
      prev = p;
    }
    for (Eigen::Index c = prev + 1; c < ambient_rank_; ++c)
      if (rest(c) != Scalar(0)) return std::nullopt;
    return coeffs;
  }

  bool contains(const Vec<Scalar>& x) const { return solve(x).has_value(); }

  /// Canonical representative of the coset x + L: each pivot coordinate is
  /// brought into [0, pivot).
  Vec<Scalar> reduce(Vec<Scalar> x) const {
    for (Eigen::Index i = 0; i < rank(); ++i) {
      const Eigen::Index p = pivots_[static_cast<std::size_t>(i)];
      const Scalar q = floor_div<Scalar>(x(p), basis_(i, p));
      if (q != Scalar(0)) x -= q * basis_.row(i).transpose();
    }
    return x;
  }

  friend bool operator==(const Sublattice& a, const Sublattice& b) {
    return a.ambient_rank_ == b.ambient_rank_ && equal<Scalar>(a.basis_, b.basis_);
  }

 private:
  Eigen::Index ambient_rank_ = 0;
  Mat<Scalar> basis_;
  std::vector<Eigen::Index> pivots_;
};

using IntSublattice = Sublattice<Integer>;

template <typename Scalar>
Sublattice<Scalar> lattice_from_vectors(const std::vector<Vec<Scalar>>& vs, Eigen::Index ambient_rank) {
  for (const auto& v : vs)
    if (v.size() != ambient_rank)
      throw ToricError(ErrorCode::RankMismatch, "vectors of differing ambient rank");
  return Sublattice<Scalar>::span_of(rows_matrix(vs, ambient_rank));
}

template <typename Scalar>
Sublattice<Scalar> lattice_from_vectors(const std::vector<Vec<Scalar>>& vs) {
  if (vs.empty())
    throw ToricError(ErrorCode::InvalidArgument, "empty vector list without an ambient rank");
  return lattice_from_vectors(vs, vs.front().size());
}

/// Integer kernel {x in Z^n : M x = 0}, as a (saturated) sublattice.
template <typename Scalar>
Sublattice<Scalar> kernel_lattice(const Mat<Scalar>& M) {
  const Eigen::Index n = M.cols();
  if (M.rows() == 0) return Sublattice<Scalar>::span_of(Mat<Scalar>::Identity(n, n));
  HermiteForm<Scalar> h = hermite<Scalar>(M.transpose());
  return Sublattice<Scalar>::span_of(h.U.bottomRows(n - h.rank()));
}

/// Functionals vanishing on L: {s in Z^n : <s, v> = 0 for all v in L}.
template <typename Scalar>
Sublattice<Scalar> annihilator(const Sublattice<Scalar>& L) {
  return kernel_lattice<Scalar>(L.basis());
}

/// Invariant factors of Z^n / L restricted to the torsion-relevant part:
/// the nonzero Smith factors of the basis. Torsion-free iff all equal 1.
template <typename Scalar>
std::vector<Scalar> quotient_invariants(const Sublattice<Scalar>& L) {
  if (L.rank() == 0) return {};
  return smith_decompose<Scalar>(L.basis()).invariant_factors;
}

template <typename Scalar>
bool quotient_torsion_free(const Sublattice<Scalar>& L) {
  for (const Scalar& f : quotient_invariants(L))
    if (f != Scalar(1)) return false;
  return true;
}

/// Lattice points of the rational span of L.
template <typename Scalar>
Sublattice<Scalar> saturate_lattice(const Sublattice<Scalar>& L) {
  return annihilator(annihilator(L));
}

template <typename Scalar>
std::optional<Vec<Scalar>> solve_in_lattice(const Sublattice<Scalar>& L, const Vec<Scalar>& x) {
  return L.solve(x);
}

/// A dual vector s with <s, b_i> = f_i for every basis row b_i of L.
/// Among all extensions the one reduced modulo the annihilator of L is
/// returned. Throws TorsionObstruction when no integral extension exists.
template <typename Scalar>
Vec<Scalar> extend_functional(const Sublattice<Scalar>& L, const Vec<Scalar>& f) {
  if (f.size() != L.rank())
    throw ToricError(ErrorCode::RankMismatch, "functional length differs from lattice rank");
  const Eigen::Index n = L.ambient_rank();
  Vec<Scalar> sigma = Vec<Scalar>::Zero(n);
  if (L.rank() > 0) {
    // B s = f  <=>  D (V^-1 s) = U f
    const SmithDecomposition<Scalar> s = smith_decompose<Scalar>(L.basis());
    const Vec<Scalar> uf = s.U * f;
    Vec<Scalar> y = Vec<Scalar>::Zero(n);
    for (Eigen::Index i = 0; i < L.rank(); ++i) {
      if (uf(i) % s.D(i, i) != Scalar(0))
        throw ToricError(ErrorCode::TorsionObstruction,
                         "functional does not extend: quotient has torsion");
      y(i) = uf(i) / s.D(i, i);
    }
    sigma = s.V * y;
  }
  return annihilator(L).reduce(sigma);
}

/// A matrix S with A * S == I for a surjective A : Z^n -> Z^k, columns
/// reduced modulo ker A.
template <typename Scalar>
Mat<Scalar> section_of(const Mat<Scalar>& A) {
  Mat<Scalar> S(A.cols(), A.rows());
  const SmithDecomposition<Scalar> sd = smith_decompose<Scalar>(A);
  const Sublattice<Scalar> ker = kernel_lattice<Scalar>(A);
  for (Eigen::Index j = 0; j < A.rows(); ++j) {
    const Vec<Scalar> uf = sd.U.col(j);
    Vec<Scalar> y = Vec<Scalar>::Zero(A.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      if (i >= static_cast<Eigen::Index>(sd.invariant_factors.size()) || uf(i) % sd.D(i, i) != Scalar(0))
        throw ToricError(ErrorCode::TorsionObstruction, "map is not surjective");
      y(i) = uf(i) / sd.D(i, i);
    }
    S.col(j) = ker.reduce(sd.V * y);
  }
  return S;
}

}  // namespace toric
