#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace toric {

/// Arbitrary-precision integer. Expression templates are disabled so the type
/// behaves like a plain value inside Eigen kernels.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntVector = Vec<Integer>;
using IntMatrix = Mat<Integer>;

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& a) {
  return a < Scalar(0) ? Scalar(-a) : a;
}

template <typename Scalar>
Scalar gcd_value(Scalar a, Scalar b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != Scalar(0)) {
    Scalar r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace detail

/// Division rounding towards negative infinity.
template <typename Scalar>
Scalar floor_div(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;
  if ((a % b != Scalar(0)) && ((a < Scalar(0)) != (b < Scalar(0)))) q -= 1;
  return q;
}

template <typename Scalar>
Scalar ceil_div(const Scalar& a, const Scalar& b) {
  return -floor_div<Scalar>(-a, b);
}

/// Non-negative remainder, 0 <= r < |b|.
template <typename Scalar>
Scalar mod_floor(const Scalar& a, const Scalar& b) {
  Scalar r = a % b;
  if (r < Scalar(0)) r += detail::abs_value(b);
  return r;
}

/// Extended gcd: returns g = gcd(a, b) >= 0 and sets x, y with a*x + b*y = g.
template <typename Scalar>
Scalar ext_gcd(const Scalar& a, const Scalar& b, Scalar& x, Scalar& y) {
  Scalar old_r = a, r = b;
  Scalar old_s = 1, s = 0;
  Scalar old_t = 0, t = 1;
  while (r != Scalar(0)) {
    Scalar q = old_r / r;
    Scalar tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < Scalar(0)) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

/// gcd of all entries (0 for the zero vector).
template <typename Derived>
typename Derived::Scalar content(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  Scalar g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = detail::gcd_value<Scalar>(g, v(i));
  return g;
}

/// Divides out the content. The zero vector is returned unchanged.
template <typename Scalar>
Vec<Scalar> primitive(const Vec<Scalar>& v) {
  Scalar g = content(v);
  if (g == Scalar(0) || g == Scalar(1)) return v;
  Vec<Scalar> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(i) / g;
  return out;
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != Scalar(0)) return false;
  return true;
}

/// Plain dot product (no conjugation, no reassociation tricks).
template <typename A, typename B>
typename A::Scalar dot(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  typename A::Scalar s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

template <typename Scalar>
bool lex_less(const Vec<Scalar>& a, const Vec<Scalar>& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

struct LexLess {
  template <typename Scalar>
  bool operator()(const Vec<Scalar>& a, const Vec<Scalar>& b) const {
    return lex_less(a, b);
  }
};

template <typename Scalar>
bool equal(const Vec<Scalar>& a, const Vec<Scalar>& b) {
  return a.size() == b.size() && std::equal(a.data(), a.data() + a.size(), b.data());
}

template <typename Scalar>
bool equal(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::equal(a.data(), a.data() + a.size(), b.data());
}

/// Sorts lexicographically and drops duplicates.
template <typename Scalar>
void sort_unique(std::vector<Vec<Scalar>>& vs) {
  std::sort(vs.begin(), vs.end(), LexLess{});
  vs.erase(std::unique(vs.begin(), vs.end(),
                       [](const Vec<Scalar>& a, const Vec<Scalar>& b) { return equal(a, b); }),
           vs.end());
}

template <typename Scalar>
Vec<Scalar> make_vector(std::initializer_list<Scalar> xs) {
  Vec<Scalar> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

/// IntVector from small integers, mostly for tests and examples.
inline IntVector ivec(std::initializer_list<long long> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long long x : xs) v(i++) = Integer(x);
  return v;
}

inline IntMatrix imat(std::initializer_list<std::initializer_list<long long>> rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long long x : row) m(i, j++) = Integer(x);
    ++i;
  }
  return m;
}

/// Stacks vectors as the rows of a matrix with `cols` columns.
template <typename Scalar>
Mat<Scalar> rows_matrix(const std::vector<Vec<Scalar>>& vs, Eigen::Index cols) {
  Mat<Scalar> m(static_cast<Eigen::Index>(vs.size()), cols);
  for (std::size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vs[i].transpose();
  return m;
}

template <typename Scalar>
std::vector<Vec<Scalar>> matrix_rows(const Mat<Scalar>& m) {
  std::vector<Vec<Scalar>> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).transpose());
  return out;
}

template <typename Scalar>
std::string to_string(const Vec<Scalar>& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  os << ")";
  return os.str();
}

}  // namespace toric
