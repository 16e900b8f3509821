#include <algorithm>
#include <random>

#include "doctest.h"
#include "support.hpp"
#include "toric/errors.hpp"
#include "toric/lattice.hpp"

using namespace toric;

namespace {

std::vector<Integer> factors(std::initializer_list<long long> xs) {
  std::vector<Integer> out;
  for (long long x : xs) out.push_back(x);
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::uniform_int_distribution<int> d(-9, 9);
  IntMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("smith invariant factors") {
  CHECK(smith_decompose<Integer>(imat({{1, 0}, {0, 1}})).invariant_factors == factors({1, 1}));
  CHECK(smith_decompose<Integer>(imat({{2, 0}, {0, 3}})).invariant_factors == factors({1, 6}));
  CHECK(smith_decompose<Integer>(imat({{2, 4}, {6, 8}})).invariant_factors == factors({2, 4}));
  CHECK(smith_decompose<Integer>(imat({{0, 0}, {0, 0}})).invariant_factors.empty());
}

TEST_CASE("smith decomposition on random matrices") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::uniform_int_distribution<int> size(1, 5);
    const IntMatrix a = random_matrix(rng, size(rng), size(rng));
    const SmithDecomposition<Integer> s = smith_decompose<Integer>(a);
    CHECK(equal(IntMatrix(s.U * a * s.V), s.D));
    const Integer du = determinant<Integer>(s.U), dv = determinant<Integer>(s.V);
    CHECK(abs(du) == 1);
    CHECK(abs(dv) == 1);
    for (Eigen::Index i = 0; i < s.D.rows(); ++i)
      for (Eigen::Index j = 0; j < s.D.cols(); ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
    for (std::size_t k = 0; k + 1 < s.invariant_factors.size(); ++k)
      CHECK(s.invariant_factors[k + 1] % s.invariant_factors[k] == 0);
  }
}

TEST_CASE("hermite basis of generated lattices") {
  CHECK(equal(lattice_from_vectors<Integer>({ivec({2, 0}), ivec({0, 2})}).basis(), imat({{2, 0}, {0, 2}})));
  CHECK(equal(lattice_from_vectors<Integer>({ivec({1, 2}), ivec({2, 4})}).basis(), imat({{1, 2}})));
  CHECK(equal(lattice_from_vectors<Integer>({ivec({1, 0}), ivec({1, 2})}).basis(), imat({{1, 0}, {0, 2}})));
  CHECK_THROWS_AS(lattice_from_vectors<Integer>(std::vector<IntVector>{}), ToricError);
}

TEST_CASE("generated lattice ignores order and repetition") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<IntVector> vs;
    for (int k = 0; k < 4; ++k) vs.push_back(testing_support::from_small(testing_support::random_vector(rng, 3, -6, 6)));
    const IntSublattice a = lattice_from_vectors(vs, 3);
    std::shuffle(vs.begin(), vs.end(), rng);
    vs.push_back(vs.front());
    CHECK(lattice_from_vectors(vs, 3) == a);
    CHECK(IntSublattice::span_of(a.basis()) == a);
  }
}

TEST_CASE("quotient invariants and saturation") {
  CHECK(quotient_invariants(lattice_from_vectors<Integer>({ivec({2, 0})})) == factors({2}));
  CHECK_FALSE(quotient_torsion_free(lattice_from_vectors<Integer>({ivec({2, 0})})));
  CHECK(quotient_invariants(lattice_from_vectors<Integer>({ivec({1, 0})})) == factors({1}));
  CHECK(quotient_invariants(lattice_from_vectors<Integer>({ivec({1, 0}), ivec({0, 1})})) == factors({1, 1}));

  CHECK(saturate_lattice(lattice_from_vectors<Integer>({ivec({2, 0})})) == lattice_from_vectors<Integer>({ivec({1, 0})}));
  CHECK(saturate_lattice(lattice_from_vectors<Integer>({ivec({1, 1})})) == lattice_from_vectors<Integer>({ivec({1, 1})}));
  CHECK(equal(saturate_lattice(lattice_from_vectors<Integer>({ivec({1, 0}), ivec({0, 2})})).basis(), imat({{1, 0}, {0, 1}})));
}

TEST_CASE("saturation is idempotent and torsion free") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    std::vector<IntVector> vs;
    for (int k = 0; k < 2; ++k) vs.push_back(testing_support::from_small(testing_support::random_vector(rng, 4, -9, 9)));
    const IntSublattice l = lattice_from_vectors(vs, 4);
    const IntSublattice s = saturate_lattice(l);
    CHECK(saturate_lattice(s) == s);
    CHECK(quotient_torsion_free(s));
    for (const IntVector& b : l.basis_vectors()) CHECK(s.contains(b));
  }
}

TEST_CASE("solving in a lattice") {
  const IntSublattice line = lattice_from_vectors<Integer>({ivec({1, 2})});
  CHECK(equal(*solve_in_lattice(line, ivec({2, 4})), ivec({2})));
  CHECK_FALSE(solve_in_lattice(line, ivec({1, 1})).has_value());
  const IntSublattice l = lattice_from_vectors<Integer>({ivec({1, 0}), ivec({0, 2})});
  CHECK(equal(*solve_in_lattice(l, ivec({3, 4})), ivec({3, 2})));
  CHECK_THROWS_AS(l.solve(ivec({1, 2, 3})), ToricError);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    std::vector<IntVector> vs;
    for (int k = 0; k < 3; ++k) vs.push_back(testing_support::from_small(testing_support::random_vector(rng, 3, -5, 5)));
    const IntSublattice m = lattice_from_vectors(vs, 3);
    const IntVector x = testing_support::from_small(testing_support::random_vector(rng, 3, -9, 9));
    if (auto c = m.solve(x)) CHECK(equal(IntVector(m.basis().transpose() * *c), x));
    const IntVector y = vs[0] * 2 - vs[1];
    REQUIRE(m.solve(y).has_value());
  }
}

TEST_CASE("extending functionals") {
  CHECK(equal(extend_functional(lattice_from_vectors<Integer>({ivec({1, 0})}), ivec({5})), ivec({5, 0})));
  const IntVector s = extend_functional(lattice_from_vectors<Integer>({ivec({1, 1})}), ivec({1}));
  CHECK(dot(s, ivec({1, 1})) == 1);
  CHECK(equal(s, ivec({0, 1})));
  CHECK_THROWS_AS(extend_functional(lattice_from_vectors<Integer>({ivec({2, 0})}), ivec({1})), ToricError);
  try {
    extend_functional(lattice_from_vectors<Integer>({ivec({2, 0})}), ivec({1}));
  } catch (const ToricError& e) {
    CHECK(e.code() == ErrorCode::TorsionObstruction);
  }
}

TEST_CASE("kernel and big integers") {
  const IntSublattice k = kernel_lattice<Integer>(imat({{0, 1, 2}, {1, 0, -1}}));
  CHECK(k.rank() == 1);
  CHECK(equal(IntVector(imat({{0, 1, 2}, {1, 0, -1}}) * k.basis_vectors().front()), ivec({0, 0})));

  const Integer big("123456789012345678901234567890");
  IntVector v(2);
  v << big, big * 3;
  const IntSublattice l = lattice_from_vectors<Integer>({v});
  CHECK(equal(saturate_lattice(l).basis(), imat({{1, 3}})));
  CHECK(quotient_invariants(l) == std::vector<Integer>{big});
}
