#include <random>

#include "doctest.h"
#include "support.hpp"
#include "toric/polyhedral.hpp"

using namespace toric;
namespace ts = testing_support;

TEST_CASE("dual description of the quadrant") {
  const DualDescription d = dual_description({ivec({1, 0}), ivec({0, 1})}, 2);
  CHECK(d.lineality.rank() == 0);
  REQUIRE(d.rays.size() == 2);
  CHECK(equal(d.rays[0], ivec({0, 1})));
  CHECK(equal(d.rays[1], ivec({1, 0})));
}

TEST_CASE("dual description with lineality") {
  // half plane y >= 0
  const DualDescription d = dual_description({ivec({0, 1})}, 2);
  CHECK(d.lineality == lattice_from_vectors<Integer>({ivec({1, 0})}));
  REQUIRE(d.rays.size() == 1);
  CHECK(equal(d.rays[0], ivec({0, 1})));
  // no constraints: everything is lineality
  CHECK(dual_description({}, 3).lineality.rank() == 3);
}

TEST_CASE("cone facets agree with brute force") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    std::vector<IntVector> gens;
    for (std::size_t k = 0; k < 2 + static_cast<std::size_t>(t % 4); ++k)
      gens.push_back(ts::from_small(ts::random_vector(rng, n, -4, 4)));
    const RationalCone c = cone_from_generators(gens, static_cast<Eigen::Index>(n));
    std::vector<ts::Small> small_gens;
    for (const IntVector& g : gens) small_gens.push_back(ts::to_small(g));
    const ts::BruteCone brute(small_gens, n);
    ts::Small x(n, -3);
    for (;;) {
      CHECK(c.contains(ts::from_small(x)) == brute.contains(x));
      std::size_t k = 0;
      while (k < n && x[k] == 3) x[k++] = -3;
      if (k == n) break;
      ++x[k];
    }
  }
}

TEST_CASE("cone from inequalities round trip") {
  const RationalCone c = cone_from_inequalities({ivec({1, 0}), ivec({0, 1})}, {}, 2);
  CHECK(c.pointed());
  CHECK(c.rays.size() == 2);
  const RationalCone line = cone_from_inequalities({}, {ivec({0, 1})}, 2);
  CHECK(line.dim() == 1);
  CHECK(line.lineality.rank() == 1);
  CHECK(line.contains(ivec({-4, 0})));
  CHECK_FALSE(line.contains(ivec({0, 1})));
}

TEST_CASE("placing triangulation covers the cone") {
  const std::vector<IntVector> rays = {ivec({1, 0, 1}), ivec({0, 1, 1}), ivec({-1, 0, 1}), ivec({0, -1, 1})};
  const auto simplices = placing_triangulation(rays);
  CHECK(simplices.size() == 2);
  Integer volume = 0;
  std::vector<RationalCone> pieces;
  for (const auto& s : simplices) {
    REQUIRE(s.size() == 3);
    IntMatrix m(3, 3);
    std::vector<IntVector> vs;
    for (int j = 0; j < 3; ++j) {
      m.col(j) = rays[s[static_cast<std::size_t>(j)]];
      vs.push_back(rays[s[static_cast<std::size_t>(j)]]);
    }
    volume += abs(determinant<Integer>(m));
    pieces.push_back(cone_from_generators(vs, 3));
  }
  CHECK(volume == 4);
  const RationalCone whole = cone_from_generators(rays, 3);
  for (long long x = -4; x <= 4; ++x)
    for (long long y = -4; y <= 4; ++y)
      for (long long z = 0; z <= 4; ++z) {
        const IntVector p = ivec({x, y, z});
        if (!whole.contains(p)) continue;
        bool inside = false;
        for (const RationalCone& c : pieces) inside = inside || c.contains(p);
        CHECK(inside);
      }
}

TEST_CASE("parallelepiped points") {
  // (1,0),(1,2): the half-open parallelepiped holds (1,1)
  const auto pts = parallelepiped_points({ivec({1, 0}), ivec({1, 2})});
  REQUIRE(pts.size() == 1);
  CHECK(equal(pts[0], ivec({1, 1})));
  CHECK(parallelepiped_points({ivec({1, 0}), ivec({0, 1})}).empty());
  CHECK(parallelepiped_points({ivec({1, 0}), ivec({1, 3})}).size() == 2);
}

TEST_CASE("hilbert basis in a sublattice") {
  const IntSublattice full = lattice_from_vectors<Integer>({ivec({1, 0}), ivec({0, 1})});
  HilbertBasis hb = hilbert_basis_in({ivec({1, 0}), ivec({1, 2})}, full);
  CHECK(ts::to_small(hb.elements) == std::vector<ts::Small>{{1, 0}, {1, 1}, {1, 2}});
  // inside Groth = <(1,0),(0,2)> the middle point is missing
  const IntSublattice groth = lattice_from_vectors<Integer>({ivec({1, 0}), ivec({1, 2})});
  hb = hilbert_basis_in({ivec({1, 0}), ivec({1, 2})}, groth);
  CHECK(ts::to_small(hb.elements) == std::vector<ts::Small>{{1, 0}, {1, 2}});
  // units are split off
  hb = hilbert_basis_in({ivec({1, 0}), ivec({-1, 0}), ivec({0, 1})}, full);
  CHECK(hb.units == lattice_from_vectors<Integer>({ivec({1, 0})}));
  REQUIRE(hb.elements.size() == 1);
  CHECK(hb.elements[0](1) == 1);
}

TEST_CASE("both hilbert basis methods match brute force") {
  std::mt19937_64 rng(5);
  int compared = 0;
  for (int t = 0; t < 400 && compared < 80; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    std::vector<ts::Small> gens;
    for (std::size_t k = 0; k < n + static_cast<std::size_t>(t % 2); ++k) gens.push_back(ts::random_vector(rng, n, -3, 3));
    std::vector<IntVector> big;
    for (const ts::Small& g : gens) big.push_back(ts::from_small(g));
    const RationalCone c = cone_from_generators(big, static_cast<Eigen::Index>(n));
    if (!c.pointed() || c.dim() != static_cast<Eigen::Index>(n)) continue;
    std::vector<ts::Small> expected;
    try {
      expected = ts::brute_hilbert_basis(gens, n);
    } catch (const std::runtime_error&) {
      continue;
    }
    ++compared;
    CHECK(ts::to_small(pointed_hilbert_basis(c, HilbertMethod::Triangulation)) == expected);
    CHECK(ts::to_small(pointed_hilbert_basis(c, HilbertMethod::Cutting)) == expected);
  }
  CHECK(compared >= 40);
}

TEST_CASE("methods agree on cones cut out by short inequalities") {
  std::mt19937_64 rng(8);
  int compared = 0;
  for (int t = 0; t < 60; ++t) {
    std::vector<IntVector> ineqs;
    for (std::size_t k = 0; k < 3 + static_cast<std::size_t>(t % 3); ++k)
      ineqs.push_back(ts::from_small(ts::random_vector(rng, 3, -3, 3)));
    const RationalCone c = cone_from_inequalities(ineqs, {}, 3);
    if (!c.pointed() || c.dim() != 3 || c.rays.empty()) continue;
    ++compared;
    CHECK(ts::to_small(pointed_hilbert_basis(c, HilbertMethod::Triangulation)) ==
          ts::to_small(pointed_hilbert_basis(c, HilbertMethod::Cutting)));
  }
  CHECK(compared >= 20);
}
