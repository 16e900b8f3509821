#include "toric/monoid.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <string>

#include "toric/errors.hpp"

namespace toric {
namespace {

std::string key_of(std::size_t i, const IntVector& y) {
  std::string k = std::to_string(i);
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    k += ',';
    k += y(j).str();
  }
  return k;
}

/// Exact search for an N-combination of the non-unit generators plus a
/// units-lattice remainder. `cone` must be cone(gens).
class CombinationSearch {
 public:
  CombinationSearch(const std::vector<IntVector>& gens, const RationalCone& cone, Eigen::Index n)
      : gens_(gens), cone_(cone) {
    std::vector<IntVector> unit_gens;
    weight_ = IntVector::Zero(n);
    for (const IntVector& f : cone.facets) weight_ += f;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (cone.lineality.contains(gens[i])) {
        unit_idx_.push_back(i);
        unit_gens.push_back(gens[i]);
      } else {
        free_idx_.push_back(i);
      }
    }
    units_ = lattice_from_vectors(unit_gens, n);
    if (!unit_gens.empty()) {
      const HermiteForm<Integer> h = hermite<Integer>(rows_matrix(unit_gens, n));
      unit_transform_ = h.U.topRows(h.rank());
    }
  }

  std::optional<IntVector> run(const IntVector& x) {
    if (!cone_.contains(x)) return std::nullopt;
    coeffs_ = IntVector::Zero(static_cast<Eigen::Index>(gens_.size()));
    failed_.clear();
    if (!dfs(0, x)) return std::nullopt;
    return coeffs_;
  }

 private:
  bool finish(const IntVector& rest) {
    if (unit_idx_.empty()) return is_zero(rest);
    if (!units_.contains(rest)) return false;
    // express the remainder over the unit generators themselves
    const auto c = units_.solve(rest);
    // basis rows of units_ are the nonzero rows of U * gens
    const IntVector over_gens = unit_transform_.transpose() * (*c);
    for (std::size_t j = 0; j < unit_idx_.size(); ++j)
      coeffs_(static_cast<Eigen::Index>(unit_idx_[j])) = over_gens(static_cast<Eigen::Index>(j));
    return true;
  }

  bool dfs(std::size_t pos, const IntVector& rest) {
    const Integer budget = dot(weight_, rest);
    if (budget == 0) return finish(rest);
    if (pos == free_idx_.size()) return false;
    const std::string key = key_of(pos, rest);
    if (failed_.count(key)) return false;
    const std::size_t gi = free_idx_[pos];
    const IntVector& g = gens_[gi];
    const Integer w = dot(weight_, g);
    const Integer most = budget / w;
    IntVector y = rest;
    // once y leaves the cone, subtracting more of g keeps it outside
    for (Integer c = 0; c <= most && cone_.contains(y); ++c) {
      coeffs_(static_cast<Eigen::Index>(gi)) = c;
      if (dfs(pos + 1, y)) return true;
      y -= g;
    }
    coeffs_(static_cast<Eigen::Index>(gi)) = 0;
    failed_.insert(key);
    return false;
  }

  const std::vector<IntVector>& gens_;
  const RationalCone& cone_;
  IntVector weight_;
  std::vector<std::size_t> unit_idx_, free_idx_;
  IntSublattice units_;
  IntMatrix unit_transform_;
  IntVector coeffs_;
  std::set<std::string> failed_;
};

bool generated_by(const std::vector<IntVector>& gens, const IntVector& x, Eigen::Index n) {
  if (is_zero(x)) return true;
  if (gens.empty()) return false;
  const RationalCone cone = cone_from_generators(gens, n);
  return CombinationSearch(gens, cone, n).run(x).has_value();
}

std::vector<IntVector> canonical_generators(std::vector<IntVector> gens, Eigen::Index n) {
  for (const IntVector& g : gens)
    if (g.size() != n) throw ToricError(ErrorCode::RankMismatch, "generator of wrong length");
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const IntVector& g) { return is_zero(g); }),
             gens.end());
  sort_unique(gens);
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<IntVector> others;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) others.push_back(gens[j]);
    if (generated_by(others, gens[i], n))
      gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return gens;
}

}  // namespace

struct FgMonoid::Core {
  Eigen::Index n = 0;
  std::vector<IntVector> gens;
  IntSublattice groth;

  mutable std::once_flag cone_once, units_once, saturated_once;
  mutable RationalCone cone;
  mutable IntSublattice units;
  mutable bool saturated = false;

  const RationalCone& get_cone() const {
    std::call_once(cone_once, [this] { cone = cone_from_generators(gens, n); });
    return cone;
  }

  const IntSublattice& get_units() const {
    std::call_once(units_once, [this] {
      const RationalCone& c = get_cone();
      std::vector<IntVector> unit_gens;
      for (const IntVector& g : gens)
        if (c.lineality.contains(g)) unit_gens.push_back(g);
      units = lattice_from_vectors(unit_gens, n);
    });
    return units;
  }

  bool raw_contains(const IntVector& x) const {
    if (is_zero(x)) return true;
    if (gens.empty()) return false;
    return CombinationSearch(gens, get_cone(), n).run(x).has_value();
  }

  bool get_saturated() const {
    std::call_once(saturated_once, [this] {
      const HilbertBasis hb = hilbert_basis_in(gens, groth);
      bool ok = true;
      for (const IntVector& h : hb.elements) ok = ok && raw_contains(h);
      for (const IntVector& u : hb.units.basis_vectors())
        ok = ok && raw_contains(u) && raw_contains(IntVector(-u));
      saturated = ok;
    });
    return saturated;
  }
};

FgMonoid::FgMonoid(std::vector<IntVector> generators, Eigen::Index ambient_rank)
    : FgMonoid(canonical_generators(std::move(generators), ambient_rank), ambient_rank, Minimal{}) {}

FgMonoid::FgMonoid(std::vector<IntVector> generators, Eigen::Index ambient_rank, Minimal) {
  auto core = std::make_shared<Core>();
  core->n = ambient_rank;
  core->gens = std::move(generators);
  core->groth = lattice_from_vectors(core->gens, ambient_rank);
  core_ = std::move(core);
}

Eigen::Index FgMonoid::ambient_rank() const { return core_->n; }
const std::vector<IntVector>& FgMonoid::generators() const { return core_->gens; }
const IntSublattice& FgMonoid::groth() const { return core_->groth; }
const IntSublattice& FgMonoid::units() const { return core_->get_units(); }
const RationalCone& FgMonoid::cone() const { return core_->get_cone(); }
bool FgMonoid::saturated() const { return core_->get_saturated(); }

bool FgMonoid::contains(const IntVector& x) const {
  if (x.size() != ambient_rank()) throw ToricError(ErrorCode::RankMismatch, "membership query of wrong length");
  if (saturated()) return groth().contains(x) && cone().contains(x);
  return core_->raw_contains(x);
}

std::optional<IntVector> FgMonoid::decompose(const IntVector& x) const {
  if (x.size() != ambient_rank()) throw ToricError(ErrorCode::RankMismatch, "decomposition query of wrong length");
  if (is_zero(x)) return IntVector::Zero(static_cast<Eigen::Index>(size()));
  if (generators().empty()) return std::nullopt;
  return CombinationSearch(generators(), cone(), ambient_rank()).run(x);
}

bool operator==(const FgMonoid& a, const FgMonoid& b) {
  if (a.ambient_rank() != b.ambient_rank() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal(a.generators()[i], b.generators()[i])) return false;
  return true;
}

bool PrimeIdeal::belongs_to(const FgMonoid& m) const {
  if (m.size() != parent_generators.size()) return false;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!equal(m.generators()[i], parent_generators[i])) return false;
  return true;
}

std::vector<IntVector> PrimeIdeal::face_vectors() const {
  std::vector<IntVector> out;
  for (std::size_t i : face_generators) out.push_back(parent_generators[i]);
  return out;
}

std::vector<std::size_t> PrimeIdeal::prime_generators() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < parent_generators.size(); ++i)
    if (!std::binary_search(face_generators.begin(), face_generators.end(), i)) out.push_back(i);
  return out;
}

IntSublattice grothendieck_group(const FgMonoid& m) { return m.groth(); }
IntSublattice units_subgroup(const FgMonoid& m) { return m.units(); }
bool membership(const FgMonoid& m, const IntVector& x) { return m.contains(x); }
bool is_saturated(const FgMonoid& m) { return m.saturated(); }

FgMonoid saturation(const FgMonoid& m) {
  if (m.saturated()) return m;
  const HilbertBasis hb = hilbert_basis_in(m.generators(), m.groth());
  std::vector<IntVector> gens = hb.elements;
  for (const IntVector& u : hb.units.basis_vectors()) {
    gens.push_back(u);
    gens.push_back(-u);
  }
  return FgMonoid(std::move(gens), m.ambient_rank());
}

namespace {

void require_saturated(const FgMonoid& m) {
  if (!m.saturated()) throw ToricError(ErrorCode::NotSaturated, "operation requires a saturated monoid");
}

void require_prime_of(const FgMonoid& m, const PrimeIdeal& p) {
  if (!p.belongs_to(m)) throw ToricError(ErrorCode::ForeignPrime, "prime ideal belongs to another monoid");
}

/// Faces of cone(M) as sorted generator index sets.
std::vector<std::vector<std::size_t>> face_index_sets(const FgMonoid& m) {
  const RationalCone& cone = m.cone();
  const auto& gens = m.generators();
  std::vector<std::size_t> all(gens.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::set<std::vector<std::size_t>> seen{all};
  std::vector<std::vector<std::size_t>> queue{all};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::vector<std::size_t> face = queue[q];
    for (const IntVector& f : cone.facets) {
      std::vector<std::size_t> sub;
      for (std::size_t i : face)
        if (dot(f, gens[i]) == 0) sub.push_back(i);
      if (seen.insert(sub).second) queue.push_back(sub);
    }
  }
  std::vector<std::vector<std::size_t>> faces(seen.begin(), seen.end());
  std::sort(faces.begin(), faces.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return faces;
}

}  // namespace

std::vector<PrimeIdeal> spec_faces(const FgMonoid& m) {
  require_saturated(m);
  const RationalCone& cone = m.cone();
  const auto& gens = m.generators();
  std::vector<PrimeIdeal> primes;
  for (auto& face : face_index_sets(m)) {
    PrimeIdeal p;
    p.parent_generators = gens;
    p.supporting_functional = IntVector::Zero(m.ambient_rank());
    for (const IntVector& f : cone.facets) {
      bool tight = true;
      for (std::size_t i : face) tight = tight && dot(f, gens[i]) == 0;
      if (tight) p.supporting_functional += f;
    }
    p.face_generators = std::move(face);
    primes.push_back(std::move(p));
  }
  return primes;
}

FgMonoid localize(const FgMonoid& m, const PrimeIdeal& p) {
  require_prime_of(m, p);
  std::vector<IntVector> gens = m.generators();
  for (std::size_t i : p.face_generators) gens.push_back(-m.generators()[i]);
  return FgMonoid(std::move(gens), m.ambient_rank());
}

FaceQuotient quotient_by_face(const FgMonoid& m, const PrimeIdeal& p) {
  require_prime_of(m, p);
  require_saturated(m);
  const Eigen::Index n = m.ambient_rank();
  const IntSublattice face_span = saturate_lattice(lattice_from_vectors(p.face_vectors(), n));
  FaceQuotient q;
  q.projection = annihilator(face_span).basis();
  std::vector<IntVector> image;
  for (const IntVector& g : m.generators()) image.push_back(q.projection * g);
  q.image = FgMonoid(std::move(image), q.projection.rows());
  return q;
}

UnitSplitting split_units(const FgMonoid& m) {
  require_saturated(m);
  const HilbertBasis hb = hilbert_basis_in(m.generators(), m.groth());
  return {FgMonoid(hb.elements, m.ambient_rank()), hb.units};
}

std::size_t monoid_dim(const FgMonoid& m) {
  require_saturated(m);
  const Eigen::Index n = m.ambient_rank();
  Eigen::Index lo = n, hi = 0;
  for (const auto& face : face_index_sets(m)) {
    std::vector<IntVector> vs;
    for (std::size_t i : face) vs.push_back(m.generators()[i]);
    const Eigen::Index r = lattice_from_vectors(vs, n).rank();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return static_cast<std::size_t>(hi - lo);
}

IntVector separating_functional(const FgMonoid& m, const PrimeIdeal& p, const Integer& b) {
  require_prime_of(m, p);
  require_saturated(m);
  const std::vector<std::size_t> outside = p.prime_generators();
  if (outside.empty()) return IntVector::Zero(m.ambient_rank());
  const IntVector& sigma = p.supporting_functional;
  Integer least = -1;
  for (std::size_t i : outside) {
    const Integer v = dot(sigma, m.generators()[i]);
    if (least < 0 || v < least) least = v;
  }
  Integer k = ceil_div<Integer>(b, least);
  if (k < 1) k = 1;
  return IntVector(k * sigma);
}

std::optional<IntVector> MonoidEmbedding::apply(const IntVector& x) const {
  auto c = domain.solve(x);
  if (!c) return std::nullopt;
  return IntVector(coordinate_rows * (*c));
}

MonoidEmbedding embed_into_Nn(const FgMonoid& m) {
  require_saturated(m);
  if (m.units().rank() != 0) throw ToricError(ErrorCode::HasUnits, "monoid has nontrivial units");
  MonoidEmbedding e;
  e.domain = m.groth();
  const Eigen::Index k = e.domain.rank();
  std::vector<IntVector> coords;
  for (const IntVector& g : m.generators()) coords.push_back(*e.domain.solve(g));
  std::vector<IntVector> rows;
  if (k > 0) {
    const RationalCone cone = cone_from_generators(coords, k);
    const IntSublattice full = IntSublattice::span_of(IntMatrix::Identity(k, k));
    rows = hilbert_basis_in(cone.facets, full).elements;
  }
  e.coordinate_rows = rows_matrix(rows, k);
  if (quotient_torsion_free(e.domain)) {
    std::vector<IntVector> lifted;
    for (const IntVector& r : rows) lifted.push_back(extend_functional(e.domain, r));
    e.ambient_rows = rows_matrix(lifted, m.ambient_rank());
  }
  return e;
}

}  // namespace toric
