#include "toric/fan.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "toric/errors.hpp"
#include "toric/polyhedral.hpp"

namespace toric {

std::string fan_issue_name(FanIssue kind) {
  switch (kind) {
    case FanIssue::NotAFace: return "NotAFace";
    case FanIssue::TorsionQuotient: return "TorsionQuotient";
    case FanIssue::NotPointed: return "NotPointed";
    case FanIssue::BadIntersection: return "BadIntersection";
  }
  return "Unknown";
}

namespace {

using Key = std::vector<IntVector>;

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), LexLess{});
  }
};

bool cone_order(const ConvexCone& a, const ConvexCone& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  return KeyLess{}(a.hilbert_basis, b.hilbert_basis);
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex failure_lock;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      try {
        for (std::size_t k = next++; k < count; k = next++) fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> guard(failure_lock);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::optional<PrimeIdeal> find_face(const ConvexCone& c, const std::vector<PrimeIdeal>& primes) {
  for (const PrimeIdeal& q : primes) {
    const Key face = q.face_vectors();
    if (face.size() == c.hilbert_basis.size() &&
        std::equal(face.begin(), face.end(), c.hilbert_basis.begin(),
                   [](const IntVector& x, const IntVector& y) { return equal(x, y); }))
      return q;
  }
  return std::nullopt;
}

/// A point of C in the relative interior of the smallest face of P that
/// contains C. No face of P lying inside C contains it.
IntVector bad_point(const ConvexCone& c, const std::vector<PrimeIdeal>& primes) {
  const PrimeIdeal* smallest = nullptr;
  for (const PrimeIdeal& q : primes) {
    const Key face = q.face_vectors();
    const RationalCone rc = cone_from_generators(face, c.ambient_rank);
    bool covers = true;
    for (const IntVector& h : c.hilbert_basis) covers = covers && rc.contains(h);
    if (covers && (!smallest || q.face_generators.size() < smallest->face_generators.size())) smallest = &q;
  }
  const RationalCone f = cone_from_generators(smallest->face_vectors(), c.ambient_rank);
  for (const IntVector& h : c.hilbert_basis)
    if (f.in_relative_interior(h)) return h;
  IntVector sum = IntVector::Zero(c.ambient_rank);
  for (const IntVector& h : c.hilbert_basis) sum += h;
  return sum;
}

std::size_t tri_index(std::size_t i, std::size_t j, std::size_t n) { return i * n - i * (i - 1) / 2 + (j - i); }

std::optional<FanDiagnostic> cone_axioms(const std::vector<IntVector>& gens, Eigen::Index n, std::size_t idx) {
  for (const IntVector& g : gens) {
    if (g.size() != n) throw ToricError(ErrorCode::RankMismatch, "cone generator of wrong length");
    if (!is_zero(g) && content(g) != 1)
      return FanDiagnostic{FanIssue::TorsionQuotient, {idx}, g,
                           "generator " + to_string(g) + " is not primitive"};
  }
  const RationalCone rc = cone_from_generators(gens, n);
  if (!rc.pointed()) {
    const IntVector u = rc.lineality.basis_vectors().front();
    return FanDiagnostic{FanIssue::NotPointed, {idx}, u, "cone contains the line through " + to_string(u)};
  }
  return std::nullopt;
}

}  // namespace

struct FanBuilder {
  static FanValidation run(const std::vector<std::vector<IntVector>>& max_cones, Eigen::Index n, unsigned threads) {
    FanValidation out;
    for (std::size_t i = 0; i < max_cones.size(); ++i)
      if (auto d = cone_axioms(max_cones[i], n, i)) out.diagnostics.push_back(std::move(*d));
    if (!out.diagnostics.empty()) return out;

    std::vector<ConvexCone> inputs(max_cones.size());
    parallel_for(max_cones.size(), threads, [&](std::size_t i) { inputs[i] = make_convex_cone(max_cones[i], n); });
    std::vector<std::vector<PrimeIdeal>> input_primes(inputs.size());
    parallel_for(inputs.size(), threads, [&](std::size_t i) { input_primes[i] = spec_faces(inputs[i].monoid); });

    // axiom (2) on input pairs; faces of good pairs then meet in common faces too
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      for (std::size_t j = i + 1; j < inputs.size(); ++j) pairs.emplace_back(i, j);
    std::vector<std::optional<FanDiagnostic>> found(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t k) {
      const auto [i, j] = pairs[k];
      const ConvexCone c = intersect_cones(inputs[i], inputs[j]);
      const bool on_i = find_face(c, input_primes[i]).has_value();
      const bool on_j = find_face(c, input_primes[j]).has_value();
      if (on_i && on_j) return;
      const std::size_t bad = on_i ? j : i;
      FanDiagnostic d;
      d.kind = (on_i || on_j) ? FanIssue::BadIntersection : FanIssue::NotAFace;
      d.cones = {i, j};
      d.witness = bad_point(c, input_primes[bad]);
      d.message = "intersection of cones " + std::to_string(i) + " and " + std::to_string(j) +
                  " is not a face of cone " + std::to_string(bad) + (on_i || on_j ? "" : " nor of the other");
      found[k] = std::move(d);
    });
    for (auto& d : found)
      if (d) out.diagnostics.push_back(std::move(*d));
    if (!out.diagnostics.empty()) return out;

    // face closure
    std::map<Key, ConvexCone, KeyLess> closure;
    closure.emplace(Key{}, make_convex_cone({}, n));
    for (std::size_t i = 0; i < inputs.size(); ++i)
      for (const PrimeIdeal& p : input_primes[i]) {
        Key face = p.face_vectors();
        if (!closure.count(face)) closure.emplace(face, face_cone(inputs[i], p));
      }
    Fan fan;
    fan.rank_ = n;
    for (auto& [key, c] : closure) fan.cones_.push_back(std::move(c));
    std::stable_sort(fan.cones_.begin(), fan.cones_.end(), cone_order);

    const std::size_t count = fan.cones_.size();
    fan.primes_.resize(count);
    fan.face_index_.resize(count);
    parallel_for(count, threads, [&](std::size_t i) { fan.primes_[i] = spec_faces(fan.cones_[i].monoid); });
    std::map<Key, std::size_t, KeyLess> position;
    for (std::size_t i = 0; i < count; ++i) position.emplace(fan.cones_[i].hilbert_basis, i);
    for (std::size_t i = 0; i < count; ++i)
      for (const PrimeIdeal& p : fan.primes_[i]) {
        auto it = position.find(p.face_vectors());
        if (it == position.end()) throw ToricError(ErrorCode::InvalidArgument, "face closure is incomplete");
        fan.face_index_[i].push_back(it->second);
      }
    std::vector<bool> is_face_of_other(count, false);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t f : fan.face_index_[i])
        if (f != i) is_face_of_other[f] = true;
    for (std::size_t i = 0; i < count; ++i)
      if (!is_face_of_other[i]) fan.maximal_.push_back(i);

    fan.relation_.resize(count * (count + 1) / 2);
    std::vector<std::pair<std::size_t, std::size_t>> all_pairs;
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i; j < count; ++j) all_pairs.emplace_back(i, j);
    parallel_for(all_pairs.size(), threads, [&](std::size_t k) {
      const auto [i, j] = all_pairs[k];
      const ConvexCone c = intersect_cones(fan.cones_[i], fan.cones_[j]);
      auto p = find_face(c, fan.primes_[i]);
      auto q = find_face(c, fan.primes_[j]);
      const auto idx = fan.index_of(c);
      if (!p || !q || !idx) throw ToricError(ErrorCode::InvalidArgument, "faces of a fan meet badly");
      fan.relation_[tri_index(i, j, count)] = CommonFace{*idx, std::move(*p), std::move(*q)};
    });
    out.fan = std::move(fan);
    return out;
  }
};

CommonFace Fan::common_face(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw ToricError(ErrorCode::InvalidArgument, "cone index out of range");
  if (i <= j) return relation_[tri_index(i, j, size())];
  CommonFace c = relation_[tri_index(j, i, size())];
  std::swap(c.p, c.q);
  return c;
}

std::optional<std::size_t> Fan::index_of(const ConvexCone& c) const {
  auto it = std::lower_bound(cones_.begin(), cones_.end(), c, cone_order);
  if (it != cones_.end() && *it == c) return static_cast<std::size_t>(it - cones_.begin());
  return std::nullopt;
}

FanValidation validate_fan(const std::vector<std::vector<IntVector>>& max_cones, Eigen::Index n, unsigned threads) {
  return FanBuilder::run(max_cones, n, threads);
}

bool support_contains(const Fan& f, const IntVector& x) {
  if (x.size() != f.ambient_rank()) throw ToricError(ErrorCode::RankMismatch, "point of wrong length");
  for (std::size_t i : f.maximal())
    if (f.cone(i).contains(x)) return true;
  return false;
}

bool is_complete(const Fan& f) {
  const Eigen::Index n = f.ambient_rank();
  if (n == 0) return true;
  std::vector<std::size_t> top;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.cone(i).rank() == n) top.push_back(i);
  if (top.empty()) return false;

  std::map<std::size_t, std::vector<std::size_t>> walls;  // wall -> positions in top
  for (std::size_t t = 0; t < top.size(); ++t)
    for (std::size_t w : f.face_indices(top[t]))
      if (f.cone(w).rank() == n - 1) walls[w].push_back(t);

  std::vector<std::size_t> parent(top.size());
  for (std::size_t t = 0; t < top.size(); ++t) parent[t] = t;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [w, sides] : walls) {
    if (sides.size() != 2) return false;
    parent[find(sides[0])] = find(sides[1]);
  }
  for (std::size_t t = 0; t < top.size(); ++t)
    if (find(t) != find(0)) return false;
  return true;
}

}  // namespace toric
