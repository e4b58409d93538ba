#pragma once

#include <algorithm>
#include <bit>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sfkit/elimination/groebner.hpp"

namespace sfkit {

/// Polynomial ideal over Q in a fixed ring. The zero ideal is stored as the
/// single generator 0. Bases are computed on demand and cached per order;
/// copies share the cache.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<MPoly> generators) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (auto& g : generators) {
      MPoly h = g.in_ring(ring_);
      if (!h.is_zero()) gens_.push_back(std::move(h));
    }
    if (gens_.empty()) gens_.push_back(MPoly(ring_));
  }

  explicit Ideal(std::vector<MPoly> generators)
      : Ideal(generators.empty() ? throw std::invalid_argument("Ideal needs a ring or a generator") : generators.front().ring(),
              std::move(generators)) {}

  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr ring) {
    auto one = MPoly::constant(ring, 1);
    return Ideal(std::move(ring), {one});
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<MPoly>& generators() const { return gens_; }
  bool is_zero() const { return gens_.size() == 1 && gens_[0].is_zero(); }

  /// Reduced basis under `order`; elements live in the ring re-ordered by it.
  const std::vector<MPoly>& basis(MonomialOrder order) const {
    std::lock_guard lock(cache_->mutex);
    for (const auto& [o, b] : cache_->entries)
      if (o == order) return b;
    RingPtr ordered = with_order(ring_, order);
    std::vector<MPoly> gens;
    for (const auto& g : gens_)
      if (!g.is_zero()) gens.push_back(g.in_ring(ordered));
    cache_->entries.emplace_back(order, groebner_basis(gens));
    return cache_->entries.back().second;
  }
  const std::vector<MPoly>& basis() const { return basis(ring_->order()); }

  bool is_unit() const {
    const auto& b = basis();
    return b.size() == 1 && b[0].is_constant();
  }

  Ideal operator+(const Ideal& other) const {
    std::vector<MPoly> g = gens_;
    for (const auto& h : other.gens_) g.push_back(h.in_ring(ring_));
    return Ideal(ring_, std::move(g));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
    return s + ")";
  }

 private:
  struct Cache {
    std::mutex mutex;
    // deque: handed-out references survive later insertions
    std::deque<std::pair<MonomialOrder, std::vector<MPoly>>> entries;
  };

  RingPtr ring_;
  std::vector<MPoly> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Reduced Groebner basis of I under `order`. Elements live in I's ring
/// re-ordered by `order`, so leading terms print first.
inline std::vector<MPoly> groebner(const Ideal& I, MonomialOrder order) { return I.basis(order); }

/// Remainder of p on division by the reduced basis of I under `order`.
inline MPoly normal_form(const MPoly& p, const Ideal& I, MonomialOrder order) {
  RingPtr ordered = with_order(I.ring(), order);
  return reduce(p.in_ring(ordered), I.basis(order)).in_ring(I.ring());
}
inline MPoly normal_form(const MPoly& p, const Ideal& I) { return normal_form(p, I, I.ring()->order()); }

inline bool contains(const Ideal& I, const MPoly& p) { return normal_form(p, I).is_zero(); }

/// I intersected with Q[keep]. The result lives in a ring over `keep` (in the
/// given order) carrying `result_order`.
inline Ideal eliminate(const Ideal& I, const std::vector<std::string>& keep,
                       MonomialOrder result_order = MonomialOrder::grevlex()) {
  std::vector<std::string> names;
  for (const auto& n : I.ring()->names())
    if (std::find(keep.begin(), keep.end(), n) == keep.end()) names.push_back(n);
  std::size_t dropped = names.size();
  for (const auto& k : keep) {
    I.ring()->require_index(k);
    names.push_back(k);
  }
  RingPtr target = make_ring(keep, result_order);
  if (dropped == 0) return Ideal(target, I.generators());

  RingPtr block = make_ring(names, MonomialOrder::block(dropped));
  std::vector<MPoly> gens;
  for (const auto& g : I.generators())
    if (!g.is_zero()) gens.push_back(g.in_ring(block));
  std::vector<MPoly> kept;
  for (const auto& g : groebner_basis(gens)) {
    bool free = true;
    for (std::size_t v = 0; v < dropped && free; ++v) free = !g.involves(v);
    if (free) kept.push_back(g.in_ring(target));
  }
  return Ideal(target, std::move(kept));
}

/// True iff p vanishes on the complex zero set of I (radical membership).
inline bool vanishes_on(const MPoly& p, const Ideal& I) {
  std::vector<std::string> names = I.ring()->names();
  std::string z = fresh_name(*I.ring(), "z");
  names.push_back(z);
  RingPtr ext = make_ring(names, MonomialOrder::grevlex());
  std::vector<MPoly> gens;
  for (const auto& g : I.generators()) gens.push_back(g.in_ring(ext));
  gens.push_back(MPoly::constant(ext, 1) - MPoly::variable(ext, names.size() - 1) * p.in_ring(ext));
  return Ideal(ext, std::move(gens)).is_unit();
}

/// Largest set of variables (indices, ascending) containing the support of
/// no leading monomial of a grevlex basis; nullopt for the unit ideal. Among
/// sets of maximal size the one with the largest indices wins.
inline std::optional<std::vector<std::size_t>> independent_variables(const Ideal& I) {
  std::size_t n = I.ring()->size();
  if (n >= 64) throw std::invalid_argument("independent_variables: too many variables");
  std::vector<std::uint64_t> supports;
  if (!I.is_zero()) {
    const auto& basis = I.basis(MonomialOrder::grevlex());
    if (basis.size() == 1 && basis[0].is_constant()) return std::nullopt;
    for (const auto& g : basis) {
      std::uint64_t mask = 0;
      const auto& lm = g.leading_monomial();
      for (std::size_t i = 0; i < n; ++i)
        if (lm[i]) mask |= std::uint64_t{1} << i;
      supports.push_back(mask);
    }
  }
  std::uint64_t best = 0;
  int best_size = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    int size = std::popcount(s);
    if (size < best_size) continue;
    bool independent = std::none_of(supports.begin(), supports.end(), [&](std::uint64_t m) { return (m & ~s) == 0; });
    if (independent) best = s, best_size = size;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (best >> i & 1) out.push_back(i);
  return out;
}

/// Krull dimension of V(I); -1 for the unit ideal.
inline int dimension(const Ideal& I) {
  auto s = independent_variables(I);
  return s ? static_cast<int>(s->size()) : -1;
}

}  // namespace sfkit
