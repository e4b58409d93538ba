#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "sfkit/algebra/mpoly.hpp"

namespace sfkit {

/// Full reduction of p modulo `divisors` (leading and tail terms).
inline MPoly reduce(const MPoly& p, const std::vector<MPoly>& divisors) {
  const RingPtr& ring = p.ring();
  MPoly rest = p;
  std::vector<MPoly::Term> remainder;
  while (!rest.is_zero()) {
    const auto& lt = rest.leading_term();
    const MPoly* hit = nullptr;
    for (const auto& g : divisors) {
      if (!g.is_zero() && divides(g.leading_monomial(), lt.exp)) {
        hit = &g;
        break;
      }
    }
    if (!hit) {
      remainder.push_back(lt);
      rest = rest - MPoly::monomial(ring, lt.exp, lt.coeff);
      continue;
    }
    Exponents shift(lt.exp.size());
    for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = lt.exp[i] - hit->leading_monomial()[i];
    rest = rest - hit->mul_term(shift, lt.coeff / hit->leading_coeff());
  }
  return MPoly(ring, std::move(remainder));
}

inline MPoly s_polynomial(const MPoly& f, const MPoly& g) {
  Exponents l = lcm(f.leading_monomial(), g.leading_monomial());
  Exponents sf(l.size()), sg(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    sf[i] = l[i] - f.leading_monomial()[i];
    sg[i] = l[i] - g.leading_monomial()[i];
  }
  return f.mul_term(sf, Rational(1) / f.leading_coeff()) - g.mul_term(sg, Rational(1) / g.leading_coeff());
}

namespace detail {

struct CriticalPair {
  std::size_t i, j;
  Exponents lcm;
};

// Gebauer-Moeller installation of a new basis element: Buchberger's product
// criterion and chain criterion, nothing else.
class BuchbergerState {
 public:
  explicit BuchbergerState(RingPtr ring) : ring_(std::move(ring)) {}

  void insert(MPoly h) {
    std::size_t hi = polys_.size();
    const Exponents& lh = h.leading_monomial();
    polys_.push_back(std::move(h));
    active_.push_back(true);

    std::vector<CriticalPair> fresh;
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g]) fresh.push_back({g, hi, lcm(polys_[g].leading_monomial(), lh)});
    }
    // Chain criterion among the new pairs; coprime pairs survive this pass
    // so they can shadow others, then the product criterion drops them.
    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const auto& p = fresh[a];
      bool copr = coprime(polys_[p.i].leading_monomial(), lh);
      bool shadowed = false;
      if (!copr) {
        for (std::size_t b = a + 1; b < fresh.size() && !shadowed; ++b) shadowed = divides(fresh[b].lcm, p.lcm);
        for (std::size_t b = 0; b < kept.size() && !shadowed; ++b) shadowed = divides(kept[b].lcm, p.lcm);
      }
      if (!shadowed) kept.push_back(p);
    }
    std::vector<CriticalPair> next;
    for (auto& p : pairs_) {
      bool drop = divides(lh, p.lcm) && lcm(polys_[p.i].leading_monomial(), lh) != p.lcm &&
                  lcm(polys_[p.j].leading_monomial(), lh) != p.lcm;
      if (!drop) next.push_back(std::move(p));
    }
    for (auto& p : kept) {
      if (!coprime(polys_[p.i].leading_monomial(), lh)) next.push_back(std::move(p));
    }
    pairs_ = std::move(next);
    for (std::size_t g = 0; g < hi; ++g) {
      if (active_[g] && divides(lh, polys_[g].leading_monomial())) active_[g] = false;
    }
  }

  bool has_pairs() const { return !pairs_.empty(); }

  // Normal strategy: least lcm degree, ties by the ring order, then indices.
  CriticalPair pop_pair() {
    auto better = [&](const CriticalPair& a, const CriticalPair& b) {
      auto da = total_degree(a.lcm), db = total_degree(b.lcm);
      if (da != db) return da < db;
      int c = ring_->compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    };
    auto it = std::min_element(pairs_.begin(), pairs_.end(), better);
    CriticalPair p = *it;
    pairs_.erase(it);
    return p;
  }

  const MPoly& poly(std::size_t i) const { return polys_[i]; }

  std::vector<MPoly> active() const {
    std::vector<MPoly> out;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) out.push_back(polys_[i]);
    return out;
  }

 private:
  RingPtr ring_;
  std::vector<MPoly> polys_;
  std::vector<bool> active_;
  std::vector<CriticalPair> pairs_;
};

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `generators` under the
/// order of their ring. Elements are canonical (primitive integer, positive
/// leading coefficient) and sorted by ascending leading monomial. The zero
/// ideal yields an empty basis; the unit ideal yields {1}.
inline std::vector<MPoly> groebner_basis(const std::vector<MPoly>& generators) {
  if (generators.empty()) return {};
  const RingPtr& ring = generators.front().ring();
  std::vector<MPoly> input;
  for (const auto& g : generators) {
    if (!g.is_zero()) input.push_back(g.canonical());
  }
  std::sort(input.begin(), input.end(),
            [&](const MPoly& a, const MPoly& b) { return ring->compare(a.leading_monomial(), b.leading_monomial()) < 0; });

  detail::BuchbergerState state(ring);
  for (const auto& f : input) {
    MPoly h = reduce(f, state.active());
    if (h.is_zero()) continue;
    if (h.is_constant()) return {MPoly::constant(ring, 1)};
    state.insert(h.canonical());
  }
  while (state.has_pairs()) {
    auto pair = state.pop_pair();
    MPoly h = reduce(s_polynomial(state.poly(pair.i), state.poly(pair.j)), state.active());
    if (h.is_zero()) continue;
    if (h.is_constant()) return {MPoly::constant(ring, 1)};
    state.insert(h.canonical());
  }

  std::vector<MPoly> basis = state.active();
  std::vector<MPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& li = basis[i].leading_monomial();
      const auto& lj = basis[j].leading_monomial();
      redundant = divides(lj, li) && (lj != li || j < i);
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<MPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const auto& lt = minimal[i].leading_term();
    MPoly tail = minimal[i] - MPoly::monomial(ring, lt.exp, lt.coeff);
    reduced.push_back((MPoly::monomial(ring, lt.exp, lt.coeff) + reduce(tail, others)).canonical());
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const MPoly& a, const MPoly& b) { return ring->compare(a.leading_monomial(), b.leading_monomial()) < 0; });
  return reduced;
}

/// True iff every S-polynomial of basis pairs reduces to zero.
inline bool satisfies_buchberger_criterion(const std::vector<MPoly>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!reduce(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
  return true;
}

}  // namespace sfkit
