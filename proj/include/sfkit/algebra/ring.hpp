#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfkit {

/// Exponent vector of a monomial; length equals the arity of its ring.
using Exponents = std::vector<std::uint32_t>;

enum class OrderKind { grevlex, lex, block };

/// Monomial order. `block` compares the first `split` variables by grevlex
/// and breaks ties with grevlex on the rest, which makes it an elimination
/// order for the leading block.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::size_t split = 0;

  static MonomialOrder grevlex() { return {OrderKind::grevlex, 0}; }
  static MonomialOrder lex() { return {OrderKind::lex, 0}; }
  static MonomialOrder block(std::size_t eliminated) { return {OrderKind::block, eliminated}; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

inline std::string to_string(const MonomialOrder& o) {
  switch (o.kind) {
    case OrderKind::grevlex: return "grevlex";
    case OrderKind::lex: return "lex";
    case OrderKind::block: return "block(" + std::to_string(o.split) + ")";
  }
  return "?";
}

namespace detail {

inline std::uint64_t degree_range(const Exponents& a, std::size_t lo, std::size_t hi) {
  std::uint64_t d = 0;
  for (std::size_t i = lo; i < hi; ++i) d += a[i];
  return d;
}

inline int grevlex_range(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi) {
  auto da = degree_range(a, lo, hi), db = degree_range(b, lo, hi);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace detail

inline int compare_monomials(const MonomialOrder& order, const Exponents& a, const Exponents& b) {
  switch (order.kind) {
    case OrderKind::lex:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
      return 0;
    case OrderKind::grevlex:
      return detail::grevlex_range(a, b, 0, a.size());
    case OrderKind::block: {
      std::size_t split = std::min(order.split, a.size());
      int c = detail::grevlex_range(a, b, 0, split);
      if (c != 0) return c;
      return detail::grevlex_range(a, b, split, a.size());
    }
  }
  return 0;
}

inline std::uint64_t total_degree(const Exponents& e) { return detail::degree_range(e, 0, e.size()); }

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

inline Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) return false;
  }
  return true;
}

/// Ordered variable names plus the active monomial order. Rings are shared
/// immutably between the polynomials that live in them.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex())
      : names_(std::move(names)), order_(order) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable name: " + names_[i]);
      }
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t require_index(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw std::invalid_argument("unknown variable: " + name);
    return *i;
  }

  int compare(const Exponents& a, const Exponents& b) const { return compare_monomials(order_, a, b); }

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_ && a.order_ == b.order_; }

 private:
  std::vector<std::string> names_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex()) {
  return std::make_shared<const Ring>(std::move(names), order);
}

inline RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
  if (ring->order() == order) return ring;
  return make_ring(ring->names(), order);
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

/// A variable name not present in `ring`, derived from `stem`.
inline std::string fresh_name(const Ring& ring, const std::string& stem) {
  std::string name = stem;
  for (int i = 0; ring.index_of(name); ++i) name = stem + std::to_string(i);
  return name;
}

}  // namespace sfkit
