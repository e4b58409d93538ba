#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sfkit/algebra/mpoly.hpp"

namespace sfkit {

MPoly gcd(const MPoly& p, const MPoly& q);

namespace detail {

inline std::optional<std::size_t> first_variable(const MPoly& p) {
  for (std::size_t v = 0; v < p.ring()->size(); ++v) {
    if (p.involves(v)) return v;
  }
  return std::nullopt;
}

inline MPoly from_coefficients(const std::vector<MPoly>& c, std::size_t var, const RingPtr& ring) {
  MPoly r(ring);
  Exponents e(ring->size(), 0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    e[var] = static_cast<std::uint32_t>(k);
    if (!c[k].is_zero()) r += c[k].mul_term(e, 1);
  }
  return r;
}

// Pseudo-remainder of a by b viewed as polynomials in `var`.
inline MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var) {
  auto bc = b.coefficients_in(var);
  std::size_t db = bc.size() - 1;
  const MPoly& lb = bc.back();
  MPoly r = a;
  const RingPtr& ring = a.ring();
  Exponents shift(ring->size(), 0);
  while (!r.is_zero() && r.degree_in(var) >= db) {
    auto rc = r.coefficients_in(var);
    std::size_t dr = rc.size() - 1;
    shift[var] = static_cast<std::uint32_t>(dr - db);
    MPoly lr = rc.back();
    r = lb * r - (lr * b).mul_term(shift, 1);
  }
  return r;
}

}  // namespace detail

/// Content of p in `var`: the gcd of its coefficients in ring[other][var].
inline MPoly content(const MPoly& p, std::size_t var) {
  MPoly g(p.ring());
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

/// Greatest common divisor over Q in canonical form (primitive integer
/// coefficients, positive leading coefficient); gcd(0, 0) = 0. Recursive
/// primitive PRS on the first variable that occurs.
inline MPoly gcd(const MPoly& p, const MPoly& q) {
  const RingPtr& ring = p.ring();
  if (p.is_zero()) return q.canonical();
  if (q.is_zero()) return p.canonical();
  if (p.is_constant() || q.is_constant()) return MPoly::constant(ring, 1);
  auto vp = detail::first_variable(p), vq = detail::first_variable(q);
  std::size_t v = std::min(*vp, *vq);
  if (!p.involves(v)) return gcd(p, content(q, v));
  if (!q.involves(v)) return gcd(content(p, v), q);
  MPoly cp = content(p, v), cq = content(q, v);
  MPoly c = gcd(cp, cq);
  MPoly a = exact_divide(p, cp), b = exact_divide(q, cq);
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  while (!b.is_zero()) {
    MPoly r = detail::pseudo_remainder(a, b, v);
    a = std::move(b);
    if (r.is_zero() || !r.involves(v)) {
      b = r.is_zero() ? MPoly(ring) : MPoly::constant(ring, 1);
      if (!r.is_zero()) a = MPoly::constant(ring, 1);
      break;
    }
    b = exact_divide(r, content(r, v));
  }
  if (!a.is_constant()) a = exact_divide(a, content(a, v));
  return (c * a).canonical();
}

/// p / gcd(p, dp/dvar): removes repeated factors involving `var` (and the
/// content free of `var`), in canonical form.
inline MPoly squarefree_part(const MPoly& p, std::size_t var) {
  if (p.is_zero()) throw std::domain_error("squarefree_part of the zero polynomial");
  return exact_divide(p, gcd(p, p.derivative(var))).canonical();
}

inline MPoly squarefree_part(const MPoly& p, const std::string& var) {
  return squarefree_part(p, p.ring()->require_index(var));
}

/// Product of the distinct irreducible factors of p (its radical
/// generator), canonical; constants map to 1.
inline MPoly squarefree(const MPoly& p) {
  if (p.is_zero()) throw std::domain_error("squarefree of the zero polynomial");
  auto v = detail::first_variable(p);
  if (!v) return MPoly::constant(p.ring(), 1);
  return (squarefree(content(p, *v)) * squarefree_part(p, *v)).canonical();
}

}  // namespace sfkit
