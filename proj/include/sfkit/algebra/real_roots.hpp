#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "sfkit/algebra/upoly.hpp"

namespace sfkit {

/// Closed rational interval holding exactly one distinct real root of the
/// queried polynomial; endpoints are never roots unless lower == upper.
struct IsolatingInterval {
  Rational lower;
  Rational upper;
  unsigned multiplicity = 1;
};

/// Signed remainder chain p, p', -rem(p, p'), ...
inline std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    UPoly r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

inline int sign_variations(const std::vector<UPoly>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

/// Number of distinct real roots in (a, b].
inline int count_roots(const std::vector<UPoly>& seq, const Rational& a, const Rational& b) {
  return sign_variations(seq, a) - sign_variations(seq, b);
}

/// 1 + max |c_i / c_n|; every complex root has smaller modulus.
inline Rational cauchy_bound(const UPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / p.leading())));
  return m + 1;
}

namespace detail {

// A point in (a, b) near the midpoint where p does not vanish.
inline Rational split_point(const UPoly& p, const Rational& a, const Rational& b) {
  Rational mid = (a + b) / 2;
  for (long k = 2; p(mid) == 0; ++k) mid = a + (b - a) * make_rational(k, 2 * k + 1);
  return mid;
}

inline void isolate(const UPoly& p, const std::vector<UPoly>& seq, Rational a, Rational b,
                    std::vector<IsolatingInterval>& out) {
  int n = count_roots(seq, a, b);
  if (n == 0) return;
  if (n == 1 && b - a <= 1) {
    out.push_back({a, b, 1});
    return;
  }
  Rational m = split_point(p, a, b);
  isolate(p, seq, a, m, out);
  isolate(p, seq, m, b, out);
}

}  // namespace detail

/// Isolates every distinct real root of u by Sturm bisection from the
/// Cauchy bound down to intervals of width <= 1, and tags each with its
/// multiplicity in u.
inline std::vector<IsolatingInterval> real_roots(const UPoly& u) {
  if (u.is_zero()) throw std::domain_error("real_roots of the zero polynomial");
  std::vector<IsolatingInterval> out;
  if (u.degree() == 0) return out;
  UPoly p = squarefree_part(u);
  auto seq = sturm_sequence(p);
  Rational bound = cauchy_bound(p);
  detail::isolate(p, seq, -bound, bound, out);
  // Neighbours from one bisection share an endpoint; it is not a root, so
  // halving the left interval eventually pulls it clear.
  for (std::size_t k = 1; k < out.size(); ++k) {
    auto& left = out[k - 1];
    while (left.upper >= out[k].lower) {
      Rational m = detail::split_point(p, left.lower, left.upper);
      if (count_roots(seq, left.lower, m) == 1) left.upper = m;
      else left.lower = m;
    }
  }
  auto factors = squarefree_decomposition(u);
  for (auto& iv : out) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() <= 0) continue;
      auto fs = sturm_sequence(factors[i]);
      if (count_roots(fs, iv.lower, iv.upper) > 0) {
        iv.multiplicity = static_cast<unsigned>(i + 1);
        break;
      }
    }
  }
  return out;
}

/// Bisects `iv` (which isolates a root of squarefree p with nonzero values
/// at both endpoints) until its width is at most `width`.
inline IsolatingInterval refine(const UPoly& p, IsolatingInterval iv, const Rational& width) {
  UPoly sp = squarefree_part(p);
  while (iv.upper - iv.lower > width) {
    Rational m = (iv.lower + iv.upper) / 2;
    Rational v = sp(m);
    if (v == 0) {
      iv.lower = iv.upper = m;
      break;
    }
    if (sgn(v) == sgn(sp(iv.lower))) iv.lower = m;
    else iv.upper = m;
  }
  return iv;
}

/// All distinct rational roots, ascending.
inline std::vector<Rational> rational_roots(const UPoly& u) {
  std::vector<Rational> out;
  if (u.is_zero()) throw std::domain_error("rational_roots of the zero polynomial");
  if (u.degree() <= 0) return out;
  UPoly p = squarefree_part(u);
  // Scale to a primitive integer polynomial; a rational root a/b in lowest
  // terms then has b dividing the leading coefficient.
  Integer den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
  Integer lead = abs(Rational(p.leading() * den).get_num());
  Rational width(Integer(1), 2 * lead * lead + 1);
  width.canonicalize();
  for (auto iv : real_roots(p)) {
    iv = refine(p, iv, width);
    Rational guess = iv.lower == iv.upper ? iv.lower : limit_denominator((iv.lower + iv.upper) / 2, lead);
    if (p(guess) == 0) out.push_back(guess);
  }
  return out;
}

/// True iff u(t) >= 0 for every real t.
inline bool nonneg_on_line(const UPoly& u) {
  if (u.is_zero()) return true;
  if (u.degree() % 2 == 1) return false;
  if (u.leading() < 0) return false;
  for (const auto& iv : real_roots(u)) {
    if (iv.multiplicity % 2 == 1) return false;
  }
  return true;
}

}  // namespace sfkit
