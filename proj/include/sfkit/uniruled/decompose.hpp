#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sfkit/algebra.hpp"
#include "sfkit/errors.hpp"

namespace sfkit {

struct Decomposition {
  UPoly outer;
  UPoly inner;
};

namespace detail {

// Monic g of degree s with g(0) = 0 whose r-th power matches the top
// coefficients of u / lead(u), via the power series of V^(1/r) where
// u = lead * t^n * V(1/t).
inline UPoly approximate_root(const UPoly& u, int s) {
  int n = u.degree();
  Rational r = n / s;
  Rational alpha = 1 / r;
  std::vector<Rational> v(s + 1), w(s + 1);
  for (int i = 0; i <= s; ++i) v[i] = u.coeff(n - i) / u.leading();
  w[0] = 1;
  for (int k = 1; k <= s; ++k) {
    Rational acc = 0;
    for (int i = 1; i <= k; ++i) acc += ((alpha + 1) * i - k) * v[i] * w[k - i];
    w[k] = acc / k;
  }
  std::vector<Rational> g(s + 1);
  for (int k = 0; k < s; ++k) g[s - k] = w[k];
  return UPoly(std::move(g));
}

// Outer h with u = h o g, by the g-adic expansion of u; nullopt when some
// digit is not constant.
inline std::optional<UPoly> outer_for(const UPoly& u, const UPoly& g) {
  std::vector<Rational> h;
  UPoly q = u;
  while (!q.is_zero()) {
    auto [quot, rem] = q.divmod(g);
    if (rem.degree() > 0) return std::nullopt;
    h.push_back(rem.coeff(0));
    q = quot;
  }
  UPoly out(std::move(h));
  if (out.compose(g) != u) return std::nullopt;
  return out;
}

inline std::vector<int> divisors_descending(int n) {
  std::vector<int> out;
  for (int s = n; s >= 1; --s)
    if (n % s == 0) out.push_back(s);
  return out;
}

}  // namespace detail

/// u = outer o inner with inner monic, inner(0) = 0, of maximal degree below
/// deg u; (u, t) when u is indecomposable.
inline Decomposition decompose(const UPoly& u) {
  if (u.degree() < 1) throw PreconditionError("decompose: constant polynomial");
  int n = u.degree();
  for (int s : detail::divisors_descending(n)) {
    if (s == n || s == 1) continue;
    UPoly g = detail::approximate_root(u, s);
    if (auto h = detail::outer_for(u, g)) return {*h, g};
  }
  return {u, UPoly::identity()};
}

struct CurveDecomposition {
  ParametricCurve outer;
  UPoly inner;
};

/// Largest monic g with g(0) = 0 such that every component factors through
/// g. The candidate is derived from the highest-degree component; right
/// factors of a given degree are unique under this normalization.
inline CurveDecomposition common_inner(const ParametricCurve& curve) {
  if (curve.is_constant()) throw PreconditionError("common_inner: constant curve");
  int gcd_deg = 0;
  std::size_t top = 0;
  for (std::size_t i = 0; i < curve.dimension(); ++i) {
    int d = curve.components[i].degree();
    if (d <= 0) continue;
    gcd_deg = std::gcd(gcd_deg, d);
    if (d > curve.components[top].degree()) top = i;
  }
  for (int s : detail::divisors_descending(gcd_deg)) {
    UPoly g = s == 1 ? UPoly::identity() : detail::approximate_root(curve.components[top], s);
    std::vector<UPoly> outers;
    for (const auto& c : curve.components) {
      if (c.degree() <= 0) {
        outers.push_back(c);
        continue;
      }
      auto h = detail::outer_for(c, g);
      if (!h) break;
      outers.push_back(*h);
    }
    if (outers.size() == curve.dimension()) return {ParametricCurve(std::move(outers), curve.mode), g};
  }
  throw std::logic_error("common_inner: identity inner must always succeed");
}

/// eta with eta(R) = phi(R) and deg eta <= 2 deg(outer): the outer itself
/// when the common inner has odd degree, else outer(gamma + s^2) where gamma
/// is the exact minimum of the inner on R.
inline ParametricCurve cover_image_real(const ParametricCurve& curve) {
  if (curve.mode != FieldMode::real) throw PreconditionError("cover_image_real needs a real-mode curve");
  auto [outer, g] = common_inner(curve);
  outer.mode = FieldMode::real;
  if (g.degree() % 2 == 1) return outer;
  UPoly dg = g.derivative();
  auto crit = rational_roots(dg);
  if (crit.size() != real_roots(dg).size())
    throw PreconditionError("cover_image_real: inner polynomial has an irrational critical point");
  Rational gamma = g(crit.front());
  for (const auto& c : crit) gamma = std::min(gamma, g(c));
  ParametricCurve eta = outer.compose(UPoly(std::vector<Rational>{gamma, 0, 1}));
  eta.mode = FieldMode::real;
  return eta;
}

}  // namespace sfkit
