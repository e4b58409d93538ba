#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfkit/algebra/mpoly.hpp"
#include "sfkit/algebra/upoly.hpp"

namespace sfkit {

enum class FieldMode { complex, real };

inline std::string to_string(FieldMode m) { return m == FieldMode::real ? "real" : "complex"; }

/// Polynomial curve t -> (phi_1(t), ..., phi_m(t)) with a declared degree
/// bound. Coefficient c_i is the vector of t^i coefficients.
struct ParametricCurve {
  std::vector<UPoly> components;
  std::size_t degree_bound = 0;
  FieldMode mode = FieldMode::complex;

  ParametricCurve() = default;
  explicit ParametricCurve(std::vector<UPoly> comps, FieldMode m = FieldMode::complex)
      : components(std::move(comps)), mode(m) {
    degree_bound = effective_degree();
  }

  std::size_t dimension() const { return components.size(); }

  std::size_t effective_degree() const {
    int d = 0;
    for (const auto& c : components) d = std::max(d, c.degree());
    return static_cast<std::size_t>(d);
  }

  bool is_constant() const {
    return std::all_of(components.begin(), components.end(), [](const UPoly& c) { return c.degree() <= 0; });
  }

  std::vector<Rational> coefficient(std::size_t i) const {
    std::vector<Rational> v;
    v.reserve(components.size());
    for (const auto& c : components) v.push_back(c.coeff(i));
    return v;
  }

  std::vector<Rational> at(const Rational& t) const {
    std::vector<Rational> v;
    v.reserve(components.size());
    for (const auto& c : components) v.push_back(c(t));
    return v;
  }

  /// Reparametrize by t -> inner(t), componentwise.
  ParametricCurve compose(const UPoly& inner) const {
    ParametricCurve r = *this;
    for (auto& c : r.components) c = c.compose(inner);
    r.degree_bound = r.effective_degree();
    return r;
  }

  std::string to_string(const std::string& var = "t") const {
    std::string s = "(";
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (i) s += ", ";
      s += components[i].to_string(var);
    }
    return s + ")";
  }

  friend bool operator==(const ParametricCurve& a, const ParametricCurve& b) { return a.components == b.components; }
};

/// p(phi(t)) expanded in t.
inline UPoly substitute_curve(const MPoly& p, const ParametricCurve& curve) {
  if (curve.dimension() != p.ring()->size()) {
    throw std::invalid_argument("substitute_curve: curve has dimension " + std::to_string(curve.dimension()) +
                                ", polynomial ring has " + std::to_string(p.ring()->size()) + " variables");
  }
  std::vector<std::vector<UPoly>> powers(curve.dimension());
  auto power = [&](std::size_t var, std::uint32_t e) -> const UPoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(UPoly::constant(1));
    while (cache.size() <= e) cache.push_back(cache.back() * curve.components[var]);
    return cache[e];
  };
  UPoly sum;
  for (const auto& t : p.terms()) {
    UPoly v = UPoly::constant(t.coeff);
    for (std::size_t i = 0; i < t.exp.size(); ++i) {
      if (t.exp[i]) v *= power(i, t.exp[i]);
    }
    sum += v;
  }
  return sum;
}

}  // namespace sfkit
