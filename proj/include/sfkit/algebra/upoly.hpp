#pragma once

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sfkit/algebra/rational.hpp"

namespace sfkit {

/// Dense univariate polynomial over Q, coefficients stored from the
/// constant term upward with no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static UPoly constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }
  static UPoly monomial(const Rational& c, std::size_t deg) {
    std::vector<Rational> v(deg + 1, Rational(0));
    v[deg] = c;
    return UPoly(std::move(v));
  }
  static UPoly identity() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const {
    if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  Rational operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  template <class T>
  T eval(const T& t) const {
    T acc = T(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + T(to_double(*it));
    return acc;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const Rational& s) {
    if (s == 0) return {};
    UPoly r = a;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  friend UPoly operator*(const Rational& s, const UPoly& a) { return a * s; }
  UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
  UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly pow(unsigned n) const {
    UPoly r = constant(1), b = *this;
    while (n) {
      if (n & 1u) r *= b;
      n >>= 1u;
      if (n) b *= b;
    }
    return r;
  }

  /// this(inner(t)).
  UPoly compose(const UPoly& inner) const {
    UPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return UPoly(std::move(r));
  }

  UPoly monic() const { return is_zero() ? *this : *this * (Rational(1) / leading()); }

  /// (quotient, remainder) of Euclidean division.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    std::vector<Rational> rem = c_;
    int dd = d.degree();
    if (degree() < dd) return {UPoly(), *this};
    std::vector<Rational> q(c_.size() - d.c_.size() + 1, Rational(0));
    Rational inv = Rational(1) / d.leading();
    for (int k = degree() - dd; k >= 0; --k) {
      Rational f = rem[k + dd] * inv;
      q[k] = f;
      if (f == 0) continue;
      for (int i = 0; i <= dd; ++i) rem[k + i] -= f * d.c_[i];
    }
    rem.resize(dd);
    return {UPoly(std::move(q)), UPoly(std::move(rem))};
  }

  friend UPoly operator%(const UPoly& a, const UPoly& b) { return a.divmod(b).second; }

  std::string to_string(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      Rational c = c_[k];
      if (c == 0) continue;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      if (k == 0 || c != 1) {
        os << c.get_str();
        if (k) os << "*";
      }
      if (k) os << var << (k > 1 ? "^" + std::to_string(k) : "");
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// u / gcd(u, u'), monic.
inline UPoly squarefree_part(const UPoly& u) {
  if (u.degree() <= 0) return u.is_zero() ? u : UPoly::constant(1);
  return u.divmod(gcd(u, u.derivative())).first.monic();
}

/// Yun's algorithm: returns s_1, s_2, ... with u = lc * prod s_i^i, each
/// s_i monic squarefree and pairwise coprime.
inline std::vector<UPoly> squarefree_decomposition(const UPoly& u) {
  std::vector<UPoly> out;
  if (u.degree() <= 0) return out;
  UPoly a0 = gcd(u, u.derivative());
  UPoly b = u.divmod(a0).first;
  UPoly c = u.derivative().divmod(a0).first;
  UPoly d = c - b.derivative();
  while (b.degree() > 0) {
    UPoly a = gcd(b, d);
    out.push_back(a.monic());
    b = b.divmod(a).first;
    c = d.divmod(a).first;
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

}  // namespace sfkit
