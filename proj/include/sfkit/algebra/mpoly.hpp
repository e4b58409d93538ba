#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sfkit/algebra/rational.hpp"
#include "sfkit/algebra/ring.hpp"

namespace sfkit {

/// Sparse multivariate polynomial over Q. Terms are kept sorted in
/// descending order under the ring's monomial order, with no zero
/// coefficients; the zero polynomial has no terms.
class MPoly {
 public:
  struct Term {
    Exponents exp;
    Rational coeff;
  };

  MPoly() = default;
  explicit MPoly(RingPtr ring) : ring_(std::move(ring)) {}

  MPoly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) { normalize(); }

  static MPoly constant(RingPtr ring, const Rational& c) {
    MPoly p(ring);
    if (c != 0) p.terms_.push_back({Exponents(p.ring_->size(), 0), c});
    return p;
  }

  static MPoly variable(RingPtr ring, std::size_t index) {
    Exponents e(ring->size(), 0);
    e.at(index) = 1;
    MPoly p(ring);
    p.terms_.push_back({std::move(e), Rational(1)});
    return p;
  }

  static MPoly variable(RingPtr ring, const std::string& name) {
    auto idx = ring->require_index(name);
    return variable(std::move(ring), idx);
  }

  static MPoly monomial(RingPtr ring, Exponents e, const Rational& c = 1) {
    MPoly p(ring);
    if (c != 0) p.terms_.push_back({std::move(e), c});
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && sfkit::total_degree(terms_[0].exp) == 0); }
  Rational constant_value() const {
    if (terms_.empty()) return 0;
    const auto& last = terms_.back();
    return sfkit::total_degree(last.exp) == 0 ? last.coeff : Rational(0);
  }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
  }
  const Exponents& leading_monomial() const { return leading_term().exp; }
  const Rational& leading_coeff() const { return leading_term().coeff; }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, sfkit::total_degree(t.exp));
    return d;
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exp[var]);
    return d;
  }

  std::vector<std::uint32_t> degrees() const {
    std::vector<std::uint32_t> d(ring_ ? ring_->size() : 0, 0);
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::max(d[i], t.exp[i]);
    return d;
  }

  bool involves(std::size_t var) const {
    return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.exp[var] != 0; });
  }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) { return merge(a, b, Rational(1)); }
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return merge(a, b, Rational(-1)); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return MPoly(a.ring_);
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        Exponents e(ta.exp.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ta.exp[i] + tb.exp[i];
        prod.push_back({std::move(e), ta.coeff * tb.coeff});
      }
    }
    return MPoly(a.ring_, std::move(prod));
  }

  friend MPoly operator*(const MPoly& a, const Rational& c) {
    if (c == 0) return MPoly(a.ring_);
    MPoly r = a;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }
  friend MPoly operator*(const Rational& c, const MPoly& a) { return a * c; }

  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  /// c * x^e * this, without re-sorting (monomial multiplication preserves
  /// any monomial order).
  MPoly mul_term(const Exponents& e, const Rational& c) const {
    MPoly r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Exponents ne(t.exp.size());
      for (std::size_t i = 0; i < ne.size(); ++i) ne[i] = t.exp[i] + e[i];
      r.terms_.push_back({std::move(ne), t.coeff * c});
    }
    return r;
  }

  MPoly pow(unsigned n) const {
    MPoly result = constant(ring_, 1), base = *this;
    while (n) {
      if (n & 1u) result = result * base;
      n >>= 1u;
      if (n) base = base * base;
    }
    return result;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (!same_ring(a.ring_, b.ring_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != ring_->size()) {
      throw std::invalid_argument("evaluate: point has " + std::to_string(point.size()) + " coordinates, ring has " +
                                  std::to_string(ring_->size()));
    }
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational v = t.coeff;
      for (std::size_t i = 0; i < point.size(); ++i) {
        if (t.exp[i] == 0) continue;
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), t.exp[i]);
        mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), t.exp[i]);
        v *= pw;
      }
      sum += v;
    }
    return sum;
  }

  MPoly derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.exp[var] == 0) continue;
      Term d = t;
      d.coeff *= t.exp[var];
      d.exp[var] -= 1;
      out.push_back(std::move(d));
    }
    return MPoly(ring_, std::move(out));
  }

  /// Coefficients of this polynomial viewed in ring[other vars][var];
  /// entry k multiplies var^k and does not involve var.
  std::vector<MPoly> coefficients_in(std::size_t var) const {
    std::vector<MPoly> out(is_zero() ? 0 : degree_in(var) + 1, MPoly(ring_));
    std::vector<std::vector<Term>> buckets(out.size());
    for (const auto& t : terms_) {
      Term s = t;
      s.exp[var] = 0;
      buckets[t.exp[var]].push_back(std::move(s));
    }
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = MPoly(ring_, std::move(buckets[k]));
    return out;
  }

  /// Ring homomorphism: variable i is sent to images[i]; the result lives in
  /// the images' ring.
  MPoly substitute(const std::vector<MPoly>& images) const {
    if (images.size() != ring_->size()) throw std::invalid_argument("substitute: wrong number of images");
    if (images.empty()) return *this;
    const RingPtr& target = images.front().ring_;
    std::vector<std::vector<MPoly>> powers(images.size());
    auto power = [&](std::size_t var, std::uint32_t e) -> const MPoly& {
      auto& cache = powers[var];
      if (cache.empty()) cache.push_back(constant(target, 1));
      while (cache.size() <= e) cache.push_back(cache.back() * images[var]);
      return cache[e];
    };
    MPoly sum(target);
    for (const auto& t : terms_) {
      MPoly v = constant(target, t.coeff);
      for (std::size_t i = 0; i < t.exp.size(); ++i) {
        if (t.exp[i]) v = v * power(i, t.exp[i]);
      }
      sum += v;
    }
    return sum;
  }

  /// Re-express in `target`, matching variables by name. Throws if a
  /// variable that occurs here is absent from `target`.
  MPoly in_ring(const RingPtr& target) const {
    if (same_ring(ring_, target)) {
      MPoly r = *this;
      r.ring_ = target;
      return r;
    }
    std::vector<std::optional<std::size_t>> map(ring_->size());
    for (std::size_t i = 0; i < ring_->size(); ++i) map[i] = target->index_of(ring_->name(i));
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Exponents e(target->size(), 0);
      for (std::size_t i = 0; i < t.exp.size(); ++i) {
        if (t.exp[i] == 0) continue;
        if (!map[i]) throw std::invalid_argument("variable " + ring_->name(i) + " missing from target ring");
        e[*map[i]] = t.exp[i];
      }
      out.push_back({std::move(e), t.coeff});
    }
    return MPoly(target, std::move(out));
  }

  MPoly monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading_coeff());
  }

  /// Primitive over Z with positive leading coefficient under the ring's
  /// order. Two polynomials generate the same principal ideal iff their
  /// canonical forms are equal.
  MPoly canonical() const {
    if (is_zero()) return *this;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& t : terms_) {
      den_lcm = lcm(den_lcm, t.coeff.get_den());
      num_gcd = gcd(num_gcd, t.coeff.get_num());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (leading_coeff() < 0) scale = -scale;
    return *this * scale;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      Rational c = t.coeff;
      bool neg = c < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      bool has_vars = sfkit::total_degree(t.exp) != 0;
      bool need_star = false;
      if (!has_vars || c != 1) {
        os << c.get_str();
        need_star = true;
      }
      for (std::size_t i = 0; i < t.exp.size(); ++i) {
        if (t.exp[i] == 0) continue;
        if (need_star) os << "*";
        os << ring_->name(i);
        if (t.exp[i] != 1) os << "^" << t.exp[i];
        need_star = true;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

 private:
  static void check_same(const MPoly& a, const MPoly& b) {
    if (!a.ring_ || !b.ring_ || !same_ring(a.ring_, b.ring_)) {
      throw std::invalid_argument("polynomials live in different rings");
    }
  }

  static MPoly merge(const MPoly& a, const MPoly& b, const Rational& sb) {
    check_same(a, b);
    MPoly r(a.ring_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    const Ring& ring = *a.ring_;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = ring.compare(a.terms_[i].exp, b.terms_[j].exp);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back({b.terms_[j].exp, b.terms_[j].coeff * sb});
        ++j;
      } else {
        Rational s = a.terms_[i].coeff + b.terms_[j].coeff * sb;
        if (s != 0) r.terms_.push_back({a.terms_[i].exp, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    if (!ring_) throw std::invalid_argument("polynomial without ring");
    for (const auto& t : terms_) {
      if (t.exp.size() != ring_->size()) throw std::invalid_argument("exponent vector arity mismatch");
    }
    const Ring& ring = *ring_;
    std::sort(terms_.begin(), terms_.end(), [&](const Term& x, const Term& y) { return ring.compare(x.exp, y.exp) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().exp == t.exp) {
        out.back().coeff += t.coeff;
      } else {
        if (!out.empty() && out.back().coeff == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    terms_ = std::move(out);
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline MPoly operator+(const MPoly& a, const Rational& c) { return a + MPoly::constant(a.ring(), c); }
inline MPoly operator-(const MPoly& a, const Rational& c) { return a - MPoly::constant(a.ring(), c); }

/// (total degree, per-variable degrees); the zero polynomial reports zeros.
struct Degrees {
  std::uint64_t total = 0;
  std::vector<std::uint32_t> per_var;
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

inline Degrees degrees(const MPoly& p) { return {p.total_degree(), p.degrees()}; }

inline Rational evaluate(const MPoly& p, std::span<const Rational> point) { return p.evaluate(point); }

/// Exact quotient p / q; throws std::domain_error when q does not divide p.
inline MPoly exact_divide(const MPoly& p, const MPoly& q) {
  if (q.is_zero()) throw std::domain_error("division by zero polynomial");
  MPoly rem = p, quot(p.ring());
  const auto& lq = q.leading_term();
  std::vector<MPoly::Term> qt;
  while (!rem.is_zero()) {
    const auto& lr = rem.leading_term();
    if (!divides(lq.exp, lr.exp)) throw std::domain_error("polynomial division is not exact");
    Exponents e(lr.exp.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = lr.exp[i] - lq.exp[i];
    Rational c = lr.coeff / lq.coeff;
    qt.push_back({e, c});
    rem = rem - q.mul_term(e, c);
  }
  return MPoly(p.ring(), std::move(qt));
}

}  // namespace sfkit
