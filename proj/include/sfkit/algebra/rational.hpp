#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace sfkit {

using Integer = mpz_class;
/// Exact rational scalar; GMP keeps it reduced with a positive denominator.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline int sign(const Rational& q) { return sgn(q); }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Exact rational value of a finite double.
inline Rational from_double(double x) {
  Rational q(x);
  q.canonicalize();
  return q;
}

/// Closest rational to `x` whose denominator does not exceed `max_den`
/// (continued-fraction convergents plus the best semiconvergent).
inline Rational limit_denominator(const Rational& x, const Integer& max_den) {
  if (x.get_den() <= max_den) return x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = x.get_num(), d = x.get_den();
  while (true) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    Integer q2 = q0 + a * q1;
    if (q2 > max_den) break;
    Integer p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Integer r = n - a * d;
    n = d;
    d = r;
    if (d == 0) break;
  }
  Integer k = (max_den - q0) / q1;
  Rational bound1(p0 + k * p1, q0 + k * q1);
  Rational bound2(p1, q1);
  bound1.canonicalize();
  bound2.canonicalize();
  Rational e1 = abs(bound1 - x), e2 = abs(bound2 - x);
  return e2 <= e1 ? bound2 : bound1;
}

inline Rational limit_denominator(double x, long max_den) {
  return limit_denominator(from_double(x), Integer(max_den));
}

}  // namespace sfkit
