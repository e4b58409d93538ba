#pragma once

#include <cctype>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "sfkit/algebra/mpoly.hpp"
#include "sfkit/errors.hpp"

namespace sfkit {

namespace detail {

// Grammar (`^` binds tightest, then unary minus, then * and /, then + and -):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= '-'? integer | '(' '-'? integer ')'
//   primary := number | identifier | '(' expr ')'
// Numbers are integers or decimals and are read exactly.
template <class Semantics>
class ExpressionParser {
 public:
  using Value = typename Semantics::Value;

  ExpressionParser(std::string_view text, Semantics& sem) : text_(text), sem_(sem) {}

  Value parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Value expr() {
    Value v = term();
    while (true) {
      if (accept('+')) v = sem_.add(v, term());
      else if (accept('-')) v = sem_.sub(v, term());
      else return v;
    }
  }

  Value term() {
    Value v = unary();
    while (true) {
      if (accept('*')) {
        v = sem_.mul(v, unary());
      } else if (peek() == '/') {
        std::size_t at = pos_++;
        v = sem_.div(v, unary(), at);
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept('-')) return sem_.neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = primary();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      std::size_t at = pos_++;
      long e = exponent();
      return sem_.pow(base, e, at);
    }
    return base;
  }

  long exponent() {
    bool paren = accept('(');
    bool neg = accept('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", start);
    if (pos_ - start > 9) throw ParseError("exponent too large", start);
    long e = std::stol(std::string(text_.substr(start, pos_ - start)));
    if (paren && !accept(')')) throw ParseError("expected ')'", pos_);
    return neg ? -e : e;
  }

  Value primary() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      return sem_.variable(std::string(text_.substr(start, pos_ - start)), start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Value number() {
    std::size_t start = pos_;
    std::string digits;
    std::size_t frac = 0;
    bool dot = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (dot) ++frac;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    Integer num(digits);
    Integer den = 1;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(num, den);
    q.canonicalize();
    return sem_.constant(q);
  }

  std::string_view text_;
  Semantics& sem_;
  std::size_t pos_ = 0;
};

struct PolySemantics {
  using Value = MPoly;
  RingPtr ring;

  Value constant(const Rational& q) { return MPoly::constant(ring, q); }
  Value variable(const std::string& name, std::size_t at) {
    auto idx = ring->index_of(name);
    if (!idx) throw ParseError("unknown variable '" + name + "'", at);
    return MPoly::variable(ring, *idx);
  }
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value mul(const Value& a, const Value& b) { return a * b; }
  Value neg(const Value& a) { return -a; }
  Value div(const Value& a, const Value& b, std::size_t at) {
    if (!b.is_constant()) throw ParseError("division by a non-constant", at);
    if (b.is_zero()) throw ParseError("division by zero", at);
    return a * (Rational(1) / b.constant_value());
  }
  Value pow(const Value& a, long e, std::size_t at) {
    if (e < 0) throw ParseError("negative exponent", at);
    return a.pow(static_cast<unsigned>(e));
  }
};

struct RationalSemantics {
  using Value = Rational;
  const std::vector<std::string>& names;
  const std::vector<Rational>& values;

  Value constant(const Rational& q) { return q; }
  Value variable(const std::string& name, std::size_t at) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return values[i];
    }
    throw ParseError("unknown variable '" + name + "'", at);
  }
  Value add(const Value& a, const Value& b) { return a + b; }
  Value sub(const Value& a, const Value& b) { return a - b; }
  Value mul(const Value& a, const Value& b) { return a * b; }
  Value neg(const Value& a) { return -a; }
  Value div(const Value& a, const Value& b, std::size_t at) {
    if (b == 0) throw ParseError("division by zero", at);
    return a / b;
  }
  Value pow(const Value& a, long e, std::size_t at) {
    if (e < 0 && a == 0) throw ParseError("zero to a negative power", at);
    Rational r;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), a.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), a.get_den_mpz_t(), k);
    r.canonicalize();
    return e < 0 ? Rational(1) / r : r;
  }
};

}  // namespace detail

/// Parses `text` as a polynomial in `ring`.
inline MPoly parse_poly(std::string_view text, const RingPtr& ring) {
  detail::PolySemantics sem{ring};
  return detail::ExpressionParser<detail::PolySemantics>(text, sem).parse();
}

inline MPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  return parse_poly(text, make_ring(vars));
}

/// Evaluates a rational expression (the polynomial grammar plus division
/// and negative exponents) exactly at the given variable values.
inline Rational evaluate_expression(std::string_view text, const std::vector<std::string>& names,
                                    const std::vector<Rational>& values) {
  detail::RationalSemantics sem{names, values};
  return detail::ExpressionParser<detail::RationalSemantics>(text, sem).parse();
}

}  // namespace sfkit
