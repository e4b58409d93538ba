#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sfkit/algebra.hpp"
#include "sfkit/elimination.hpp"
#include "sfkit/errors.hpp"

namespace sfkit {

/// Exact check that `a` lies on V(variety) and, in real mode, satisfies
/// every inequality h >= 0.
inline bool on_variety(const Ideal& variety, const std::vector<MPoly>& inequalities, const std::vector<Rational>& a,
                       FieldMode mode) {
  if (a.size() != variety.ring()->size()) throw std::invalid_argument("point has wrong arity");
  for (const auto& g : variety.generators())
    if (g.evaluate(a) != 0) return false;
  if (mode == FieldMode::real)
    for (const auto& h : inequalities)
      if (h.in_ring(variety.ring()).evaluate(a) < 0) return false;
  return true;
}

/// Coefficient conditions on b for the curve a + sum_j b_{i,j} t^j to lie on
/// V(variety). Unknown b_{i,j} (i = 1..m, j = 1..d) has index (i-1)*d + j-1.
struct AnsatzSystem {
  RingPtr variety_ring;
  std::vector<Rational> base;
  unsigned degree = 0;
  FieldMode mode = FieldMode::complex;
  RingPtr unknowns;
  std::vector<MPoly> equations;  // canonical t-power coefficients
  Ideal ideal;                   // equations, plus the sphere in real mode

  std::size_t index(std::size_t i, unsigned j) const { return i * degree + (j - 1); }

  ParametricCurve curve(const std::vector<Rational>& b) const {
    std::vector<UPoly> comps;
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::vector<Rational> c(degree + 1);
      c[0] = base[i];
      for (unsigned j = 1; j <= degree; ++j) c[j] = b[index(i, j)];
      comps.emplace_back(std::move(c));
    }
    ParametricCurve out(std::move(comps), mode);
    out.degree_bound = degree;
    return out;
  }
};

inline AnsatzSystem ansatz_system(const Ideal& variety, const std::vector<Rational>& a, unsigned d,
                                  FieldMode mode = FieldMode::complex) {
  const RingPtr& vr = variety.ring();
  if (!on_variety(variety, {}, a, FieldMode::complex)) throw PreconditionError("base point is not on the variety");
  std::size_t m = vr->size();
  std::string stem = "b";
  auto clashes = [&](const std::string& s) {
    for (const auto& n : vr->names())
      if (n.rfind(s, 0) == 0) return true;
    return false;
  };
  while (clashes(stem)) stem += "_";
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i)
    for (unsigned j = 1; j <= d; ++j) names.push_back(stem + std::to_string(i) + "_" + std::to_string(j));
  RingPtr unknowns = make_ring(names);
  auto with_t = names;
  with_t.push_back("t");
  RingPtr big = make_ring(with_t);
  std::size_t t = names.size();

  std::vector<MPoly> images;
  for (std::size_t i = 0; i < m; ++i) {
    MPoly img = MPoly::constant(big, a[i]);
    for (unsigned j = 1; j <= d; ++j) {
      Exponents e(big->size(), 0);
      e[i * d + j - 1] = 1;
      e[t] = j;
      img += MPoly::monomial(big, e);
    }
    images.push_back(std::move(img));
  }
  std::vector<MPoly> eqs;
  for (const auto& g : variety.generators()) {
    if (g.is_zero()) continue;
    auto coeffs = g.substitute(images).coefficients_in(t);
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      MPoly c = coeffs[k].in_ring(unknowns).canonical();
      if (std::find(eqs.begin(), eqs.end(), c) == eqs.end()) eqs.push_back(std::move(c));
    }
  }
  std::vector<MPoly> gens = eqs;
  if (mode == FieldMode::real) {
    MPoly sphere = MPoly::constant(unknowns, -1);
    for (std::size_t k = 0; k < names.size(); ++k) sphere += MPoly::variable(unknowns, k).pow(2);
    gens.push_back(sphere);
  }
  return AnsatzSystem{vr, a, d, mode, unknowns, std::move(eqs), Ideal(unknowns, std::move(gens))};
}

struct CurveCheck {
  bool equations = true;
  bool inequalities = true;
  bool through_base = true;
  bool degree = true;
  bool nonconstant = true;
  std::string failure;

  bool ok() const { return equations && inequalities && through_base && degree && nonconstant; }
};

/// Exact membership of the curve in X: every equation vanishes identically
/// along it, every inequality is nonnegative on the real line (real mode).
inline CurveCheck verify_curve(const Ideal& variety, const std::vector<MPoly>& inequalities, const ParametricCurve& curve,
                               const std::optional<std::vector<Rational>>& a, unsigned d, FieldMode mode) {
  CurveCheck r;
  auto fail = [&](bool& flag, const std::string& why) {
    flag = false;
    if (r.failure.empty()) r.failure = why;
  };
  for (const auto& g : variety.generators())
    if (!substitute_curve(g, curve).is_zero()) fail(r.equations, "equation " + g.to_string() + " does not vanish");
  if (mode == FieldMode::real)
    for (const auto& h : inequalities)
      if (!nonneg_on_line(substitute_curve(h.in_ring(variety.ring()), curve)))
        fail(r.inequalities, "inequality " + h.to_string() + " >= 0 fails");
  if (a && curve.at(0) != *a) fail(r.through_base, "curve does not pass through the base point at t = 0");
  if (curve.effective_degree() > d) fail(r.degree, "degree " + std::to_string(curve.effective_degree()) + " exceeds " + std::to_string(d));
  if (curve.is_constant()) fail(r.nonconstant, "curve is constant");
  return r;
}

namespace detail {

inline UPoly as_upoly(const MPoly& p, std::size_t var) {
  auto cs = p.coefficients_in(var);
  std::vector<Rational> c;
  for (const auto& q : cs) c.push_back(q.constant_value());
  return UPoly(std::move(c));
}

// Depth-first search for rational points of V(gens): zero-dimensional
// layers by rational roots of a univariate lex-basis element, positive
// dimension by fixing a free variable. `visit` returns true to stop.
class RationalPointSearch {
 public:
  using Visitor = std::function<bool(const std::vector<Rational>&)>;

  RationalPointSearch(std::size_t n, std::uint64_t seed, int budget) : assignment_(n), rng_(seed), budget_(budget) {}

  bool run(const std::vector<MPoly>& gens, const RingPtr& ring, const Visitor& visit) {
    std::vector<std::size_t> map(ring->size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
    return solve(gens, ring, map, visit);
  }

 private:
  bool solve(const std::vector<MPoly>& gens, const RingPtr& ring, const std::vector<std::size_t>& map,
             const Visitor& visit) {
    if (--budget_ < 0) return false;
    for (const auto& g : gens)
      if (g.is_constant() && !g.is_zero()) return false;
    if (ring->size() == 0) return visit(assignment_);
    RingPtr lex = with_order(ring, MonomialOrder::lex());
    Ideal I(lex, gens);
    auto free = independent_variables(I);
    if (!free) return false;
    if (!free->empty()) {
      std::size_t v = free->back();
      for (const auto& val : free_values())
        if (assign(gens, ring, map, v, val, visit)) return true;
      return false;
    }
    const auto& basis = I.basis(MonomialOrder::lex());
    for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
      std::size_t count = 0, var = 0;
      for (std::size_t k = 0; k < ring->size(); ++k)
        if (it->involves(k)) ++count, var = k;
      if (count != 1) continue;
      for (const auto& root : rational_roots(as_upoly(*it, var)))
        if (assign(gens, ring, map, var, root, visit)) return true;
      return false;
    }
    return false;
  }

  bool assign(const std::vector<MPoly>& gens, const RingPtr& ring, const std::vector<std::size_t>& map, std::size_t v,
              const Rational& val, const Visitor& visit) {
    std::vector<std::string> names;
    std::vector<std::size_t> sub_map;
    for (std::size_t k = 0; k < ring->size(); ++k)
      if (k != v) names.push_back(ring->name(k)), sub_map.push_back(map[k]);
    RingPtr sub = make_ring(names, ring->order());
    std::vector<MPoly> images;
    for (std::size_t k = 0, s = 0; k < ring->size(); ++k)
      images.push_back(k == v ? MPoly::constant(sub, val) : MPoly::variable(sub, s++));
    std::vector<MPoly> next;
    for (const auto& g : gens) {
      MPoly h = g.substitute(images);
      if (!h.is_zero()) next.push_back(std::move(h));
    }
    assignment_[map[v]] = val;
    return solve(next, sub, sub_map, visit);
  }

  std::vector<Rational> free_values() {
    std::vector<Rational> vals{0, 1, -1};
    std::uniform_int_distribution<long> num(-7, 7), den(1, 3);
    for (int i = 0; i < 2; ++i) vals.push_back(make_rational(num(rng_), den(rng_)));
    return vals;
  }

  std::vector<Rational> assignment_;
  std::mt19937_64 rng_;
  int budget_;
};

}  // namespace detail

struct SearchOptions {
  FieldMode mode = FieldMode::complex;
  std::vector<MPoly> inequalities;
  std::uint64_t seed = 1;
  int budget = 400;
};

/// Best-effort search for a nonconstant curve of degree <= d through a inside
/// X. Normalizes one unknown b_{i,j} to +-1 at a time (j ascending, then i)
/// and solves the rest over Q. Every returned curve passed verify_curve.
inline std::optional<ParametricCurve> find_curve(const Ideal& variety, const std::vector<Rational>& a, unsigned d,
                                                 const SearchOptions& opt = {}) {
  if (!on_variety(variety, opt.inequalities, a, opt.mode)) throw PreconditionError("base point is not in X");
  if (d == 0) return std::nullopt;
  AnsatzSystem sys = ansatz_system(variety, a, d, FieldMode::complex);
  std::optional<ParametricCurve> found;
  auto accept = [&](const ParametricCurve& c) {
    if (verify_curve(variety, opt.inequalities, c, a, d, opt.mode).ok()) {
      found = c;
      found->mode = opt.mode;
      return true;
    }
    return false;
  };
  auto visit = [&](const std::vector<Rational>& b) {
    ParametricCurve c = sys.curve(b);
    if (accept(c)) return true;
    // Over R an inequality may fail on half the line; t -> +-t^2 keeps one half.
    if (opt.mode == FieldMode::real && 2 * c.effective_degree() <= d) {
      for (long s : {1L, -1L})
        if (accept(c.compose(UPoly{0, 0, s}))) return true;
    }
    return false;
  };
  std::size_t m = a.size();
  for (unsigned j = 1; j <= d; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      for (long s : {1L, -1L}) {
        std::vector<MPoly> gens = sys.equations;
        gens.push_back(MPoly::variable(sys.unknowns, sys.index(i, j)) - Rational(s));
        detail::RationalPointSearch search(sys.unknowns->size(), opt.seed, opt.budget);
        if (search.run(gens, sys.unknowns, visit)) return found;
      }
    }
  }
  return std::nullopt;
}

/// Proof that no nonconstant curve of degree <= d-1 through a lies on
/// V(variety). Complex mode: every b_{i,j} vanishes on the ansatz ideal.
/// Real mode: the ansatz ideal plus the unit sphere has no complex point;
/// real solutions could be rescaled onto the sphere via t -> ct.
inline bool no_smaller_curve(const Ideal& variety, const std::vector<Rational>& a, unsigned d,
                             FieldMode mode = FieldMode::complex) {
  if (d < 2) throw PreconditionError("no_smaller_curve needs d >= 2");
  AnsatzSystem sys = ansatz_system(variety, a, d - 1, mode);
  if (mode == FieldMode::real) return sys.ideal.is_unit();
  for (std::size_t k = 0; k < sys.unknowns->size(); ++k)
    if (!vanishes_on(MPoly::variable(sys.unknowns, k), sys.ideal)) return false;
  return true;
}

}  // namespace sfkit
