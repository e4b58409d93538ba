#pragma once

#include <string>
#include <vector>

#include "sfkit/algebra.hpp"
#include "sfkit/elimination.hpp"
#include "sfkit/errors.hpp"

namespace sfkit {

/// Polynomial action of the additive group on X: x -> phi(g, x). The ring
/// holds the x variables followed by the group parameter. Both action axioms
/// are checked exactly, modulo I(X), on construction.
class OneParamAction {
 public:
  OneParamAction(Ideal domain, const std::string& group_var, std::vector<MPoly> action) : domain_(std::move(domain)) {
    const RingPtr& xr = domain_.ring();
    if (xr->index_of(group_var)) throw std::invalid_argument("group variable " + group_var + " clashes with a coordinate");
    if (action.size() != xr->size()) throw std::invalid_argument("action needs one polynomial per coordinate");
    auto names = xr->names();
    names.push_back(group_var);
    ring_ = make_ring(names);
    for (auto& p : action) action_.push_back(p.in_ring(ring_));
    check_axioms();
  }

  const RingPtr& ring() const { return ring_; }
  const Ideal& domain() const { return domain_; }
  const std::vector<MPoly>& polynomials() const { return action_; }
  std::size_t group_index() const { return ring_->size() - 1; }

  std::uint32_t group_degree() const {
    std::uint32_t d = 0;
    for (const auto& p : action_) d = std::max(d, p.degree_in(group_index()));
    return d;
  }

  /// phi(g, x0) as polynomials in g alone.
  std::vector<UPoly> orbit(const std::vector<Rational>& x0) const {
    std::vector<UPoly> out;
    for (const auto& p : action_) {
      auto cs = p.coefficients_in(group_index());
      std::vector<Rational> c;
      for (const auto& q : cs) {
        auto point = x0;
        point.push_back(0);
        c.push_back(q.evaluate(point));
      }
      out.emplace_back(std::move(c));
    }
    return out;
  }

 private:
  void check_axioms() const {
    std::size_t n = domain_.ring()->size();
    auto names = ring_->names();
    std::string h = fresh_name(*ring_, "h");
    names.push_back(h);
    RingPtr big = make_ring(names);
    std::vector<MPoly> dom;
    for (const auto& g : domain_.generators()) dom.push_back(g.in_ring(big));
    Ideal domain_big(big, dom);
    MPoly gv = MPoly::variable(big, n), hv = MPoly::variable(big, n + 1);

    std::vector<MPoly> at_zero(ring_->size()), inner(ring_->size()), shifted(ring_->size());
    for (std::size_t i = 0; i < n; ++i) at_zero[i] = MPoly::variable(big, i);
    at_zero[n] = MPoly(big);
    std::vector<MPoly> by_h = at_zero;
    by_h[n] = hv;
    for (std::size_t i = 0; i < n; ++i) inner[i] = action_[i].substitute(by_h);
    inner[n] = gv;
    for (std::size_t i = 0; i < n; ++i) shifted[i] = MPoly::variable(big, i);
    shifted[n] = gv + hv;

    for (std::size_t i = 0; i < n; ++i) {
      MPoly identity_gap = action_[i].substitute(at_zero) - MPoly::variable(big, i);
      if (!normal_form(identity_gap, domain_big).is_zero())
        throw PreconditionError("action axiom phi(0, x) = x fails in coordinate " + ring_->name(i));
      MPoly group_gap = action_[i].substitute(inner) - action_[i].substitute(shifted);
      if (!normal_form(group_gap, domain_big).is_zero())
        throw PreconditionError("action axiom phi(g, phi(h, x)) = phi(g + h, x) fails in coordinate " + ring_->name(i));
    }
  }

  Ideal domain_;
  RingPtr ring_;
  std::vector<MPoly> action_;
};

/// I(X) plus every positive g-power coefficient of phi_i(g, x) - x_i.
inline Ideal fixed_locus(const OneParamAction& A) {
  const RingPtr& xr = A.domain().ring();
  std::vector<MPoly> gens;
  if (!A.domain().is_zero()) gens = A.domain().generators();
  for (const auto& p : A.polynomials()) {
    auto cs = p.coefficients_in(A.group_index());
    for (std::size_t k = 1; k < cs.size(); ++k)
      if (!cs[k].is_zero()) gens.push_back(cs[k].in_ring(xr).canonical());
  }
  return Ideal(xr, std::move(gens));
}

}  // namespace sfkit
