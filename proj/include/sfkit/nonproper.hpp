#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sfkit/algebra.hpp"
#include "sfkit/elimination.hpp"
#include "sfkit/errors.hpp"

namespace sfkit {

/// f = (f_1, ..., f_m) : X -> K^m with X = V(domain) in K^n.
struct PolyMap {
  RingPtr source;
  Ideal domain;
  std::vector<MPoly> components;
  FieldMode mode = FieldMode::complex;
  std::vector<std::string> image_names;

  PolyMap(Ideal domain_ideal, std::vector<MPoly> f, FieldMode field = FieldMode::complex,
          std::vector<std::string> image = {})
      : source(domain_ideal.ring()), domain(std::move(domain_ideal)), mode(field), image_names(std::move(image)) {
    if (f.empty()) throw std::invalid_argument("map needs at least one component");
    for (auto& c : f) components.push_back(c.in_ring(source));
    if (image_names.empty()) {
      for (std::size_t i = 1; i <= components.size(); ++i) {
        std::string name = "y" + std::to_string(i);
        if (source->index_of(name)) name = fresh_name(*source, "v" + std::to_string(i));
        image_names.push_back(name);
      }
    }
    if (image_names.size() != components.size()) throw std::invalid_argument("image names do not match map arity");
    for (const auto& n : image_names)
      if (source->index_of(n)) throw std::invalid_argument("image variable " + n + " clashes with a source variable");
    if (degree() < 1) throw std::invalid_argument("map is constant");
  }

  std::size_t source_dim() const { return source->size(); }
  std::size_t target_dim() const { return components.size(); }
  bool affine_domain() const { return domain.is_zero(); }

  /// max_i deg f_i, read from the given representatives.
  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (const auto& c : components) d = std::max(d, c.total_degree());
    return d;
  }

  /// Image ring over the y variables. Lex with y1 > y2 > ... so components
  /// print solved for the first coordinates.
  RingPtr image_ring() const { return make_ring(image_names, MonomialOrder::lex()); }

  RingPtr joined_ring() const {
    auto names = source->names();
    names.insert(names.end(), image_names.begin(), image_names.end());
    return make_ring(names);
  }
};

/// I(X) + (f_1 - y_1, ..., f_m - y_m) in the joined (x, y) ring.
inline Ideal graph_ideal(const PolyMap& f) {
  RingPtr joined = f.joined_ring();
  std::vector<MPoly> gens;
  if (!f.domain.is_zero())
    for (const auto& g : f.domain.generators()) gens.push_back(g.in_ring(joined));
  for (std::size_t i = 0; i < f.components.size(); ++i)
    gens.push_back(f.components[i].in_ring(joined) - MPoly::variable(joined, f.image_names[i]));
  return Ideal(joined, std::move(gens));
}

/// Ideal of the Zariski closure of f(X), in image_ring().
inline Ideal image_closure(const PolyMap& f) { return eliminate(graph_ideal(f), f.image_names, MonomialOrder::lex()); }

namespace detail {

// Elements of graph ∩ Q[x_j, y] with positive x_j-degree whose leading
// x_j-coefficient is nonzero on the image; ring is (x_j, y...) under lex.
inline std::vector<MPoly> coordinate_witnesses(const PolyMap& f, std::size_t j, const Ideal& graph, const Ideal& image) {
  std::vector<std::string> keep{f.source->name(j)};
  keep.insert(keep.end(), f.image_names.begin(), f.image_names.end());
  Ideal E = eliminate(graph, keep, MonomialOrder::lex());
  std::vector<MPoly> out;
  if (E.is_zero()) return out;
  RingPtr yring = image.ring();
  for (const auto& g : E.generators()) {
    if (g.degree_in(0) == 0) continue;
    MPoly lead = g.coefficients_in(0).back();
    if (!normal_form(lead.in_ring(yring), image).is_zero()) out.push_back(g);
  }
  return out;
}

}  // namespace detail

inline bool is_generically_finite(const PolyMap& f) {
  Ideal graph = graph_ideal(f);
  Ideal image = image_closure(f);
  for (std::size_t j = 0; j < f.source_dim(); ++j)
    if (detail::coordinate_witnesses(f, j, graph, image).empty()) return false;
  return true;
}

/// Phi_j: a witness of least x_j-degree, squarefree in x_j, canonical. Its
/// ring is (x_j, y_1, ..., y_m) under lex.
inline MPoly coordinate_min_poly(const PolyMap& f, std::size_t j) {
  if (j >= f.source_dim()) throw std::out_of_range("coordinate index");
  auto w = detail::coordinate_witnesses(f, j, graph_ideal(f), image_closure(f));
  if (w.empty()) throw PreconditionError("map is not generically finite: " + f.source->name(j) + " is free over the image");
  auto best = std::min_element(w.begin(), w.end(), [](const MPoly& a, const MPoly& b) { return a.degree_in(0) < b.degree_in(0); });
  return squarefree_part(*best, 0);
}

struct CoordinateData {
  std::size_t j;
  MPoly phi;
  MPoly lead;  // squarefree leading x_j-coefficient, in the image ring
  unsigned degree;
};

struct SfResult {
  Ideal image;
  std::vector<CoordinateData> coordinates;
  std::vector<Ideal> components;
  bool generically_finite = true;
  bool dominant = false;
  bool hypersurface_check = true;
  // Real mode: the components describe the complex set, a superset of the
  // real S_f.
  bool complex_superset = false;

  bool empty() const { return components.empty(); }
};

namespace detail {

// S_f components from per-coordinate leading coefficients: drop constants,
// coefficients vanishing on the image, empty and redundant components.
inline std::vector<Ideal> components_from_leads(const Ideal& image, const std::vector<MPoly>& leads) {
  std::vector<Ideal> comps;
  for (const auto& a : leads) {
    if (a.is_constant() || vanishes_on(a, image)) continue;
    Ideal c = image + Ideal(image.ring(), {a});
    if (c.is_unit()) continue;
    comps.push_back(std::move(c));
  }
  auto inside = [](const Ideal& small, const Ideal& big) {
    for (const auto& g : big.generators())
      if (!vanishes_on(g, small)) return false;
    return true;
  };
  std::vector<Ideal> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < comps.size() && !redundant; ++k) {
      if (k == i || !inside(comps[i], comps[k])) continue;
      // Equal sets: keep the earliest.
      redundant = !inside(comps[k], comps[i]) || k < i;
    }
    if (!redundant) out.push_back(comps[i]);
  }
  return out;
}

inline SfResult assemble(const PolyMap& f, Ideal image, std::vector<CoordinateData> coords) {
  SfResult r{std::move(image), std::move(coords), {}};
  r.dominant = r.image.is_zero();
  std::vector<MPoly> leads;
  for (const auto& c : r.coordinates) leads.push_back(c.lead);
  r.components = components_from_leads(r.image, leads);
  int dim_image = dimension(r.image);
  for (const auto& c : r.components) r.hypersurface_check = r.hypersurface_check && dimension(c) == dim_image - 1;
  r.complex_superset = f.mode == FieldMode::real;
  return r;
}

inline CoordinateData coordinate_data(std::size_t j, const MPoly& phi, const RingPtr& image_ring) {
  MPoly lead = phi.coefficients_in(0).back();
  return {j, phi, squarefree(lead.in_ring(image_ring)), phi.degree_in(0)};
}

}  // namespace detail

/// Non-properness set by the leading-coefficient criterion on Phi_j.
inline SfResult sf_compute(const PolyMap& f) {
  Ideal graph = graph_ideal(f);
  Ideal image = eliminate(graph, f.image_names, MonomialOrder::lex());
  std::vector<CoordinateData> coords;
  for (std::size_t j = 0; j < f.source_dim(); ++j) {
    auto w = detail::coordinate_witnesses(f, j, graph, image);
    if (w.empty())
      throw PreconditionError("map is not generically finite: " + f.source->name(j) + " is free over the image");
    auto best =
        std::min_element(w.begin(), w.end(), [](const MPoly& a, const MPoly& b) { return a.degree_in(0) < b.degree_in(0); });
    coords.push_back(detail::coordinate_data(j, squarefree_part(*best, 0), image.ring()));
  }
  return detail::assemble(f, std::move(image), std::move(coords));
}

/// Alternate route to Phi_j by iterated Sylvester resultants over the graph
/// generators; used to cross-check sf_compute. The image ideal is still
/// taken from elimination.
inline SfResult sf_compute_resultant(const PolyMap& f) {
  Ideal graph = graph_ideal(f);
  Ideal image = eliminate(graph, f.image_names, MonomialOrder::lex());
  RingPtr joined = graph.ring();
  std::vector<CoordinateData> coords;
  for (std::size_t j = 0; j < f.source_dim(); ++j) {
    std::vector<MPoly> polys = graph.generators();
    for (std::size_t k = 0; k < f.source_dim(); ++k) {
      if (k == j) continue;
      std::vector<MPoly> with, without;
      for (auto& p : polys) (p.involves(k) ? with : without).push_back(std::move(p));
      if (!with.empty()) {
        auto pivot = std::min_element(with.begin(), with.end(),
                                      [&](const MPoly& a, const MPoly& b) { return a.degree_in(k) < b.degree_in(k); });
        for (auto it = with.begin(); it != with.end(); ++it) {
          if (it == pivot) continue;
          MPoly r = resultant(*pivot, *it, k);
          if (!r.is_zero()) without.push_back(r.canonical());
        }
      }
      polys = std::move(without);
    }
    MPoly phi(joined);
    for (const auto& p : polys)
      if (p.involves(j)) phi = gcd(phi, p);
    if (phi.is_zero() || !phi.involves(j))
      throw PreconditionError("resultant elimination lost " + f.source->name(j));
    phi = exact_divide(phi, content(phi, j));
    std::vector<std::string> names{f.source->name(j)};
    names.insert(names.end(), f.image_names.begin(), f.image_names.end());
    MPoly local = squarefree_part(phi.in_ring(make_ring(names, MonomialOrder::lex())), 0);
    coords.push_back(detail::coordinate_data(j, local, image.ring()));
  }
  return detail::assemble(f, std::move(image), std::move(coords));
}

/// y is in the image closure and on no S_f component.
inline bool is_proper_at(const PolyMap& f, const SfResult& sf, const std::vector<Rational>& y) {
  if (y.size() != f.target_dim()) throw std::invalid_argument("point has wrong arity");
  auto vanish = [&](const Ideal& I) {
    if (I.is_zero()) return true;
    for (const auto& g : I.generators())
      if (g.evaluate(y) != 0) return false;
    return true;
  };
  if (!vanish(sf.image)) return false;
  for (const auto& c : sf.components)
    if (vanish(c)) return false;
  return true;
}

inline bool is_proper_at(const PolyMap& f, const std::vector<Rational>& y) { return is_proper_at(f, sf_compute(f), y); }

enum class BoundMode { cn, wn, multc, cn1, multc1 };

inline std::string to_string(BoundMode m) {
  switch (m) {
    case BoundMode::cn: return "cn";
    case BoundMode::wn: return "wn";
    case BoundMode::multc: return "multc";
    case BoundMode::cn1: return "cn1";
    case BoundMode::multc1: return "multc1";
  }
  return "?";
}

inline BoundMode parse_bound_mode(const std::string& s) {
  for (auto m : {BoundMode::cn, BoundMode::wn, BoundMode::multc, BoundMode::cn1, BoundMode::multc1})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown bound mode " + s);
}

/// Upper bound on the uniruledness degree of S_f from the degree data of f.
/// `d1` is the uniruledness degree of X (multc, multc1).
inline std::uint64_t theorem_bound(const PolyMap& f, BoundMode mode, std::optional<std::uint64_t> d1 = {}) {
  std::uint64_t d = f.degree();
  switch (mode) {
    case BoundMode::cn:
    case BoundMode::cn1:
      if (!f.affine_domain()) throw PreconditionError(to_string(mode) + " bound needs X to be affine space");
      return d - 1;
    case BoundMode::wn: {
      if (!f.affine_domain()) throw PreconditionError("wn bound needs X to be affine space");
      std::uint64_t best = UINT64_MAX;
      for (std::size_t j = 0; j < f.source_dim(); ++j) {
        std::uint64_t m = 0;
        for (const auto& c : f.components) m = std::max<std::uint64_t>(m, c.degree_in(j));
        best = std::min(best, m);
      }
      return best;
    }
    case BoundMode::multc:
    case BoundMode::multc1:
      if (!d1) throw PreconditionError(to_string(mode) + " bound needs the uniruledness degree of X");
      return (mode == BoundMode::multc1 ? 2 : 1) * *d1 * d;
  }
  return 0;
}

}  // namespace sfkit
