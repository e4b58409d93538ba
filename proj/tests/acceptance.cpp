// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "sfkit/cli.hpp"
#include "test_support.hpp"

using namespace sfkit;
using cli::json;

namespace {

struct Failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failed(what);
}

PolyMap make_map(std::vector<std::string> vars, std::vector<std::string> f, std::vector<std::string> eqs = {}) {
  auto r = make_ring(vars);
  std::vector<MPoly> dom, comps;
  for (const auto& e : eqs) dom.push_back(parse_poly(e, r));
  for (const auto& c : f) comps.push_back(parse_poly(c, r));
  return PolyMap(Ideal(r, dom), comps);
}

std::vector<Rational> pt(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::vector<std::string> generators(const Ideal& I) {
  std::vector<std::string> out;
  for (const auto& g : I.basis(MonomialOrder::lex())) out.push_back(g.to_string());
  return out;
}

// Corpus problems that carry a map and parse.
std::vector<std::pair<std::string, cli::Problem>> corpus_maps() {
  std::vector<std::pair<std::string, cli::Problem>> out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(SFKIT_CORPUS_DIR)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream is(f);
    try {
      auto pb = cli::parse_problem(json::parse(is));
      if (!pb.has_map()) continue;
      if (!is_generically_finite(pb.poly_map())) continue;
      out.emplace_back(f.stem().string(), pb);
    } catch (const std::exception&) {
    }
  }
  return out;
}

bool same_zero_set(const Ideal& a, const Ideal& b) {
  for (const auto& g : a.generators())
    if (!vanishes_on(g.in_ring(b.ring()), b)) return false;
  for (const auto& g : b.generators())
    if (!vanishes_on(g.in_ring(a.ring()), a)) return false;
  return true;
}

PathSpec path(std::vector<std::string> coords) { return {PathKind::radial, std::move(coords), PathSpec::geometric(1, 20)}; }

void criterion1() {
  require(generators(sf_compute(make_map({"x1", "x2"}, {"x1", "x1*x2"})).components.at(0)) == std::vector<std::string>{"y1"},
          "(x1, x1 x2)");
  auto three = sf_compute(make_map({"x1", "x2", "x3"}, {"x1", "x1*x2", "x1*x3"}));
  require(three.components.size() == 1 && generators(three.components[0]) == std::vector<std::string>{"y1"},
          "(x1, x1 x2, x1 x3)");
  for (int d : {2, 3}) {
    auto sf = sf_compute(make_map({"x", "y"}, {"x + (x*y)^" + std::to_string(d), "x*y"}));
    require(sf.components.size() == 1 &&
                generators(sf.components[0]) == std::vector<std::string>{"y1 - y2^" + std::to_string(d)},
            "cusp d = " + std::to_string(d));
  }
  auto cyl = sf_compute(make_map({"x1", "x2", "x3"}, {"x2", "x3"}, {"x1*x2 - 1"}));
  require(cyl.components.size() == 1 && generators(cyl.components[0]) == std::vector<std::string>{"y1"},
          "{x1 x2 = 1}");
}

void criterion2() {
  for (const auto& m : std::vector<std::vector<std::string>>{
           {"x", "y"}, {"x + y", "x - y"}, {"2*x + 3*y", "x + 2*y"}, {"y", "-x + 7"}, {"x^3 + x", "y"}}) {
    json p = {{"format", 1}, {"vars", {"x", "y"}}, {"map", m}};
    auto o = cli::run("sf", p.dump(), {});
    require(o.exit == 0, "exit " + std::to_string(o.exit) + " for " + p["map"].dump());
    require(o.report["result"]["components"].empty(), "components for " + p["map"].dump());
  }
}

void criterion3() {
  std::size_t seen = 0;
  for (const auto& [name, pb] : corpus_maps()) {
    if (pb.field != FieldMode::complex) continue;
    auto f = pb.poly_map();
    auto sf = sf_compute(f);
    if (sf.empty()) continue;
    ++seen;
    require(sf.hypersurface_check, name + ": flag");
    for (const auto& c : sf.components) {
      const auto& b = c.basis();
      require(b.size() == 1 && !b[0].is_constant(), name + ": component not principal");
      require(dimension(c) == static_cast<int>(f.target_dim()) - 1, name + ": dimension");
    }
  }
  require(seen >= 5, "too few nonempty corpus maps");
}

void criterion4() {
  for (int d : {2, 3}) {
    auto f = make_map({"x", "y"}, {"x + (x*y)^" + std::to_string(d), "x*y"});
    auto sf = sf_compute(f);
    std::vector<std::vector<Rational>> samples;
    for (long s : {0, 1, -2}) {
      Rational p = 1;
      for (int i = 0; i < d; ++i) p *= s;
      samples.push_back({p, Rational(s)});
    }
    auto cd = certified_degree(sf.components[0], {}, samples, FieldMode::complex, 2 * d);
    require(cd && *cd == static_cast<unsigned>(d), "certified degree for d = " + std::to_string(d));
    require(theorem_bound(f, BoundMode::wn) == static_cast<std::uint64_t>(d), "wn bound");
    require(theorem_bound(f, BoundMode::cn) == static_cast<std::uint64_t>(2 * d - 1), "cn bound");
  }
  auto a = make_map({"x1", "x2"}, {"x1", "x1*x2"});
  auto cd = certified_degree(sf_compute(a).components[0], {}, {pt({0, 0}), pt({0, 3}), pt({0, -1})}, FieldMode::complex, 2);
  require(cd == 1u && theorem_bound(a, BoundMode::cn) == 1 && a.degree() == 2, "(x1, x1 x2)");
  // Every corpus map: certified degree within every applicable bound.
  for (const auto& [name, pb] : corpus_maps()) {
    std::ifstream is(std::string(SFKIT_CORPUS_DIR) + "/" + name + ".json");
    std::stringstream ss;
    ss << is.rdbuf();
    auto o = cli::run("certify", ss.str(), {});
    if (o.report["result"]["certificates"].empty()) continue;
    require(o.exit == 0, name + ": certify exit " + std::to_string(o.exit));
    require(o.report["checks"]["within_bounds"].get<bool>(), name + ": certified degree exceeds a bound");
  }
}

void criterion5() {
  for (int d : {2, 3}) {
    auto sf = sf_compute(make_map({"x", "y"}, {"x + (x*y)^" + std::to_string(d), "x*y"}));
    for (long s : {0, 2, -3}) {
      Rational p = 1;
      for (int i = 0; i < d; ++i) p *= s;
      require(no_smaller_curve(sf.components[0], {p, Rational(s)}, d), "d = " + std::to_string(d) + " at y2 = " + std::to_string(s));
    }
  }
}

void criterion6() {
  struct Case {
    PolyMap f;
    std::vector<Rational> y;
    std::vector<std::string> coords;
  };
  std::vector<Case> cases{
      {make_map({"x1", "x2"}, {"x1", "x1*x2"}), pt({0, 3}), {"1/k^2", "3*k^2"}},
      {make_map({"x1", "x2", "x3"}, {"x1", "x1*x2", "x1*x3"}), pt({0, 1, -2}), {"1/k^2", "k^2", "-2*k^2"}},
      {make_map({"x", "y"}, {"x + (x*y)^2", "x*y"}), pt({4, 2}), {"1/k^2", "2*k^2"}},
      {make_map({"x", "y"}, {"x + (x*y)^3", "x*y"}), pt({8, 2}), {"1/k^2", "2*k^2"}},
  };
  for (const auto& c : cases) {
    auto trace = track(c.f, c.y, path(c.coords));
    require(trace.status == TraceStatus::converged, "status " + to_string(trace.status));
    require(trace.steps.back().change && *trace.steps.back().change < 1e-8, "final change");
    auto v = rationalize_verify(trace, sf_compute(c.f));
    require(v.decomposition.outer.effective_degree() <= c.f.degree() - 1, "outer degree");
  }
  bool refused = false;
  try {
    track(make_map({"x", "y"}, {"x", "y"}), pt({0, 0}), path({"k", "k"}));
  } catch (const PreconditionError&) {
    refused = true;
  }
  require(refused, "identity map was tracked");
}

void criterion7() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> deg(1, 4);
  std::uniform_int_distribution<long> coef(-5, 5);
  auto random_of_degree = [&](int d) {
    std::vector<Rational> c(d + 1);
    for (auto& x : c) x = coef(rng);
    while (c[d] == 0) c[d] = coef(rng);
    return UPoly(c);
  };
  for (int trial = 0; trial < 100; ++trial) {
    UPoly u = random_of_degree(deg(rng)).compose(random_of_degree(deg(rng)));
    auto d = decompose(u);
    require(d.outer.compose(d.inner) == u, "round trip, trial " + std::to_string(trial));
  }
  auto ci = common_inner(ParametricCurve({UPoly{0, 0, 1}, UPoly{0, 0, 1, 0, 1}}));
  require(ci.inner == UPoly({0, 0, 1}), "common inner of (t^2, t^4 + t^2)");
}

void criterion8() {
  auto r = make_ring({"x", "y"});
  Ideal plane = Ideal::zero(r);
  std::vector<MPoly> quadrant{parse_poly("x", r), parse_poly("y", r)};
  auto cert = certify(plane, quadrant, 2, {pt({0, 0}), pt({1, 0}), pt({2, 3})}, FieldMode::real);
  require(cert.status == CertificateStatus::verified, "quadrant certificate " + to_string(cert.status));
  for (const auto& s : cert.samples)
    require(verify_curve(plane, quadrant, *s.curve, s.point, 2, FieldMode::real).ok(), "certificate curve");
  for (Rational a : {Rational(0), Rational(1), Rational(5, 2), Rational(7)}) {
    ParametricCurve ruling({UPoly::constant(a), UPoly{0, 0, 1}}, FieldMode::real);
    require(verify_curve(plane, quadrant, ruling, std::vector<Rational>{a, 0}, 2, FieldMode::real).ok(),
            "ruling at a = " + a.get_str());
  }
}

void criterion9() {
  std::vector<ParametricCurve> curves{
      ParametricCurve({UPoly{0, 0, 1}}, FieldMode::real),
      ParametricCurve({UPoly{0, 0, 0, 1}, UPoly{0, 0, 0, 0, 0, 0, 1}}, FieldMode::real),
      ParametricCurve({UPoly{0, 0, 0, 0, 1}, UPoly{0, 0, 0, 0, 0, 0, 0, 0, 1}}, FieldMode::real),
  };
  for (const auto& phi : curves) {
    auto eta = cover_image_real(phi);
    auto outer = common_inner(phi).outer;
    require(eta.effective_degree() <= 2 * outer.effective_degree(), "degree contract for " + phi.to_string());
    if (phi.dimension() > 1) {
      auto Iphi = testing::implicitize(phi), Ieta = testing::implicitize(eta);
      for (const auto& g : Iphi.generators()) require(substitute_curve(g, eta).is_zero(), "containment");
      for (const auto& g : Ieta.generators()) require(substitute_curve(g, phi).is_zero(), "containment");
    }
    for (int k = 0; k < 200; ++k) {
      Rational t = make_rational(k - 100, 50);
      require(testing::distance_to_image(phi.at(t), eta) < 1e-9, "phi sample off eta");
      require(testing::distance_to_image(eta.at(t), phi) < 1e-9, "eta sample off phi");
    }
  }
}

void criterion10() {
  auto r = make_ring({"x1", "x2"});
  auto rg = make_ring({"x1", "x2", "g"});
  auto shear = fixed_locus(OneParamAction(Ideal::zero(r), "g", {parse_poly("x1", rg), parse_poly("x2 + g*x1", rg)}));
  require(shear.basis() == std::vector<MPoly>{parse_poly("x1", r)}, "shear");
  auto trans = fixed_locus(OneParamAction(Ideal::zero(r), "g", {parse_poly("x1 + g", rg), parse_poly("x2 + g", rg)}));
  require(trans.is_unit(), "translation");
  auto s = make_ring({"x", "y"});
  auto sg = make_ring({"x", "y", "g"});
  auto quad = fixed_locus(OneParamAction(Ideal::zero(s), "g", {parse_poly("x + g*y^2", sg), parse_poly("y", sg)}));
  require(quad.basis() == std::vector<MPoly>{parse_poly("y^2", s)}, "(x + g y^2, y)");
  json bad = {{"format", 1}, {"vars", {"x", "y"}}, {"action", {{"group_var", "g"}, {"polynomials", {"x + g^2", "y"}}}}};
  require(cli::run("fixlocus", bad.dump(), {}).exit == 3, "non-action exit code");
}

void criterion11() {
  std::size_t seen = 0;
  for (const auto& [name, pb] : corpus_maps()) {
    auto f = pb.poly_map();
    auto a = sf_compute(f), b = sf_compute_resultant(f);
    require(a.components.size() == b.components.size(), name + ": component count");
    for (const auto& c : a.components) {
      bool hit = false;
      for (const auto& d : b.components) hit = hit || same_zero_set(c, d);
      require(hit, name + ": unmatched component");
    }
    ++seen;
  }
  require(seen >= 9, "too few corpus maps");
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"golden S_f", criterion1},
      {"proper-map controls", criterion2},
      {"hypersurface check", criterion3},
      {"bound table", criterion4},
      {"sharpness certificates", criterion5},
      {"tracker reproduction", criterion6},
      {"decomposition", criterion7},
      {"real mode quadrant", criterion8},
      {"real image covering", criterion9},
      {"fixed locus", criterion10},
      {"cross-oracle S_f", criterion11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool pass = true;
    try {
      criteria[i].second();
    } catch (const std::exception& e) {
      pass = false;
      detail = e.what();
    }
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!pass) std::cout << ": " << detail;
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
