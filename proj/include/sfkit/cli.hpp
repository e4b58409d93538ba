#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfkit/algebra.hpp"
#include "sfkit/elimination.hpp"
#include "sfkit/errors.hpp"
#include "sfkit/nonproper.hpp"
#include "sfkit/tracker.hpp"
#include "sfkit/uniruled.hpp"

namespace sfkit::cli {

using json = nlohmann::json;

inline constexpr int kFormat = 1;

enum Exit : int { ok = 0, parse_error = 2, precondition = 3, search_failure = 4, verification_failure = 5 };

struct PathEntry {
  PathKind kind = PathKind::radial;
  std::vector<std::string> coordinates;
};

struct CurveEntry {
  std::string var = "t";
  std::vector<std::string> components;
};

struct ActionEntry {
  std::string group_var = "g";
  std::vector<std::string> polynomials;
};

/// Parsed problem file. Polynomial strings are kept as text until a ring is
/// needed; parse errors surface as ParseError either way.
struct Problem {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> domain_equations;
  std::vector<std::string> domain_inequalities;
  std::vector<std::string> map;
  std::vector<std::string> image_vars;
  FieldMode field = FieldMode::complex;
  std::vector<std::vector<Rational>> targets;
  std::vector<PathEntry> paths;
  std::vector<std::vector<Rational>> samples;
  std::optional<unsigned> degree, max_degree, d1;
  std::optional<CurveEntry> curve;
  std::optional<ActionEntry> action;
  json expect = json::object();

  RingPtr ring() const { return make_ring(vars); }

  Ideal domain() const {
    auto r = ring();
    std::vector<MPoly> gens;
    for (const auto& e : domain_equations) gens.push_back(parse_poly(e, r));
    return Ideal(r, gens);
  }

  std::vector<MPoly> inequalities() const {
    auto r = ring();
    std::vector<MPoly> out;
    for (const auto& e : domain_inequalities) out.push_back(parse_poly(e, r));
    return out;
  }

  bool has_map() const { return !map.empty(); }

  PolyMap poly_map() const {
    if (!has_map()) throw PreconditionError("problem has no map");
    auto r = ring();
    std::vector<MPoly> comps;
    for (const auto& c : map) comps.push_back(parse_poly(c, r));
    return PolyMap(domain(), comps, field, image_vars);
  }
};

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("problem file: missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<std::string> strings(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("problem file: '") + what + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(std::string("problem file: '") + what + "' must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline Rational rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return evaluate_expression(j.get<std::string>(), {}, {});
  throw ParseError("problem file: coordinates must be integers or rational strings, got " + j.dump());
}

inline std::vector<std::vector<Rational>> points(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("problem file: '") + what + "' must be an array of points");
  std::vector<std::vector<Rational>> out;
  for (const auto& p : j) {
    if (!p.is_array()) throw ParseError(std::string("problem file: '") + what + "' must be an array of points");
    std::vector<Rational> v;
    for (const auto& c : p) v.push_back(rational(c));
    out.push_back(std::move(v));
  }
  return out;
}

inline std::optional<unsigned> count(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) throw ParseError(std::string("problem file: '") + key + "' must be a nonnegative integer");
  return v.get<unsigned>();
}

}  // namespace detail

inline Problem parse_problem(const json& j) {
  using namespace detail;
  if (!j.is_object()) throw ParseError("problem file: top level must be an object");
  if (j.contains("format") && j.at("format") != kFormat)
    throw ParseError("problem file: unsupported format " + j.at("format").dump());
  Problem p;
  if (j.contains("name")) p.name = j.at("name").get<std::string>();
  p.vars = strings(require(j, "vars"), "vars");
  if (j.contains("domain_equations")) p.domain_equations = strings(j.at("domain_equations"), "domain_equations");
  if (j.contains("domain_inequalities")) p.domain_inequalities = strings(j.at("domain_inequalities"), "domain_inequalities");
  if (j.contains("map")) p.map = strings(j.at("map"), "map");
  if (j.contains("image_vars")) p.image_vars = strings(j.at("image_vars"), "image_vars");
  if (j.contains("field")) {
    auto f = j.at("field").get<std::string>();
    if (f == "real") p.field = FieldMode::real;
    else if (f != "complex") throw ParseError("problem file: field must be \"complex\" or \"real\"");
  }
  if (!p.domain_inequalities.empty() && p.field != FieldMode::real)
    throw ParseError("problem file: domain_inequalities need field \"real\"");
  if (j.contains("targets")) p.targets = points(j.at("targets"), "targets");
  if (j.contains("samples")) p.samples = points(j.at("samples"), "samples");
  if (j.contains("paths")) {
    for (const auto& e : j.at("paths")) {
      PathEntry pe;
      auto kind = e.value("kind", std::string("radial"));
      if (kind == "cylinder") pe.kind = PathKind::cylinder;
      else if (kind != "radial") throw ParseError("problem file: path kind must be radial or cylinder");
      pe.coordinates = strings(require(e, "coordinates"), "coordinates");
      p.paths.push_back(std::move(pe));
    }
  }
  p.degree = count(j, "degree");
  p.max_degree = count(j, "max_degree");
  p.d1 = count(j, "d1");
  if (j.contains("curve")) {
    const auto& c = j.at("curve");
    CurveEntry ce;
    ce.var = c.value("var", std::string("t"));
    ce.components = strings(require(c, "components"), "components");
    p.curve = std::move(ce);
  }
  if (j.contains("action")) {
    const auto& a = j.at("action");
    ActionEntry ae;
    ae.group_var = a.value("group_var", std::string("g"));
    ae.polynomials = strings(require(a, "polynomials"), "polynomials");
    p.action = std::move(ae);
  }
  if (j.contains("expect")) p.expect = j.at("expect");
  // Polynomial strings must parse even for commands that do not use them.
  auto r = p.ring();
  for (const auto* list : {&p.domain_equations, &p.domain_inequalities, &p.map})
    for (const auto& s : *list) parse_poly(s, r);
  return p;
}

struct Options {
  std::string order = "lex";
  std::optional<unsigned> degree;
  unsigned samples = 3;
  unsigned kmax = 20;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  bool sharpness = false;
  std::string corpus = SFKIT_CORPUS_DIR;
  std::string csv;
};

struct Outcome {
  int exit = Exit::ok;
  json report;
  std::string text;
};

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

namespace detail {

struct CommandResult {
  json result = json::object();
  json checks = json::object();
  std::ostringstream text;
  int exit = Exit::ok;
};

inline MonomialOrder parse_order(const std::string& s) {
  if (s == "lex") return MonomialOrder::lex();
  if (s == "grevlex") return MonomialOrder::grevlex();
  throw std::invalid_argument("--order must be lex or grevlex");
}

inline json poly_strings(const std::vector<MPoly>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

inline json point_json(const std::vector<Rational>& p) {
  json out = json::array();
  for (const auto& c : p) out.push_back(c.get_str());
  return out;
}

inline std::string point_text(const std::vector<Rational>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].get_str();
  return s + ")";
}

inline json curve_json(const ParametricCurve& c, const std::string& var = "t") {
  json out = json::array();
  for (const auto& u : c.components) out.push_back(u.to_string(var));
  return out;
}

inline std::vector<std::string> basis_strings(const Ideal& I, const MonomialOrder& order) {
  std::vector<std::string> out;
  for (const auto& g : I.basis(order)) out.push_back(g.to_string());
  return out;
}

inline bool same_component_sets(const SfResult& a, const SfResult& b) {
  auto contains_all = [](const Ideal& I, const Ideal& J) {
    for (const auto& g : J.generators())
      if (!vanishes_on(g.in_ring(I.ring()), I)) return false;
    return true;
  };
  auto covered = [&](const SfResult& x, const SfResult& y) {
    for (const auto& c : x.components) {
      bool hit = false;
      for (const auto& d : y.components) hit = hit || (contains_all(c, d) && contains_all(d, c));
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

inline std::map<std::string, std::uint64_t> bound_table(const PolyMap& f, std::optional<unsigned> d1) {
  std::map<std::string, std::uint64_t> t;
  bool real = f.mode == FieldMode::real;
  if (f.affine_domain()) {
    t[real ? "cn1" : "cn"] = theorem_bound(f, real ? BoundMode::cn1 : BoundMode::cn);
    if (!real) t["wn"] = theorem_bound(f, BoundMode::wn);
  }
  if (d1) t[real ? "multc1" : "multc"] = theorem_bound(f, real ? BoundMode::multc1 : BoundMode::multc, *d1);
  return t;
}

// Up to n distinct rational points of V(gens) passing the inequalities.
inline std::vector<std::vector<Rational>> generate_samples(const Ideal& variety, const std::vector<MPoly>& ineqs,
                                                           FieldMode mode, unsigned n, std::uint64_t seed) {
  std::vector<std::vector<Rational>> out;
  if (variety.is_unit()) return out;
  std::vector<MPoly> gens;
  if (!variety.is_zero()) gens = variety.generators();
  std::set<std::string> seen;
  for (std::uint64_t s = seed; out.size() < n && s < seed + 4 * n; ++s) {
    sfkit::detail::RationalPointSearch search(variety.ring()->size(), s, 400);
    search.run(gens, variety.ring(), [&](const std::vector<Rational>& p) {
      if (on_variety(variety, ineqs, p, mode) && seen.insert(point_text(p)).second) out.push_back(p);
      return out.size() >= n;
    });
  }
  return out;
}

inline void cmd_sf(const Problem& pb, const Options& opt, CommandResult& out) {
  auto f = pb.poly_map();
  auto order = parse_order(opt.order);
  auto sf = sf_compute(f);
  auto& r = out.result;
  r["image_vars"] = f.image_names;
  r["image"] = basis_strings(sf.image, order);
  r["generically_finite"] = sf.generically_finite;
  r["dominant"] = sf.dominant;
  r["hypersurface"] = sf.hypersurface_check;
  r["complex_superset"] = sf.complex_superset;
  r["components"] = json::array();
  for (const auto& c : sf.components)
    r["components"].push_back({{"generators", basis_strings(c, order)}, {"dimension", dimension(c)}});
  r["coordinates"] = json::array();
  for (const auto& c : sf.coordinates)
    r["coordinates"].push_back({{"variable", f.source->name(c.j)}, {"degree", c.degree}, {"lead", c.lead.to_string()}});
  if (!pb.targets.empty()) {
    r["proper_at"] = json::array();
    for (const auto& y : pb.targets)
      r["proper_at"].push_back({{"point", point_json(y)}, {"proper", is_proper_at(f, sf, y)}});
  }
  out.checks["hypersurface"] = sf.hypersurface_check;
  out.checks["resultant_agreement"] = same_component_sets(sf, sf_compute_resultant(f));

  out.text << "S_f in " << f.image_names.size() << " image coordinates: ";
  if (sf.empty()) out.text << "empty (f is proper)\n";
  else out.text << sf.components.size() << " component(s)\n";
  for (const auto& c : r["components"]) {
    out.text << "  V(";
    bool first = true;
    for (const auto& g : c["generators"]) out.text << (first ? "" : ", ") << g.get<std::string>(), first = false;
    out.text << ")  dim " << c["dimension"] << "\n";
  }
  if (sf.complex_superset) out.text << "  warning: real mode reports the complex S_f, a superset of the real one\n";
  for (const auto& p : r.value("proper_at", json::array()))
    out.text << "  proper at " << p["point"].dump() << ": " << (p["proper"].get<bool>() ? "yes" : "no") << "\n";
}

inline void cmd_bounds(const Problem& pb, const Options&, CommandResult& out) {
  auto f = pb.poly_map();
  out.result["degree"] = f.degree();
  out.result["bounds"] = bound_table(f, pb.d1);
  out.text << "deg f = " << f.degree() << "\n";
  for (const auto& [k, v] : out.result["bounds"].items()) out.text << "  " << k << ": " << v << "\n";
}

inline json certify_one(const Ideal& variety, const std::vector<MPoly>& ineqs, std::vector<std::vector<Rational>> samples,
                        FieldMode mode, std::optional<unsigned> degree, unsigned max_degree, const Options& opt,
                        std::ostringstream& text, bool& verified) {
  if (samples.empty()) samples = generate_samples(variety, ineqs, mode, opt.samples, opt.seed);
  if (samples.empty()) throw SearchFailure("no rational sample points found on " + variety.to_string());
  CertifyOptions co;
  co.search.seed = opt.seed;
  co.sharpness = opt.sharpness;
  unsigned d = 0;
  if (degree) {
    d = *degree;
  } else {
    auto found = certified_degree(variety, ineqs, samples, mode, max_degree, co);
    d = found.value_or(max_degree);
  }
  auto cert = certify(variety, ineqs, d, samples, mode, co);
  verified = cert.status == CertificateStatus::verified;
  json c{{"variety", poly_strings(variety.generators())}, {"degree", d}, {"status", to_string(cert.status)},
         {"mode", to_string(mode)}};
  if (!ineqs.empty()) c["inequalities"] = poly_strings(ineqs);
  c["samples"] = json::array();
  text << "  " << variety.to_string() << ": " << to_string(cert.status) << " at degree " << d << "\n";
  for (const auto& s : cert.samples) {
    json w{{"point", point_json(s.point)}, {"curve", s.curve ? curve_json(*s.curve) : json(nullptr)}};
    if (s.sharp) w["sharp"] = *s.sharp;
    c["samples"].push_back(w);
    text << "    " << point_text(s.point) << " -> " << (s.curve ? s.curve->to_string() : std::string("no curve"));
    if (s.sharp) text << (*s.sharp ? "  [no smaller curve]" : "  [smaller curve not excluded]");
    text << "\n";
  }
  return c;
}

inline void cmd_certify(const Problem& pb, const Options& opt, CommandResult& out) {
  std::optional<unsigned> degree = opt.degree ? opt.degree : pb.degree;
  bool all = true;
  out.result["certificates"] = json::array();
  if (pb.has_map()) {
    auto f = pb.poly_map();
    auto sf = sf_compute(f);
    auto bounds = bound_table(f, pb.d1);
    unsigned max_degree = pb.max_degree.value_or(4);
    if (!pb.max_degree && !bounds.empty()) {
      std::uint64_t lo = UINT64_MAX;
      for (const auto& [k, v] : bounds) lo = std::min(lo, v);
      max_degree = static_cast<unsigned>(std::max<std::uint64_t>(lo, 1));
    }
    out.text << "certifying S_f (" << sf.components.size() << " component(s))\n";
    unsigned worst = 0;
    for (const auto& comp : sf.components) {
      bool ok = false;
      auto c = certify_one(comp, {}, pb.samples, f.mode, degree, max_degree, opt, out.text, ok);
      worst = std::max(worst, c["degree"].get<unsigned>());
      all = all && ok;
      out.result["certificates"].push_back(std::move(c));
    }
    out.result["bounds"] = bounds;
    if (!sf.empty()) out.result["degree"] = worst;
    bool within = true;
    for (const auto& [k, v] : bounds) within = within && worst <= v;
    out.checks["within_bounds"] = within;
  } else {
    bool ok = false;
    auto c = certify_one(pb.domain(), pb.inequalities(), pb.samples, pb.field, degree, pb.max_degree.value_or(4), opt,
                         out.text, ok);
    out.result["degree"] = c["degree"];
    out.result["certificates"].push_back(std::move(c));
    all = ok;
  }
  out.result["status"] = all ? "verified" : "failed";
  out.checks["verified"] = all;
  if (!all) out.exit = Exit::search_failure;
}

inline void write_csv(const std::string& path, const std::vector<LimitTrace>& traces) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "trace,k,in_regime,lambda,change,residual\n";
  os << std::setprecision(17);
  for (std::size_t t = 0; t < traces.size(); ++t)
    for (const auto& s : traces[t].steps) {
      os << t << "," << s.k.get_str() << "," << s.in_regime << "," << s.lambda << ",";
      if (s.change) os << *s.change;
      os << "," << std::sqrt(norm_sq(s.raw[0])) << "\n";
    }
}

inline void cmd_track(const Problem& pb, const Options& opt, CommandResult& out) {
  auto f = pb.poly_map();
  if (pb.targets.empty() || pb.targets.size() != pb.paths.size())
    throw PreconditionError("track needs one path per target");
  if (opt.kmax < 4) throw std::invalid_argument("--kmax must be at least 4");
  auto sf = sf_compute(f);
  std::optional<std::uint64_t> cn;
  if (f.affine_domain()) cn = theorem_bound(f, BoundMode::cn);
  out.result["traces"] = json::array();
  std::vector<LimitTrace> traces;
  bool converged = true, verified = true, contract = true;
  for (std::size_t i = 0; i < pb.targets.size(); ++i) {
    const auto& y = pb.targets[i];
    PathSpec path{pb.paths[i].kind, pb.paths[i].coordinates, PathSpec::geometric(1, opt.kmax)};
    TrackOptions to;
    to.tolerance = opt.tol;
    auto trace = track(f, y, path, to);
    json t{{"target", point_json(y)},
           {"path", {{"kind", to_string(path.kind)}, {"coordinates", path.coordinates}}},
           {"status", to_string(trace.status)},
           {"steps", trace.steps.size()},
           {"residual", trace.residual},
           {"lambda_growth", trace.lambda_growth}};
    if (trace.steps.back().change) t["final_change"] = *trace.steps.back().change;
    out.text << "target " << point_text(y) << " along " << to_string(path.kind) << " path: " << to_string(trace.status);
    if (trace.status == TraceStatus::converged) {
      try {
        auto v = rationalize_verify(trace, sf);
        auto outer_deg = v.decomposition.outer.effective_degree();
        t["curve"] = curve_json(v.curve);
        t["component"] = v.component;
        t["outer"] = curve_json(v.decomposition.outer, "u");
        t["inner"] = v.decomposition.inner.to_string("t");
        t["outer_degree"] = outer_deg;
        if (cn) {
          t["cn_bound"] = *cn;
          contract = contract && outer_deg <= *cn;
        }
        out.text << "\n  limit " << v.curve.to_string() << " = " << v.decomposition.outer.to_string("u")
                 << " o u = " << v.decomposition.inner.to_string("t") << ", outer degree " << outer_deg << "\n";
      } catch (const VerificationFailure& e) {
        verified = false;
        t["error"] = e.what();
        out.text << "\n  verification failed: " << e.what() << "\n";
      }
    } else {
      converged = false;
      out.text << "\n";
    }
    out.result["traces"].push_back(std::move(t));
    traces.push_back(std::move(trace));
  }
  if (!opt.csv.empty()) write_csv(opt.csv, traces);
  out.checks["converged"] = converged;
  out.checks["verified"] = verified;
  out.checks["degree_contract"] = contract;
  if (!converged) out.exit = Exit::search_failure;
  else if (!verified || !contract) out.exit = Exit::verification_failure;
}

inline void cmd_decompose(const Problem& pb, const Options&, CommandResult& out) {
  if (!pb.curve) throw PreconditionError("decompose needs a curve");
  auto r = make_ring({pb.curve->var});
  std::vector<UPoly> comps;
  for (const auto& s : pb.curve->components) comps.push_back(sfkit::detail::as_upoly(parse_poly(s, r), 0));
  ParametricCurve curve(std::move(comps), pb.field);
  auto [outer, inner] = common_inner(curve);
  const std::string& v = pb.curve->var;
  out.result["inner"] = inner.to_string(v);
  out.result["inner_degree"] = inner.degree();
  out.result["outer"] = curve_json(outer, "u");
  out.result["outer_degree"] = outer.effective_degree();
  out.checks["recomposes"] = outer.compose(inner) == curve;
  out.text << curve.to_string(v) << " = " << outer.to_string("u") << " o u = " << inner.to_string(v) << "\n";
  if (pb.field == FieldMode::real) {
    auto eta = cover_image_real(curve);
    out.result["cover"] = curve_json(eta, "s");
    out.result["cover_degree"] = eta.effective_degree();
    out.checks["cover_degree_contract"] = eta.effective_degree() <= 2 * outer.effective_degree();
    out.text << "real image covered by " << eta.to_string("s") << "\n";
  }
}

inline void cmd_fixlocus(const Problem& pb, const Options& opt, CommandResult& out) {
  if (!pb.action) throw PreconditionError("fixlocus needs an action");
  auto r = pb.ring();
  std::vector<MPoly> phi;
  auto names = pb.vars;
  names.push_back(pb.action->group_var);
  for (const auto& s : pb.action->polynomials) phi.push_back(parse_poly(s, names));
  OneParamAction act(pb.domain(), pb.action->group_var, phi);
  auto fix = fixed_locus(act);
  auto order = parse_order(opt.order);
  out.result["generators"] = basis_strings(fix, order);
  out.result["unit"] = fix.is_unit();
  out.result["dimension"] = dimension(fix);
  out.checks["action_axioms"] = true;
  out.text << "Fix(G) = " << (fix.is_unit() ? std::string("empty") : "V(" + [&] {
    std::string s;
    for (const auto& g : out.result["generators"]) s += (s.empty() ? "" : ", ") + g.get<std::string>();
    return s;
  }() + ")") << "\n";
}

}  // namespace detail

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"sf", "certify", "track", "decompose", "fixlocus", "bounds", "examples"};
  return c;
}

/// Runs one command on the bytes of a problem file.
inline Outcome run(const std::string& command, const std::string& input, const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  o.report = {{"format", kFormat}, {"command", command}, {"input_digest", sha256_hex(input)}};
  detail::CommandResult cr;
  auto fail = [&](int code, const char* kind, const std::string& msg) {
    cr.exit = code;
    o.report["error"] = {{"kind", kind}, {"message", msg}};
    cr.text << "error (" << kind << "): " << msg << "\n";
  };
  try {
    Problem pb = parse_problem(json::parse(input));
    o.report["problem"] = pb.name;
    if (command == "sf") detail::cmd_sf(pb, opt, cr);
    else if (command == "certify") detail::cmd_certify(pb, opt, cr);
    else if (command == "track") detail::cmd_track(pb, opt, cr);
    else if (command == "decompose") detail::cmd_decompose(pb, opt, cr);
    else if (command == "fixlocus") detail::cmd_fixlocus(pb, opt, cr);
    else if (command == "bounds") detail::cmd_bounds(pb, opt, cr);
    else throw std::invalid_argument("unknown command " + command);
  } catch (const json::exception& e) {
    fail(Exit::parse_error, "parse", e.what());
  } catch (const ParseError& e) {
    fail(Exit::parse_error, "parse", e.what());
  } catch (const PreconditionError& e) {
    fail(Exit::precondition, "precondition", e.what());
  } catch (const std::invalid_argument& e) {
    fail(Exit::precondition, "precondition", e.what());
  } catch (const SearchFailure& e) {
    fail(Exit::search_failure, "search", e.what());
  } catch (const VerificationFailure& e) {
    fail(Exit::verification_failure, "verification", e.what());
  }
  o.report["result"] = std::move(cr.result);
  o.report["checks"] = std::move(cr.checks);
  o.report["exit"] = cr.exit;
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  o.report["timings"] = {{"total_ms", ms}};
  o.exit = cr.exit;
  o.text = cr.text.str();
  return o;
}

namespace detail {

// Every key of `want` is present in `got` with a matching value; arrays
// match elementwise and must have equal length.
inline bool matches(const json& want, const json& got, std::string& where) {
  if (want.is_object()) {
    if (!got.is_object()) return where = "expected an object", false;
    for (const auto& [k, v] : want.items()) {
      if (!got.contains(k)) return where = "missing " + k, false;
      if (!matches(v, got.at(k), where)) return where = k + ": " + where, false;
    }
    return true;
  }
  if (want.is_array()) {
    if (!got.is_array() || got.size() != want.size()) return where = "expected " + want.dump() + ", got " + got.dump(), false;
    for (std::size_t i = 0; i < want.size(); ++i)
      if (!matches(want[i], got[i], where)) return where = "[" + std::to_string(i) + "] " + where, false;
    return true;
  }
  if (want != got) return where = "expected " + want.dump() + ", got " + got.dump(), false;
  return true;
}

}  // namespace detail

/// Runs every expectation in the corpus directory and reports a pass/fail
/// matrix, one row per (entry, command).
inline Outcome run_examples(const Options& opt) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(opt.corpus)) {
    o.exit = Exit::precondition;
    o.report = {{"format", kFormat}, {"command", "examples"}, {"error", {{"kind", "precondition"}, {"message", "no corpus at " + opt.corpus}}}};
    o.text = "error: no corpus at " + opt.corpus + "\n";
    return o;
  }
  for (const auto& e : std::filesystem::directory_iterator(opt.corpus))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  json rows = json::array();
  std::ostringstream text, digest_input;
  std::size_t passed = 0;
  for (const auto& path : files) {
    std::ifstream is(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    digest_input << bytes;
    json expect;
    try {
      expect = json::parse(bytes).value("expect", json::object());
    } catch (const json::exception& e) {
      rows.push_back({{"entry", path.stem().string()}, {"command", "-"}, {"pass", false}, {"detail", e.what()}});
      continue;
    }
    for (const auto& [command, want] : expect.items()) {
      Options eo = opt;
      if (want.contains("options")) {
        const auto& w = want.at("options");
        if (w.contains("degree")) eo.degree = w.at("degree").get<unsigned>();
        if (w.contains("sharpness")) eo.sharpness = w.at("sharpness").get<bool>();
        if (w.contains("order")) eo.order = w.at("order").get<std::string>();
      }
      auto res = run(command, bytes, eo);
      int want_exit = want.value("exit", 0);
      std::string where;
      bool pass = res.exit == want_exit;
      if (!pass) where = "exit " + std::to_string(res.exit) + ", expected " + std::to_string(want_exit);
      if (pass && want.contains("result")) pass = detail::matches(want.at("result"), res.report["result"], where);
      if (pass && want.contains("checks")) pass = detail::matches(want.at("checks"), res.report["checks"], where);
      passed += pass;
      rows.push_back({{"entry", path.stem().string()}, {"command", command}, {"pass", pass}, {"detail", where}});
    }
  }
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r["entry"].get<std::string>().size());
  for (const auto& r : rows) {
    text << std::left << std::setw(static_cast<int>(width) + 2) << r["entry"].get<std::string>() << std::setw(11)
         << r["command"].get<std::string>() << (r["pass"].get<bool>() ? "PASS" : "FAIL");
    if (!r["pass"].get<bool>()) text << "  " << r["detail"].get<std::string>();
    text << "\n";
  }
  text << passed << "/" << rows.size() << " passed\n";
  o.exit = passed == rows.size() && !rows.empty() ? Exit::ok : Exit::verification_failure;
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  o.report = {{"format", kFormat},
              {"command", "examples"},
              {"input_digest", sha256_hex(digest_input.str())},
              {"result", {{"entries", rows}}},
              {"checks", {{"all_pass", o.exit == Exit::ok}}},
              {"exit", o.exit},
              {"timings", {{"total_ms", ms}}}};
  o.text = text.str();
  return o;
}

}  // namespace sfkit::cli
