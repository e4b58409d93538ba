#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sfkit/algebra.hpp"
#include "sfkit/errors.hpp"
#include "sfkit/nonproper.hpp"
#include "sfkit/uniruled/decompose.hpp"

namespace sfkit {

using Complex = std::complex<double>;
/// coeffs[i][r]: coefficient of t^i in coordinate r.
using CurveCoeffs = std::vector<std::vector<Complex>>;

enum class PathKind { radial, cylinder };

inline std::string to_string(PathKind k) { return k == PathKind::radial ? "radial" : "cylinder"; }

/// Base points x_k given coordinatewise as rational expressions in k,
/// sampled on a strictly increasing schedule. Radial lines run
/// (1 - t) x_k; cylinder lines scale only the first coordinate.
struct PathSpec {
  PathKind kind = PathKind::radial;
  std::vector<std::string> coordinates;
  std::vector<Rational> schedule;

  static std::vector<Rational> geometric(unsigned first, unsigned last) {
    std::vector<Rational> out;
    for (unsigned i = first; i <= last; ++i) out.emplace_back(Integer(1) << i);
    return out;
  }

  std::vector<Rational> point(const Rational& k) const {
    std::vector<Rational> p;
    for (const auto& c : coordinates) p.push_back(evaluate_expression(c, {"k"}, {k}));
    return p;
  }
};

/// Exact coefficients of f(L(t)) - y along the line through `base`.
inline ParametricCurve image_curve(const PolyMap& f, const std::vector<Rational>& base, PathKind kind,
                                   const std::vector<Rational>& y) {
  if (base.size() != f.source_dim()) throw std::invalid_argument("base point has wrong arity");
  if (y.size() != f.target_dim()) throw std::invalid_argument("target point has wrong arity");
  std::vector<UPoly> line;
  for (std::size_t i = 0; i < base.size(); ++i) {
    bool scaled = kind == PathKind::radial || i == 0;
    line.push_back(scaled ? UPoly(std::vector<Rational>{base[i], -base[i]}) : UPoly::constant(base[i]));
  }
  ParametricCurve L(std::move(line));
  std::vector<UPoly> out;
  for (std::size_t r = 0; r < f.target_dim(); ++r) out.push_back(substitute_curve(f.components[r], L) - UPoly::constant(y[r]));
  return ParametricCurve(std::move(out));
}

inline CurveCoeffs to_coeffs(const ParametricCurve& c) {
  CurveCoeffs out(c.effective_degree() + 1, std::vector<Complex>(c.dimension()));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t r = 0; r < c.dimension(); ++r) out[i][r] = c.components[r].coeff(i).get_d();
  return out;
}

inline double norm_sq(const std::vector<Complex>& v) {
  double s = 0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

struct Normalized {
  double lambda;
  CurveCoeffs coeffs;
};

/// lambda > 0 with sum_i |c_i|^2 lambda^(2i) = 1, and c_i lambda^i.
inline Normalized unit_normalize(const CurveCoeffs& c) {
  if (c.empty() || norm_sq(c[0]) >= 1) throw PreconditionError("constant coefficient has norm >= 1");
  std::vector<double> w(c.size());
  bool moving = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    w[i] = norm_sq(c[i]);
    moving = moving || (i > 0 && w[i] > 0);
  }
  if (!moving) throw VerificationFailure("constant curve: the line lies in a fiber");
  auto F = [&](double lam) {
    double s = 0, p = 1;
    for (std::size_t i = 0; i < w.size(); ++i, p *= lam * lam) s += w[i] * p;
    return s;
  };
  double lo = 0, hi = 1;
  while (F(hi) < 1) lo = hi, hi *= 2;
  // Bisect to the resolution of double, well past 1e-12.
  for (int it = 0; it < 2000 && lo < hi; ++it) {
    double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (F(mid) < 1 ? lo : hi) = mid;
  }
  double lam = std::abs(F(lo) - 1) <= std::abs(F(hi) - 1) ? lo : hi;
  Normalized out{lam, c};
  double p = 1;
  for (auto& ci : out.coeffs) {
    for (auto& z : ci) z *= p;
    p *= lam;
  }
  return out;
}

namespace detail {

inline double sup_distance(const CurveCoeffs& a, const CurveCoeffs& b) {
  double d = 0;
  std::size_t n = std::max(a.size(), b.size()), m = !a.empty() ? a[0].size() : b[0].size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < m; ++r) {
      Complex x = i < a.size() ? a[i][r] : 0.0, y = i < b.size() ? b[i][r] : 0.0;
      d = std::max(d, std::abs(x - y));
    }
  return d;
}

inline CurveCoeffs rotate(const CurveCoeffs& c, Complex omega) {
  CurveCoeffs out = c;
  Complex p = 1;
  for (auto& ci : out) {
    for (auto& z : ci) z *= p;
    p *= omega;
  }
  return out;
}

// Reparametrization t -> omega t, |omega| = 1, bringing c closest to ref in
// sup-norm. omega = 1 wins ties.
inline CurveCoeffs align_phase(const CurveCoeffs& c, const CurveCoeffs& ref) {
  double best = sup_distance(c, ref), best_theta = 0;
  const int grid = 720;
  for (int k = 1; k < grid; ++k) {
    double theta = 2 * std::numbers::pi * k / grid;
    double d = sup_distance(rotate(c, std::polar(1.0, theta)), ref);
    if (d < best) best = d, best_theta = theta;
  }
  if (best_theta != 0) {
    double lo = best_theta - 2 * std::numbers::pi / grid, hi = best_theta + 2 * std::numbers::pi / grid;
    for (int it = 0; it < 100; ++it) {
      double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
      if (sup_distance(rotate(c, std::polar(1.0, a)), ref) < sup_distance(rotate(c, std::polar(1.0, b)), ref)) hi = b;
      else lo = a;
    }
    double theta = (lo + hi) / 2;
    if (sup_distance(rotate(c, std::polar(1.0, theta)), ref) < best) best_theta = theta;
  }
  return rotate(c, std::polar(1.0, best_theta));
}

}  // namespace detail

enum class TraceStatus { converged, diverged, constant_curve_hit };

inline std::string to_string(TraceStatus s) {
  switch (s) {
    case TraceStatus::converged: return "converged";
    case TraceStatus::diverged: return "diverged";
    case TraceStatus::constant_curve_hit: return "constant-curve-hit";
  }
  return "?";
}

struct TraceStep {
  Rational k;
  CurveCoeffs raw;
  bool in_regime = false;  // |c_0| < 1, so the step was normalized
  double lambda = 0;
  CurveCoeffs normalized;
  std::optional<double> change;  // sup-norm to the previous normalized step
};

struct TrackOptions {
  double tolerance = 1e-8;
  std::size_t window = 3;
};

struct LimitTrace {
  std::vector<Rational> target;
  std::vector<TraceStep> steps;
  CurveCoeffs limit;  // final normalized curve, translated back by the target
  TraceStatus status = TraceStatus::diverged;
  double residual = 0;  // |f(x_k) - y| at the last step
  // Slope of log(lambda_k) against log(k) over the normalized steps: near 0
  // when lambda stays finite, negative when it tends to zero.
  double lambda_growth = 0;
};

/// Pushes the lines through x_k along f, normalizes them, and looks for a
/// limit curve through y.
inline LimitTrace track(const PolyMap& f, const std::vector<Rational>& y, const PathSpec& path, TrackOptions opt = {}) {
  if (path.coordinates.size() != f.source_dim()) throw std::invalid_argument("path has wrong arity");
  if (path.schedule.size() < 4) throw std::invalid_argument("schedule needs at least 4 steps");
  for (std::size_t i = 1; i < path.schedule.size(); ++i)
    if (path.schedule[i] <= path.schedule[i - 1]) throw std::invalid_argument("schedule must be strictly increasing");
  if (path.kind == PathKind::radial && !f.affine_domain()) throw PreconditionError("radial paths need X to be affine space");

  LimitTrace trace;
  trace.target = y;
  double ynorm = 0;
  for (const auto& v : y) ynorm += v.get_d() * v.get_d();
  ynorm = std::sqrt(ynorm);

  for (const auto& k : path.schedule) {
    auto base = path.point(k);
    if (!f.affine_domain()) {
      // Every point of a cylinder line must lie on X.
      ParametricCurve line(std::vector<UPoly>{});
      for (std::size_t i = 0; i < base.size(); ++i)
        line.components.push_back(i == 0 ? UPoly(std::vector<Rational>{base[0], -base[0]}) : UPoly::constant(base[i]));
      for (const auto& g : f.domain.generators())
        if (!substitute_curve(g, line).is_zero()) throw PreconditionError("path line leaves X at k = " + k.get_str());
    }
    TraceStep step;
    step.k = k;
    step.raw = to_coeffs(image_curve(f, base, path.kind, y));
    step.in_regime = norm_sq(step.raw[0]) < 1;
    if (step.in_regime) {
      try {
        auto n = unit_normalize(step.raw);
        step.lambda = n.lambda;
        step.normalized = std::move(n.coeffs);
      } catch (const VerificationFailure&) {
        trace.steps.push_back(std::move(step));
        trace.status = TraceStatus::constant_curve_hit;
        return trace;
      }
      for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        if (!it->in_regime) continue;
        step.normalized = detail::align_phase(step.normalized, it->normalized);
        step.change = detail::sup_distance(step.normalized, it->normalized);
        break;
      }
    }
    trace.steps.push_back(std::move(step));
  }

  trace.residual = std::sqrt(norm_sq(trace.steps.back().raw[0]));
  if (!(trace.residual < 1e-6 * (1 + ynorm)))
    throw PreconditionError("f along the path does not approach the target (residual " + std::to_string(trace.residual) + ")");

  std::size_t good = 0;
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend() && it->change && *it->change < opt.tolerance; ++it) ++good;
  trace.status = good >= opt.window ? TraceStatus::converged : TraceStatus::diverged;

  const auto& last = trace.steps.back();
  if (last.in_regime) {
    trace.limit = last.normalized;
    for (std::size_t r = 0; r < y.size(); ++r) trace.limit[0][r] += y[r].get_d();
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& s : trace.steps) {
    if (!s.in_regime || s.lambda <= 0) continue;
    double lx = std::log(s.k.get_d()), ly = std::log(s.lambda);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly, ++count;
  }
  if (count >= 2 && count * sxx != sx * sx) trace.lambda_growth = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return trace;
}

struct RationalizeOptions {
  long max_denominator = 1000000;
  double tolerance = 1e-6;
};

struct VerifiedLimit {
  ParametricCurve curve;
  std::size_t component = 0;  // index of the S_f component containing it
  CurveDecomposition decomposition;
};

namespace detail {

// t -> mu t making entry (i, r) of c equal to +-1, with mu real whenever
// that entry is real.
inline Complex gauge_scalar(Complex lead, std::size_t i, double tol) {
  if (std::abs(lead.imag()) > tol) return std::pow(1.0 / lead, 1.0 / static_cast<double>(i));
  double re = lead.real();
  double mag = std::pow(1 / std::abs(re), 1.0 / static_cast<double>(i));
  return (re < 0 && i % 2 == 1) ? -mag : mag;
}

inline std::optional<ParametricCurve> round_curve(const CurveCoeffs& c, Complex mu, const RationalizeOptions& opt,
                                                  std::string& why) {
  std::size_t m = c[0].size();
  std::vector<std::vector<Rational>> exact(m, std::vector<Rational>(c.size()));
  Complex p = 1;
  for (std::size_t i = 0; i < c.size(); ++i, p *= mu) {
    for (std::size_t r = 0; r < m; ++r) {
      Complex z = c[i][r] * p;
      if (std::abs(z.imag()) > opt.tolerance) {
        why = "coefficient of t^" + std::to_string(i) + " is not real";
        return std::nullopt;
      }
      Rational q = limit_denominator(z.real(), opt.max_denominator);
      if (std::abs(q.get_d() - z.real()) > opt.tolerance) {
        why = "coefficient of t^" + std::to_string(i) + " does not round within tolerance";
        return std::nullopt;
      }
      exact[r][i] = q;
    }
  }
  std::vector<UPoly> comps;
  for (auto& e : exact) comps.emplace_back(std::move(e));
  return ParametricCurve(std::move(comps));
}

}  // namespace detail

/// Rounds the limit curve to rationals and checks exactly that it is
/// nonconstant and lies in a component of S_f. The scale gauge t -> mu t is
/// fixed by making one coefficient entry +-1; entries are tried lowest power
/// first, largest magnitude first within a power.
inline VerifiedLimit rationalize_verify(const LimitTrace& trace, const SfResult& sf, RationalizeOptions opt = {}) {
  if (trace.limit.empty()) throw VerificationFailure("trace has no limit estimate");
  const auto& c = trace.limit;
  std::vector<std::pair<std::size_t, std::size_t>> gauges;
  for (std::size_t i = 1; i < c.size(); ++i) {
    std::vector<std::size_t> rs;
    for (std::size_t r = 0; r < c[i].size(); ++r)
      if (std::abs(c[i][r]) > opt.tolerance) rs.push_back(r);
    std::stable_sort(rs.begin(), rs.end(), [&](auto a, auto b) { return std::abs(c[i][a]) > std::abs(c[i][b]); });
    for (auto r : rs) gauges.emplace_back(i, r);
  }
  if (gauges.empty()) throw VerificationFailure("limit curve is constant");
  std::string why;
  for (auto [i, r] : gauges) {
    auto curve = detail::round_curve(c, detail::gauge_scalar(c[i][r], i, opt.tolerance), opt, why);
    if (!curve) continue;
    if (curve->is_constant()) {
      why = "rationalized limit curve is constant";
      continue;
    }
    if (sf.components.empty()) throw VerificationFailure("S_f is empty");
    for (std::size_t ci = 0; ci < sf.components.size(); ++ci) {
      bool inside = true;
      for (const auto& g : sf.components[ci].generators()) {
        if (!substitute_curve(g, *curve).is_zero()) {
          inside = false;
          why = "limit curve leaves S_f: " + g.to_string() + " does not vanish on " + curve->to_string();
          break;
        }
      }
      if (inside) return {*curve, ci, common_inner(*curve)};
    }
  }
  throw VerificationFailure(why);
}

}  // namespace sfkit
