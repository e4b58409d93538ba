#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfkit/uniruled/ansatz.hpp"

namespace sfkit {

enum class CertificateStatus { verified, partial, failed };

inline std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::verified: return "verified";
    case CertificateStatus::partial: return "partial";
    case CertificateStatus::failed: return "failed";
  }
  return "?";
}

struct SampleWitness {
  std::vector<Rational> point;
  std::optional<ParametricCurve> curve;
  std::optional<bool> sharp;  // no curve of degree < d through the point
};

struct UniruledCertificate {
  Ideal variety;
  std::vector<MPoly> inequalities;
  unsigned degree = 0;
  FieldMode mode = FieldMode::complex;
  std::vector<SampleWitness> samples;
  CertificateStatus status = CertificateStatus::failed;

  bool sharp_everywhere() const {
    for (const auto& s : samples)
      if (!s.sharp.value_or(false)) return false;
    return !samples.empty();
  }
};

struct CertifyOptions {
  SearchOptions search;
  bool sharpness = false;
};

/// Curve search at every sample; status verified iff every sample got a
/// verified curve.
inline UniruledCertificate certify(const Ideal& variety, const std::vector<MPoly>& inequalities, unsigned d,
                                   const std::vector<std::vector<Rational>>& samples, FieldMode mode,
                                   CertifyOptions opt = {}) {
  opt.search.mode = mode;
  opt.search.inequalities = inequalities;
  UniruledCertificate cert{variety, inequalities, d, mode, {}, CertificateStatus::failed};
  for (const auto& a : samples)
    if (!on_variety(variety, inequalities, a, mode)) throw PreconditionError("sample point is not in X");
  std::size_t hits = 0;
  for (const auto& a : samples) {
    SampleWitness w{a, find_curve(variety, a, d, opt.search), std::nullopt};
    if (w.curve) ++hits;
    if (opt.sharpness && d >= 2) w.sharp = no_smaller_curve(variety, a, d, mode);
    cert.samples.push_back(std::move(w));
  }
  if (!samples.empty() && hits == samples.size()) cert.status = CertificateStatus::verified;
  else if (hits > 0) cert.status = CertificateStatus::partial;
  return cert;
}

/// Least d <= max_degree at which certify verifies every sample.
inline std::optional<unsigned> certified_degree(const Ideal& variety, const std::vector<MPoly>& inequalities,
                                                const std::vector<std::vector<Rational>>& samples, FieldMode mode,
                                                unsigned max_degree, const CertifyOptions& opt = {}) {
  for (unsigned d = 1; d <= max_degree; ++d)
    if (certify(variety, inequalities, d, samples, mode, opt).status == CertificateStatus::verified) return d;
  return std::nullopt;
}

}  // namespace sfkit
