// Copyright 2026 The kerrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <limits>

#include "kerrsim/common.hpp"

namespace kerrsim {

/// Vapor parameters entering the Doppler-broadened susceptibilities.
/// All rates are angular frequencies in the shared unit system (default:
/// units of gamma1); `density` and `wavelength` only ever appear through the
/// dimensionless prefactor (3 / 8 pi^2) density wavelength^3.
struct MediumParams {
  double density = 0.0;
  double wavelength = 0.0;
  double doppler_width = 0.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double ground_relaxation = 0.0;

  double prefactor() const {
    return 3.0 / (8.0 * pi * pi) * density * wavelength * wavelength *
           wavelength;
  }

  void validate() const {
    if (!(density > 0.0)) throw std::invalid_argument("density must be > 0");
    if (!(wavelength > 0.0)) {
      throw std::invalid_argument("wavelength must be > 0");
    }
    if (!(doppler_width > 0.0)) {
      throw std::invalid_argument("doppler width must be > 0");
    }
    if (!(gamma1 > 0.0) || !(gamma2 > 0.0)) {
      throw std::invalid_argument("decay rates must be > 0");
    }
    if (!(ground_relaxation >= 0.0)) {
      throw std::invalid_argument("ground relaxation must be >= 0");
    }
  }
};

enum class SusceptibilityKind { five_level_chain, four_level_chain };

/// Complex susceptibility together with the inputs it was evaluated from and
/// any validity warnings raised on the way.
struct Susceptibility {
  cplx value{0.0, 0.0};
  SusceptibilityKind kind = SusceptibilityKind::five_level_chain;
  MediumParams params;
  cplx alpha1{0.0, 0.0};
  cplx omega1{0.0, 0.0};
  cplx omega2{0.0, 0.0};
  double delta = 0.0;
  double big_delta = 0.0;
  std::vector<ValidityWarning> warnings;
};

/// Transparency-window check for a Doppler-broadened medium: the drive must
/// dominate the ground-relaxation-fed absorption background,
/// |Omega1| >= safety_factor * W_d sqrt(gamma0 / gamma1).
/// `margin` is |Omega1| divided by that bound (infinite when gamma0 = 0);
/// the check passes when margin >= 1.
struct EitCheck {
  bool satisfied = false;
  double margin = 0.0;
  double threshold = 0.0;
  double safety_factor = 3.0;
};

inline EitCheck check_eit(cplx omega1, double doppler_width,
                          double ground_relaxation, double gamma1,
                          double safety_factor = 3.0) {
  if (!(doppler_width > 0.0) || !(gamma1 > 0.0)) {
    throw std::invalid_argument(
        "doppler width and gamma1 must be > 0 for the transparency check");
  }
  if (!(ground_relaxation >= 0.0)) {
    throw std::invalid_argument("ground relaxation must be >= 0");
  }
  if (!(safety_factor > 0.0)) {
    throw std::invalid_argument("safety factor must be > 0");
  }
  EitCheck out;
  out.safety_factor = safety_factor;
  out.threshold =
      safety_factor * doppler_width * std::sqrt(ground_relaxation / gamma1);
  if (out.threshold == 0.0) {
    out.margin = std::numeric_limits<double>::infinity();
    out.satisfied = true;
    return out;
  }
  out.margin = std::abs(omega1) / out.threshold;
  out.satisfied = out.margin >= 1.0;
  return out;
}

/// Weak-probe ground population transferred by the pump stage:
/// |alpha1|^2 / |Omega1|^2.
inline double probe_b2_population(cplx alpha1, cplx omega1) {
  const double om1 = std::norm(omega1);
  if (om1 == 0.0) {
    throw std::invalid_argument("drive field must be non-zero");
  }
  return std::norm(alpha1) / om1;
}

namespace detail {

inline void probe_ratio_warning(std::vector<ValidityWarning>& warnings,
                                cplx alpha1, cplx omega1) {
  const double ratio = std::abs(alpha1) / std::abs(omega1);
  if (ratio > 0.2) {
    warnings.push_back({"probe-drive-ratio",
                        "probe is not weak relative to the drive", ratio});
  }
}

inline void doppler_width_warning(std::vector<ValidityWarning>& warnings,
                                  const MediumParams& params) {
  const double ratio = params.doppler_width / params.gamma1;
  if (ratio < 10.0) {
    warnings.push_back({"doppler-width",
                        "doppler width does not dominate the natural width",
                        ratio});
  }
}

}  // namespace detail

/// Doppler-broadened cross-Kerr susceptibility of the five-level chain at
/// two-photon detuning delta:
/// chi = -i pref gamma2 (gamma0 + i delta) /
///        [(gamma0 + i delta) W_d + |Omega2|^2] * |alpha1|^2 / |Omega1|^2
/// with pref = (3 / 8 pi^2) density wavelength^3.
inline Susceptibility chi_m(const MediumParams& params, cplx alpha1,
                            cplx omega1, cplx omega2, double delta) {
  params.validate();
  if (omega1 == cplx(0.0, 0.0)) {
    throw std::invalid_argument("drive field Omega1 must be non-zero");
  }
  Susceptibility out;
  out.kind = SusceptibilityKind::five_level_chain;
  out.params = params;
  out.alpha1 = alpha1;
  out.omega1 = omega1;
  out.omega2 = omega2;
  out.delta = delta;

  const cplx gd(params.ground_relaxation, delta);
  const cplx denom = gd * params.doppler_width + std::norm(omega2);
  if (denom == cplx(0.0, 0.0)) {
    throw std::invalid_argument(
        "transparency denominator vanishes: gamma0 = delta = 0 with zero "
        "Omega2");
  }
  out.value = cplx(0.0, -1.0) * params.prefactor() * params.gamma2 * gd /
              denom * (std::norm(alpha1) / std::norm(omega1));

  const EitCheck eit = check_eit(omega1, params.doppler_width,
                                 params.ground_relaxation, params.gamma1);
  if (!eit.satisfied) {
    out.warnings.push_back({"eit-window",
                            "drive too weak for a clean transparency window",
                            eit.margin});
  }
  detail::probe_ratio_warning(out.warnings, alpha1, omega1);
  detail::doppler_width_warning(out.warnings, params);
  return out;
}

/// Doppler-broadened cross-Kerr susceptibility of the four-level chain at
/// one-photon detuning big_delta:
/// chi = -i pref gamma2 / (W_d + i Delta) * |alpha1|^2 / |Omega1|^2.
inline Susceptibility chi_n(const MediumParams& params, cplx alpha1,
                            cplx omega1, double big_delta) {
  params.validate();
  if (omega1 == cplx(0.0, 0.0)) {
    throw std::invalid_argument("drive field Omega1 must be non-zero");
  }
  Susceptibility out;
  out.kind = SusceptibilityKind::four_level_chain;
  out.params = params;
  out.alpha1 = alpha1;
  out.omega1 = omega1;
  out.big_delta = big_delta;
  out.value = cplx(0.0, -1.0) * params.prefactor() * params.gamma2 /
              cplx(params.doppler_width, big_delta) *
              (std::norm(alpha1) / std::norm(omega1));
  detail::probe_ratio_warning(out.warnings, alpha1, omega1);
  detail::doppler_width_warning(out.warnings, params);
  return out;
}

/// Equivalence report between the five- and four-level susceptibilities.
/// With gamma0 = 0 the five-level value at detuning delta has exactly the
/// magnitude of the four-level value at Delta = |Omega2|^2 / delta; that
/// mapping is dimensionally consistent, unlike the literal substitution
/// Delta = delta / |Omega2|^2, which is also evaluated and reported for
/// comparison.
struct InterchangeReport {
  double delta = 0.0;
  double mapped_big_delta = 0.0;
  cplx chi_m_value{0.0, 0.0};
  cplx chi_n_value{0.0, 0.0};
  double magnitude_ratio = 0.0;
  double phase_difference = 0.0;
  double literal_big_delta = 0.0;
  cplx chi_n_literal_value{0.0, 0.0};
  double literal_magnitude_ratio = 0.0;
};

inline InterchangeReport interchange_check(const MediumParams& params,
                                           cplx alpha1, cplx omega1,
                                           cplx omega2, double delta) {
  if (params.ground_relaxation != 0.0) {
    throw std::invalid_argument(
        "interchange_check requires zero ground relaxation");
  }
  if (delta == 0.0) {
    throw std::invalid_argument(
        "interchange_check requires a non-zero two-photon detuning");
  }
  if (omega2 == cplx(0.0, 0.0)) {
    throw std::invalid_argument("drive field Omega2 must be non-zero");
  }
  InterchangeReport out;
  out.delta = delta;
  out.mapped_big_delta = std::norm(omega2) / delta;
  out.literal_big_delta = delta / std::norm(omega2);
  out.chi_m_value = chi_m(params, alpha1, omega1, omega2, delta).value;
  out.chi_n_value = chi_n(params, alpha1, omega1, out.mapped_big_delta).value;
  out.chi_n_literal_value =
      chi_n(params, alpha1, omega1, out.literal_big_delta).value;
  out.magnitude_ratio = std::abs(out.chi_m_value) / std::abs(out.chi_n_value);
  double phase =
      std::arg(out.chi_m_value) - std::arg(out.chi_n_value);
  while (phase > pi) phase -= 2.0 * pi;
  while (phase <= -pi) phase += 2.0 * pi;
  out.phase_difference = phase;
  out.literal_magnitude_ratio =
      std::abs(out.chi_m_value) / std::abs(out.chi_n_literal_value);
  return out;
}

}  // namespace kerrsim
