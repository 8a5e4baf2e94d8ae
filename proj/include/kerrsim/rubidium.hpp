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

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "kerrsim/doppler.hpp"
#include "kerrsim/lindblad.hpp"

namespace kerrsim {

/// Zeeman-resolved F=2 -> F'=1 alkali D-line model: five ground sublevels
/// m = -2..+2 and three excited sublevels m' = -1..+1, driven by the two
/// circular components of elliptically polarized light.

inline constexpr int rb_level_count = 8;

inline int rb_excited_index(int m_excited) {
  if (m_excited < -1 || m_excited > 1) {
    throw std::invalid_argument("excited sublevel out of range");
  }
  return m_excited + 1;
}

inline int rb_ground_index(int m_ground) {
  if (m_ground < -2 || m_ground > 2) {
    throw std::invalid_argument("ground sublevel out of range");
  }
  return m_ground + 5;
}

/// Clebsch-Gordan coefficient <2, m; 1, q | 1, m+q> for the transition from
/// ground sublevel m with polarization q (+1: sigma+, 0: pi, -1: sigma-).
/// Returns 0 for transitions with no target sublevel.
inline double rb_cg(int m_ground, int polarization) {
  if (polarization < -1 || polarization > 1) {
    throw std::invalid_argument("polarization must be -1, 0, or +1");
  }
  const int m_excited = m_ground + polarization;
  if (m_ground < -2 || m_ground > 2 || m_excited < -1 || m_excited > 1) {
    return 0.0;
  }
  static const double s35 = std::sqrt(3.0 / 5.0);
  static const double s310 = std::sqrt(3.0 / 10.0);
  static const double s110 = std::sqrt(1.0 / 10.0);
  static const double s25 = std::sqrt(2.0 / 5.0);
  if (polarization == 1) {
    if (m_ground == -2) return s35;
    if (m_ground == -1) return s310;
    return s110;  // m_ground == 0
  }
  if (polarization == -1) {
    if (m_ground == 2) return s35;
    if (m_ground == 1) return s310;
    return s110;  // m_ground == 0
  }
  if (m_ground == 0) return -s25;
  return -s310;  // m_ground == +-1
}

/// Elliptically polarized light of total intensity |E0|^2 split into circular
/// components |E+-|^2 = (1 +- q) |E0|^2 / 2.  Rabi frequencies are
/// rabi_per_amplitude * E+- with real positive amplitudes.
struct EllipticalField {
  double total_intensity = 0.0;
  double ellipticity = 0.0;
  double rabi_per_amplitude = 1.0;

  void validate() const {
    if (!(total_intensity >= 0.0)) {
      throw std::invalid_argument("intensity must be >= 0");
    }
    if (!(std::abs(ellipticity) < 1.0)) {
      throw std::invalid_argument("ellipticity must lie in (-1, 1)");
    }
    if (!(rabi_per_amplitude > 0.0)) {
      throw std::invalid_argument("rabi scale must be > 0");
    }
  }

  double intensity_plus() const {
    return 0.5 * (1.0 + ellipticity) * total_intensity;
  }
  double intensity_minus() const {
    return 0.5 * (1.0 - ellipticity) * total_intensity;
  }
  cplx omega_plus() const {
    return cplx(rabi_per_amplitude * std::sqrt(intensity_plus()), 0.0);
  }
  cplx omega_minus() const {
    return cplx(rabi_per_amplitude * std::sqrt(intensity_minus()), 0.0);
  }

  /// Field with peak circular Rabi frequency `peak_rabi` at |q| -> 1:
  /// |Omega+-| = peak_rabi * sqrt((1 +- q) / 2).
  static EllipticalField from_peak_rabi(double peak_rabi, double ellipticity) {
    EllipticalField f;
    f.total_intensity = peak_rabi * peak_rabi;
    f.ellipticity = ellipticity;
    f.validate();
    return f;
  }
};

/// The concrete eight-level scheme plus everything the Lindblad engine needs:
/// squared-CG decay branching and the ground Zeeman rate.  The two field ids
/// are "sigma+" and "sigma-"; coupling weights carry the CG amplitudes.
struct RbScheme {
  LevelScheme scheme;
  LindbladOptions options;
  double gamma = 1.0;
  double gamma0 = 0.0;
  double zeeman_rate = 1.0;
  double excited_zeeman_rate = 0.0;
  bool sigma_minus_from_m0_removed = false;

  std::vector<FieldMode> fields(cplx omega_plus, cplx omega_minus) const {
    return {{"sigma+", omega_plus, FieldRole::drive},
            {"sigma-", omega_minus, FieldRole::drive}};
  }

  std::vector<FieldMode> fields(const EllipticalField& field) const {
    field.validate();
    return fields(field.omega_plus(), field.omega_minus());
  }

  /// Per-level diagonal shifts for a longitudinal field B: m * zeeman_rate * B
  /// on ground sublevels, m' * excited_zeeman_rate * B on excited sublevels.
  std::vector<double> zeeman_shifts(double b_field) const {
    std::vector<double> shifts(rb_level_count, 0.0);
    for (int m = -2; m <= 2; ++m) {
      shifts[static_cast<std::size_t>(rb_ground_index(m))] =
          static_cast<double>(m) * zeeman_rate * b_field;
    }
    for (int mp = -1; mp <= 1; ++mp) {
      shifts[static_cast<std::size_t>(rb_excited_index(mp))] =
          static_cast<double>(mp) * excited_zeeman_rate * b_field;
    }
    return shifts;
  }
};

/// Builds the eight-level scheme.  `remove_sigma_minus_from_m0` drops the
/// sigma- coupling from the m=0 ground sublevel (CG sqrt(1/10) zeroed), which
/// opens the five-level chain (-2, -1', 0, +1', +2) into disconnected
/// three-level subsystems; used as the truncated comparison model.  Decay
/// branching always keeps all nine squared-CG channels, including the pi
/// channels that no field drives.
inline RbScheme build_rb_scheme(double gamma, double gamma0,
                                double zeeman_rate = 1.0,
                                GroundRelaxationModel ground_model =
                                    GroundRelaxationModel::isotropic,
                                bool remove_sigma_minus_from_m0 = false,
                                double excited_zeeman_rate = 0.0) {
  RbScheme rb;
  rb.gamma = gamma;
  rb.gamma0 = gamma0;
  rb.zeeman_rate = zeeman_rate;
  rb.excited_zeeman_rate = excited_zeeman_rate;
  rb.sigma_minus_from_m0_removed = remove_sigma_minus_from_m0;

  LevelScheme& s = rb.scheme;
  for (int mp = -1; mp <= 1; ++mp) {
    s.levels.push_back({"e" + std::to_string(mp), LevelKind::excited});
  }
  for (int m = -2; m <= 2; ++m) {
    s.levels.push_back({"g" + std::to_string(m), LevelKind::ground});
  }
  s.detuning.assign(rb_level_count, 0.0);
  s.decay.assign(rb_level_count, 0.0);
  for (int mp = -1; mp <= 1; ++mp) {
    s.decay[static_cast<std::size_t>(rb_excited_index(mp))] = gamma;
  }
  s.ground_relaxation = gamma0;

  for (int m = -2; m <= 2; ++m) {
    for (int q : {+1, -1}) {
      const double cg = rb_cg(m, q);
      if (cg == 0.0) continue;
      if (remove_sigma_minus_from_m0 && m == 0 && q == -1) continue;
      s.couplings.push_back({q > 0 ? "sigma+" : "sigma-",
                             rb_excited_index(m + q), rb_ground_index(m), cg});
    }
  }
  s.validate();

  rb.options.ground_model = ground_model;
  for (int mp = -1; mp <= 1; ++mp) {
    for (int q = -1; q <= 1; ++q) {
      const int m = mp - q;
      if (m < -2 || m > 2) continue;
      const double cg = rb_cg(m, q);
      rb.options.branching.push_back({rb_excited_index(mp),
                                      rb_ground_index(m), cg * cg});
    }
  }
  return rb;
}

/// Reduced circular susceptibilities extracted from steady-state optical
/// coherences: chi+- = scale * sum over sigma+- transitions of
/// CG * <e|rho|g> / Omega+-.  The sum always runs over the full dipole
/// table; truncated schemes alter the dynamics, not the polarization
/// observable.
struct CircularSusceptibilities {
  cplx plus{0.0, 0.0};
  cplx minus{0.0, 0.0};
};

inline CircularSusceptibilities circular_susceptibilities(
    const DensityMatrix& rho, cplx omega_plus, cplx omega_minus,
    double scale = 1.0) {
  if (omega_plus == cplx(0.0, 0.0) || omega_minus == cplx(0.0, 0.0)) {
    throw std::invalid_argument(
        "both circular components must be non-zero to form susceptibilities");
  }
  CircularSusceptibilities out;
  for (int m = -2; m <= 2; ++m) {
    for (int q : {+1, -1}) {
      const double cg = rb_cg(m, q);
      if (cg == 0.0) continue;
      const cplx coherence =
          rho.matrix(rb_excited_index(m + q), rb_ground_index(m));
      if (q > 0) {
        out.plus += scale * cg * coherence / omega_plus;
      } else {
        out.minus += scale * cg * coherence / omega_minus;
      }
    }
  }
  return out;
}

/// Polarization rotation from circular birefringence:
/// angle = (pi L / lambda) Re(chi+ - chi-).  Warns when the absorption depth
/// |Im chi| 2 pi L / lambda is not small.
struct RotationAngle {
  double angle = 0.0;
  std::vector<ValidityWarning> warnings;
};

inline RotationAngle rotation_angle(const CircularSusceptibilities& chi,
                                    double cell_length, double wavelength) {
  if (!(cell_length > 0.0) || !(wavelength > 0.0)) {
    throw std::invalid_argument("cell length and wavelength must be > 0");
  }
  if (!std::isfinite(chi.plus.real()) || !std::isfinite(chi.plus.imag()) ||
      !std::isfinite(chi.minus.real()) || !std::isfinite(chi.minus.imag())) {
    throw std::invalid_argument("non-finite susceptibility");
  }
  RotationAngle out;
  out.angle =
      pi * cell_length / wavelength * (chi.plus.real() - chi.minus.real());
  const double depth = 2.0 * pi * cell_length / wavelength *
                       std::max(std::abs(chi.plus.imag()),
                                std::abs(chi.minus.imag()));
  if (depth > 0.1) {
    out.warnings.push_back({"absorption-depth",
                            "medium is not optically thin for this estimate",
                            depth});
  }
  return out;
}

/// Analytic normalized rotation-slope enhancement for the five-level chain
/// versus the isolated three-level subsystem at ellipticity q:
/// 1/2 + (2 + q^2) / (2 - q^2)^2.
inline double rot1_formula(double q) {
  const double q2 = q * q;
  if (!(q2 < 2.0)) {
    throw std::invalid_argument("ellipticity magnitude must be below sqrt(2)");
  }
  return 0.5 + (2.0 + q2) / ((2.0 - q2) * (2.0 - q2));
}

/// Options for rotation-slope evaluation and ellipticity scans.
struct RotationRunConfig {
  double gamma = 1.0;
  double gamma0 = 1e-4;
  double zeeman_rate = 1.0;
  double peak_rabi = 0.1;
  /// Central-difference magnetic-field step; 0 selects the default
  /// 0.01 * gamma0 / zeeman_rate.
  double b_step = 0.0;
  bool doppler = false;
  double doppler_width = 0.0;
  int velocity_points = 33;
  bool richardson_check = true;
  double richardson_tol = 0.005;
  GroundRelaxationModel ground_model = GroundRelaxationModel::isotropic;
  bool truncated_baseline = false;
  double excited_zeeman_rate = 0.0;
  double cell_length = 1.0;
  double wavelength = 1.0;
  double chi_scale = 1.0;
  int threads = 1;

  double effective_b_step() const {
    if (b_step > 0.0) return b_step;
    if (!(gamma0 > 0.0)) {
      throw std::invalid_argument(
          "default B step needs gamma0 > 0; set b_step explicitly");
    }
    return 0.01 * gamma0 / zeeman_rate;
  }
};

/// Worst physicality violations over a set of steady-state solutions.
struct DensityMatrixAudit {
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 1.0;

  void record(const DensityMatrix& rho) {
    max_trace_error = std::max(max_trace_error, rho.trace_error());
    max_hermiticity_error =
        std::max(max_hermiticity_error, rho.hermiticity_error());
    min_eigenvalue = std::min(min_eigenvalue, rho.min_eigenvalue());
  }

  void merge(const DensityMatrixAudit& other) {
    max_trace_error = std::max(max_trace_error, other.max_trace_error);
    max_hermiticity_error =
        std::max(max_hermiticity_error, other.max_hermiticity_error);
    min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
  }
};

namespace detail {

/// Velocity-averaged rotation angle at one magnetic field value.
inline double rb_rotation_angle(const RbScheme& rb,
                                const EllipticalField& field, double b_field,
                                const RotationRunConfig& config,
                                DensityMatrixAudit* audit) {
  const std::vector<FieldMode> fields = rb.fields(field);
  const cplx op = field.omega_plus();
  const cplx om = field.omega_minus();
  const std::vector<double> shifts = rb.zeeman_shifts(b_field);

  VelocityGrid grid =
      config.doppler
          ? VelocityGrid::gauss_hermite(config.velocity_points,
                                        config.doppler_width)
          : VelocityGrid::gauss_hermite(1, 0.0);

  struct ClassResult {
    double angle = 0.0;
    DensityMatrixAudit audit;
  };
  std::vector<ClassResult> results(grid.classes.size());

  parallel_for(grid.classes.size(), config.threads, [&](std::size_t i) {
    LevelScheme shifted = rb.scheme;
    for (int e : shifted.excited_indices()) {
      shifted.detuning[static_cast<std::size_t>(e)] += grid.classes[i].shift;
    }
    const DensityMatrix rho = steady_state(
        build_liouvillian(shifted, fields, shifts, rb.options));
    results[i].audit.record(rho);
    const CircularSusceptibilities chi =
        circular_susceptibilities(rho, op, om, config.chi_scale);
    const RotationAngle angle =
        rotation_angle(chi, config.cell_length, config.wavelength);
    results[i].angle = angle.angle;
  });

  double total = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!std::isfinite(results[i].angle)) {
      throw std::runtime_error("rotation angle non-finite at velocity class " +
                               std::to_string(i));
    }
    total += grid.classes[i].weight * results[i].angle;
    if (audit) audit->merge(results[i].audit);
  }
  return total;
}

}  // namespace detail

/// Central-difference rotation slope d(angle)/dB at B = 0 for ellipticity q.
/// With richardson_check enabled the slope is recomputed at half step and the
/// two estimates must agree to richardson_tol; failure throws.
inline double rotation_slope(const RbScheme& rb, const EllipticalField& field,
                             const RotationRunConfig& config,
                             DensityMatrixAudit* audit = nullptr) {
  const double h = config.effective_b_step();
  const auto slope_at = [&](double step) {
    const double plus =
        detail::rb_rotation_angle(rb, field, step, config, audit);
    const double minus =
        detail::rb_rotation_angle(rb, field, -step, config, audit);
    return (plus - minus) / (2.0 * step);
  };
  const double slope = slope_at(h);
  if (config.richardson_check) {
    const double refined = slope_at(0.5 * h);
    const double scale = std::max(std::abs(refined), std::abs(slope));
    if (scale > 0.0 &&
        std::abs(refined - slope) > config.richardson_tol * scale) {
      throw std::runtime_error(
          "rotation slope not converged in the magnetic-field step");
    }
  }
  return slope;
}

/// Slope of the isolated three-level subsystem (m = -1, m' = 0, m = +1) with
/// the same circular amplitudes, CG arms sqrt(3/10), equal decay branching to
/// the two retained ground levels, and the same ground-relaxation model; the
/// analytic enhancement formula is defined against this comparator.
inline double isolated_lambda_slope(const EllipticalField& field,
                                    const RotationRunConfig& config) {
  field.validate();
  LevelScheme s;
  s.levels = {{"e0", LevelKind::excited},
              {"g-1", LevelKind::ground},
              {"g+1", LevelKind::ground}};
  s.detuning = {0.0, 0.0, 0.0};
  s.decay = {config.gamma, 0.0, 0.0};
  s.ground_relaxation = config.gamma0;
  const double cg = std::sqrt(3.0 / 10.0);
  s.couplings = {{"sigma+", 0, 1, cg}, {"sigma-", 0, 2, cg}};
  s.validate();

  const std::vector<FieldMode> fields = {
      {"sigma+", field.omega_plus(), FieldRole::drive},
      {"sigma-", field.omega_minus(), FieldRole::drive}};
  const cplx op = field.omega_plus();
  const cplx om = field.omega_minus();

  const double h = config.effective_b_step();
  const auto angle_at = [&](double b_field) {
    const std::vector<double> shifts = {
        0.0, -config.zeeman_rate * b_field, config.zeeman_rate * b_field};
    const DensityMatrix rho =
        steady_state(build_liouvillian(s, fields, shifts, {}));
    const cplx chi_plus = config.chi_scale * cg * rho.matrix(0, 1) / op;
    const cplx chi_minus = config.chi_scale * cg * rho.matrix(0, 2) / om;
    return pi * config.cell_length / config.wavelength *
           (chi_plus.real() - chi_minus.real());
  };
  return (angle_at(h) - angle_at(-h)) / (2.0 * h);
}

/// One scan point: raw and normalized slope next to the analytic curve.
struct RotationPoint {
  double ellipticity = 0.0;
  double slope = 0.0;
  double normalized = 0.0;
  double analytic = 0.0;
};

struct RotationScan {
  std::vector<RotationPoint> points;
  double reference_slope = 0.0;
  DensityMatrixAudit audit;
  RotationRunConfig config;
};

/// Rotation slope versus ellipticity, normalized by the q = 0 slope (which is
/// always evaluated, whether or not 0 is on the grid).  The grid must be
/// strictly increasing with |q| < 0.95.
inline RotationScan scan_ellipticity(const std::vector<double>& q_values,
                                     const RotationRunConfig& config) {
  if (q_values.empty()) {
    throw std::invalid_argument("ellipticity grid is empty");
  }
  for (std::size_t i = 0; i < q_values.size(); ++i) {
    if (!(std::abs(q_values[i]) < 0.95)) {
      throw std::invalid_argument(
          "ellipticity grid must stay within (-0.95, 0.95)");
    }
    if (i > 0 && !(q_values[i] > q_values[i - 1])) {
      throw std::invalid_argument(
          "ellipticity grid must be strictly increasing");
    }
  }

  const RbScheme rb = build_rb_scheme(
      config.gamma, config.gamma0, config.zeeman_rate, config.ground_model,
      config.truncated_baseline, config.excited_zeeman_rate);

  RotationScan scan;
  scan.config = config;
  scan.reference_slope = rotation_slope(
      rb, EllipticalField::from_peak_rabi(config.peak_rabi, 0.0), config,
      &scan.audit);
  if (scan.reference_slope == 0.0) {
    throw std::runtime_error("reference slope at q = 0 vanished");
  }

  scan.points.reserve(q_values.size());
  for (double q : q_values) {
    RotationPoint point;
    point.ellipticity = q;
    point.slope =
        q == 0.0 ? scan.reference_slope
                 : rotation_slope(
                       rb, EllipticalField::from_peak_rabi(config.peak_rabi, q),
                       config, &scan.audit);
    point.normalized = point.slope / scan.reference_slope;
    point.analytic = rot1_formula(q);
    scan.points.push_back(point);
  }
  return scan;
}

}  // namespace kerrsim
