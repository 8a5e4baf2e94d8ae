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

// Release gate: every check prints one PASS/FAIL line with the measured
// values and its tolerance; the process exits non-zero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kerrsim/kerrsim.hpp"

namespace ks = kerrsim;
using ks::cplx;

namespace {

bool all_passed = true;

void report(int number, bool pass, const std::string& detail) {
  all_passed = all_passed && pass;
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", number,
              detail.c_str());
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

std::vector<ks::FieldMode> m_fields(cplx a1, cplx o1, cplx a2, cplx o2) {
  return {{"alpha1", a1, ks::FieldRole::probe},
          {"Omega1", o1, ks::FieldRole::drive},
          {"alpha2", a2, ks::FieldRole::probe},
          {"Omega2", o2, ks::FieldRole::drive}};
}

cplx random_coupling(std::mt19937& rng, double lo = 0.05, double hi = 2.0) {
  std::uniform_real_distribution<double> mag(lo, hi);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * ks::pi);
  return std::polar(mag(rng), phase(rng));
}

// --------------------------------------------------------------------------
// 1. The closed-form dark state annihilates the resonant interaction
//    Hamiltonian on random field sets.

void criterion_dark_state() {
  Timer timer;
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  std::mt19937 rng(20260814);
  double worst = 0.0;
  const int trials = 1000;
  for (int trial = 0; trial < trials; ++trial) {
    const std::vector<ks::FieldMode> fields =
        m_fields(random_coupling(rng), random_coupling(rng),
                 random_coupling(rng), random_coupling(rng));
    const ks::DarkStateResult state = ks::dark_state(scheme, fields);
    const Eigen::MatrixXcd h = ks::build_hamiltonian(scheme, fields);
    worst = std::max(worst, (h * state.amplitudes).norm() / h.norm());
  }
  const double elapsed = timer.seconds();
  const bool pass = worst <= 1e-12 && elapsed < 5.0;
  std::ostringstream detail;
  detail << "dark-state exactness; max ||H D|| / ||H|| = " << sci(worst)
         << " over " << trials << " random field sets (tol 1e-12), "
         << sci(elapsed) << " s (limit 5 s)";
  report(1, pass, detail.str());
}

// --------------------------------------------------------------------------
// 2. The perturbative eigenvalue converges at second order: the dense-solver
//    discrepancy drops by >= 3.5x when the probe ratio is halved and when
//    both the probe ratio and the two-photon detuning are halved together.
//    Halving the detuning alone scales the error linearly (the discrepancy is
//    exactly linear in the detuning) and is reported as a diagnostic.

double eigenvalue_error(double ratio, double delta) {
  const cplx o1 = std::polar(1.0, 0.3);
  const cplx o2 = std::polar(0.8, -1.1);
  const cplx a1 = std::polar(ratio * std::abs(o1), 0.9);
  const cplx a2 = std::polar(ratio * std::abs(o2), 2.2);
  const std::vector<ks::FieldMode> fields = m_fields(a1, o1, a2, o2);

  const ks::LevelScheme resonant = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  const ks::DarkStateResult formula =
      ks::perturbed_dark_state(resonant, fields, delta);
  const ks::DenseDarkState dense =
      ks::eigen_dark_state(ks::make_m_scheme(1.0, 1.0, 0.0, delta), fields);
  return std::abs(dense.eigenvalue - formula.eigenvalue);
}

void criterion_eigenvalue() {
  Timer timer;
  const double e_coarse = eigenvalue_error(0.1, 1e-2);
  const double e_half_ratio = eigenvalue_error(0.05, 1e-2);
  const double e_half_delta = eigenvalue_error(0.1, 5e-3);
  const double e_joint = eigenvalue_error(0.05, 5e-3);
  const double e_half_ratio_fine = eigenvalue_error(0.05, 5e-3);

  const double ratio_probe = e_coarse / e_half_ratio;
  const double ratio_probe_fine = e_half_delta / e_half_ratio_fine;
  const double ratio_joint = e_coarse / e_joint;
  const double ratio_delta = e_coarse / e_half_delta;

  const double elapsed = timer.seconds();
  const bool pass = ratio_probe >= 3.5 && ratio_probe_fine >= 3.5 &&
                    ratio_joint >= 3.5 && elapsed < 10.0;
  std::ostringstream detail;
  detail << "perturbative eigenvalue convergence; error ratios: probe halving "
         << sci(ratio_probe) << " and " << sci(ratio_probe_fine)
         << ", joint halving " << sci(ratio_joint)
         << " (each >= 3.5; detuning-only halving is linear by construction: "
         << sci(ratio_delta) << "), " << sci(elapsed) << " s (limit 10 s)";
  report(2, pass, detail.str());
}

// --------------------------------------------------------------------------
// 3. Susceptibility interchange: with no ground relaxation and the one-photon
//    detuning mapped to |Omega2|^2 / delta, the two chain susceptibilities
//    have equal magnitude across a 100-point detuning sweep.

void criterion_interchange() {
  Timer timer;
  ks::MediumParams medium;
  medium.density = 1.0;
  medium.wavelength = 1.0;
  medium.doppler_width = 100.0;
  medium.gamma1 = 1.0;
  medium.gamma2 = 1.0;
  medium.ground_relaxation = 0.0;

  const cplx alpha1(0.05, 0.0);
  const cplx omega1 = std::polar(1.0, 0.4);
  const cplx omega2 = std::polar(0.9, -0.7);

  double worst = 0.0;
  const int points = 100;
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    const double delta = 1e-4 * std::pow(1e3, t);
    const double mapped = std::norm(omega2) / delta;
    const cplx chi_m =
        ks::chi_m(medium, alpha1, omega1, omega2, delta).value;
    const cplx chi_n = ks::chi_n(medium, alpha1, omega1, mapped).value;
    worst = std::max(worst,
                     std::abs(std::abs(chi_m) / std::abs(chi_n) - 1.0));
  }
  const double elapsed = timer.seconds();
  const bool pass = worst <= 1e-12 && elapsed < 1.0;
  std::ostringstream detail;
  detail << "susceptibility interchange; max relative magnitude mismatch "
         << sci(worst) << " over " << points
         << " detunings (tol 1e-12), " << sci(elapsed) << " s (limit 1 s)";
  report(3, pass, detail.str());
}

// --------------------------------------------------------------------------
// 4. The Kerr-rate ratio |kappa_m / kappa_n| equals |delta Delta / Omega2^2|
//    on random parameter sets.

void criterion_kerr_ratio() {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> signed_range(-2.0, 2.0);
  double worst = 0.0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const double xi1 = std::abs(random_coupling(rng));
    const double xi2 = std::abs(random_coupling(rng));
    const cplx o1 = random_coupling(rng);
    const cplx o2 = random_coupling(rng);
    double delta = signed_range(rng);
    double big_delta = signed_range(rng);
    if (std::abs(delta) < 1e-3) delta = 1e-3;
    if (std::abs(big_delta) < 1e-3) big_delta = 1e-3;

    const double km = ks::kerr_coefficient_m(xi1, xi2, o1, o2, delta);
    const double kn = ks::kerr_coefficient_n(xi1, xi2, o1, big_delta);
    const double expected =
        std::abs(ks::coupling_ratio(delta, big_delta, o2));
    worst = std::max(worst, std::abs(std::abs(km / kn) / expected - 1.0));
  }
  const bool pass = worst <= 1e-12;
  std::ostringstream detail;
  detail << "Kerr-rate ratio; max |kappa_m/kappa_n| mismatch against "
         << "|delta Delta / Omega2^2| = " << sci(worst) << " over " << trials
         << " random sets (tol 1e-12)";
  report(4, pass, detail.str());
}

// --------------------------------------------------------------------------
// 5. The naturally broadened eight-level scan reproduces the analytic
//    enhancement curve within 5% at q in {0, +-0.2, +-0.5, +-0.8}.

ks::RotationScan criterion_rotation() {
  Timer timer;
  ks::RotationRunConfig config;
  config.gamma = 1.0;
  config.gamma0 = 1e-4;
  config.peak_rabi = 0.1;

  const std::vector<double> grid = {-0.8, -0.5, -0.2, 0.0, 0.2, 0.5, 0.8};
  const ks::RotationScan scan = ks::scan_ellipticity(grid, config);

  double worst = 0.0;
  double at_half = 0.0;
  for (const ks::RotationPoint& p : scan.points) {
    worst = std::max(worst, std::abs(p.normalized / p.analytic - 1.0));
    if (p.ellipticity == 0.5) at_half = p.normalized;
  }
  const double q0 = scan.points[3].normalized;
  const double elapsed = timer.seconds();
  const bool pass = worst <= 0.05 && q0 == 1.0 && elapsed < 120.0;
  std::ostringstream detail;
  detail << "rotation enhancement curve; max |normalized/analytic - 1| = "
         << sci(worst) << " over q in {0, +-0.2, +-0.5, +-0.8} (tol 0.05), "
         << "normalized(0) = " << q0 << ", normalized(0.5) = " << at_half
         << " (analytic 1.2347), " << sci(elapsed) << " s (limit 120 s)";
  report(5, pass, detail.str());
  return scan;
}

// --------------------------------------------------------------------------
// 6. The Doppler-averaged scan stays even in q and normalized at q = 0 while
//    departing from the natural-broadening curve by more than 1% somewhere.

void criterion_doppler_scan() {
  Timer timer;
  ks::RotationRunConfig config;
  config.gamma = 1.0;
  config.gamma0 = 1e-3;
  config.peak_rabi = 1.0;
  config.doppler = true;
  config.doppler_width = 50.0;
  config.velocity_points = 33;

  const std::vector<double> grid = {-0.8, -0.5, -0.2, 0.0, 0.2, 0.5, 0.8};
  const ks::RotationScan scan = ks::scan_ellipticity(grid, config);

  double evenness = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double left = scan.points[i].normalized;
    const double right = scan.points[6 - i].normalized;
    evenness = std::max(evenness, std::abs(left / right - 1.0));
  }
  const double q0 = scan.points[3].normalized;
  double departure = 0.0;
  for (const ks::RotationPoint& p : scan.points) {
    departure = std::max(departure, std::abs(p.normalized / p.analytic - 1.0));
  }
  const double elapsed = timer.seconds();
  const bool pass = evenness <= 1e-8 && q0 == 1.0 && departure > 0.01;
  std::ostringstream detail;
  detail << "Doppler-averaged scan; evenness mismatch " << sci(evenness)
         << " (tol 1e-8), normalized(0) = " << q0
         << ", max departure from the natural-broadening curve "
         << sci(departure) << " (must exceed 0.01), " << sci(elapsed) << " s";
  report(6, pass, detail.str());
}

// --------------------------------------------------------------------------
// 7. Phase-gate truth table, unitarity, and composition.

void criterion_phase_gate() {
  const double eta = 1.2345;
  const ks::GateSpec gate = ks::GateSpec::from_eta(eta);

  double table_error = 0.0;
  for (int n1 = 0; n1 <= 1; ++n1) {
    for (int n2 = 0; n2 <= 1; ++n2) {
      const Eigen::VectorXcd out = ks::apply_gate(gate, ks::fock_state(n1, n2));
      const cplx expected = (n1 == 1 && n2 == 1) ? std::polar(1.0, eta)
                                                 : cplx(1.0, 0.0);
      table_error = std::max(
          table_error,
          (out - expected * ks::fock_state(n1, n2)).norm());
    }
  }

  std::mt19937 rng(4096);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const ks::GateSpec inverse = ks::GateSpec::from_eta(-eta);
  const ks::GateSpec half = ks::GateSpec::from_eta(0.5 * eta);
  double unitarity = 0.0;
  double composition = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXcd state(64);
    for (int i = 0; i < 64; ++i) state(i) = cplx(gauss(rng), gauss(rng));
    state.normalize();

    const Eigen::VectorXcd once = ks::apply_gate(gate, state);
    unitarity = std::max(unitarity, std::abs(once.norm() - 1.0));
    unitarity = std::max(
        unitarity, (ks::apply_gate(inverse, once) - state).norm());
    composition = std::max(
        composition,
        (ks::apply_gate(half, ks::apply_gate(half, state)) - once).norm());
  }

  const bool pass =
      table_error <= 1e-12 && unitarity <= 1e-12 && composition <= 1e-12;
  std::ostringstream detail;
  detail << "phase-gate truth table error " << sci(table_error)
         << ", unitarity/inversion error " << sci(unitarity)
         << ", composition error " << sci(composition)
         << " over 100 random states (tol 1e-12 each)";
  report(7, pass, detail.str());
}

// --------------------------------------------------------------------------
// 8. Steady-state engine oracles: the driven two-level closed form, perfect
//    population trapping in the three-level scheme, and density-matrix
//    physicality over every point of the criterion-5 scan.

void criterion_engine(const ks::DensityMatrixAudit& audit) {
  ks::LevelScheme two_level;
  two_level.levels = {{"e", ks::LevelKind::excited},
                      {"g", ks::LevelKind::ground}};
  two_level.detuning = {0.0, 0.0};
  two_level.decay = {1.0, 0.0};
  two_level.couplings = {{"drive", 0, 1, 1.0}};
  two_level.validate();

  double saturation_error = 0.0;
  for (const double detuning : {0.0, -0.4, 1.3}) {
    for (const double rabi : {0.05, 0.3, 1.0, 4.0}) {
      ks::LevelScheme scheme = two_level;
      scheme.detuning[0] = detuning;
      const ks::DensityMatrix rho = ks::steady_state(ks::build_liouvillian(
          scheme, {{"drive", cplx(rabi, 0.0), ks::FieldRole::drive}}, {}, {}));
      const double s =
          2.0 * rabi * rabi / (detuning * detuning + 0.25);
      const double expected = 0.5 * s / (1.0 + s);
      saturation_error =
          std::max(saturation_error, std::abs(rho.population(0) - expected));
    }
  }

  const ks::LevelScheme lambda = ks::make_lambda_scheme(1.0, 0.0);
  const ks::DensityMatrix trapped = ks::steady_state(ks::build_liouvillian(
      lambda,
      {{"alpha1", cplx(0.3, 0.0), ks::FieldRole::probe},
       {"Omega1", cplx(0.4, 0.0), ks::FieldRole::drive}},
      {}, {}));
  double cpt_excited = 0.0;
  for (int e : lambda.excited_indices()) cpt_excited += trapped.population(e);

  const bool physical = audit.max_trace_error <= 1e-10 &&
                        audit.max_hermiticity_error <= 1e-10 &&
                        audit.min_eigenvalue >= -1e-10;
  const bool pass =
      saturation_error <= 1e-10 && cpt_excited <= 1e-10 && physical;
  std::ostringstream detail;
  detail << "steady-state oracles; two-level saturation error "
         << sci(saturation_error) << " (tol 1e-10), trapped excited "
         << "population " << sci(cpt_excited)
         << " (tol 1e-10); criterion-5 scan physicality: trace error "
         << sci(audit.max_trace_error) << ", hermiticity error "
         << sci(audit.max_hermiticity_error) << " (tol 1e-10 each), min "
         << "eigenvalue " << sci(audit.min_eigenvalue) << " (tol -1e-10)";
  report(8, pass, detail.str());
}

}  // namespace

int main() {
  criterion_dark_state();
  criterion_eigenvalue();
  criterion_interchange();
  criterion_kerr_ratio();
  const ks::RotationScan scan = criterion_rotation();
  criterion_doppler_scan();
  criterion_phase_gate();
  criterion_engine(scan.audit);

  std::printf("%s\n", all_passed ? "all acceptance checks passed"
                                 : "acceptance checks FAILED");
  return all_passed ? 0 : 1;
}
