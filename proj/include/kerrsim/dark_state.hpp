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

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "kerrsim/hamiltonian.hpp"
#include "kerrsim/level_scheme.hpp"

namespace kerrsim {

/// Null (or near-null) eigenvector of a coupled level scheme.
///
/// `amplitudes` is the canonical representative: its global phase is fixed by
/// making the largest-magnitude ground amplitude real and positive (ties are
/// broken toward the lowest level index).  When the null space is degenerate,
/// `null_basis` holds an orthonormal basis and `multiplicity` its dimension;
/// `amplitudes` is then the first basis vector.
struct DarkStateResult {
  Eigen::VectorXcd amplitudes;
  std::vector<Eigen::VectorXcd> null_basis;
  int multiplicity = 1;
  double eigenvalue = 0.0;
  double zeta = 1.0;
  bool is_exact = true;
  std::vector<ValidityWarning> warnings;
};

/// Regime bounds for the perturbative dark state; violations are reported as
/// warnings rather than errors.
struct PerturbationLimits {
  double max_probe_drive_ratio = 0.2;
  double max_detuning_fraction = 0.1;
};

namespace detail {

inline void fix_phase(Eigen::VectorXcd& v, const LevelScheme& scheme) {
  if (v.size() == 0) return;
  int pick = -1;
  double best = 0.0;
  for (int i = 0; i < scheme.size(); ++i) {
    if (scheme.is_excited(i)) continue;
    const double mag = std::abs(v(i));
    if (mag > best * (1.0 + 1e-12)) {
      best = mag;
      pick = i;
    }
  }
  if (pick < 0 || best == 0.0) {
    for (int i = 0; i < v.size(); ++i) {
      const double mag = std::abs(v(i));
      if (mag > best * (1.0 + 1e-12)) {
        best = mag;
        pick = i;
      }
    }
  }
  if (pick < 0 || best == 0.0) return;
  v *= std::conj(v(pick)) / best;
  v(pick) = cplx(std::abs(v(pick)), 0.0);
}

/// Effective Rabi amplitudes (alpha1, Omega1, alpha2, Omega2) when the scheme
/// has the five-level chain layout of make_m_scheme, std::nullopt otherwise.
inline std::optional<std::array<cplx, 4>> m_chain_amplitudes(
    const LevelScheme& scheme, const std::vector<FieldMode>& fields) {
  if (scheme.size() != 5 || scheme.couplings.size() != 4) return std::nullopt;
  if (!scheme.is_excited(0) || !scheme.is_excited(1) || scheme.is_excited(2) ||
      scheme.is_excited(3) || scheme.is_excited(4)) {
    return std::nullopt;
  }
  std::array<cplx, 4> amp{};
  std::array<bool, 4> found{};
  constexpr std::array<std::pair<int, int>, 4> slots = {
      {{0, 2}, {0, 3}, {1, 3}, {1, 4}}};
  for (const Coupling& c : scheme.couplings) {
    bool matched = false;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (c.excited == slots[k].first && c.ground == slots[k].second) {
        if (found[k]) return std::nullopt;
        amp[k] = c.weight * find_field(fields, c.field_id).rabi;
        found[k] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  for (bool f : found) {
    if (!f) return std::nullopt;
  }
  return amp;
}

/// Effective Rabi amplitudes (alpha1, Omega1) for the make_lambda_scheme
/// layout, std::nullopt otherwise.
inline std::optional<std::array<cplx, 2>> lambda_amplitudes(
    const LevelScheme& scheme, const std::vector<FieldMode>& fields) {
  if (scheme.size() != 3 || scheme.couplings.size() != 2) return std::nullopt;
  if (!scheme.is_excited(0) || scheme.is_excited(1) || scheme.is_excited(2)) {
    return std::nullopt;
  }
  std::array<cplx, 2> amp{};
  std::array<bool, 2> found{};
  for (const Coupling& c : scheme.couplings) {
    if (c.excited == 0 && c.ground == 1 && !found[0]) {
      amp[0] = c.weight * find_field(fields, c.field_id).rabi;
      found[0] = true;
    } else if (c.excited == 0 && c.ground == 2 && !found[1]) {
      amp[1] = c.weight * find_field(fields, c.field_id).rabi;
      found[1] = true;
    } else {
      return std::nullopt;
    }
  }
  if (!found[0] || !found[1]) return std::nullopt;
  return amp;
}

inline std::vector<Eigen::VectorXcd> null_space(const Eigen::MatrixXcd& h) {
  const int n = static_cast<int>(h.rows());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double scale = sigma.size() > 0 ? sigma(0) : 0.0;
  const double tol =
      scale * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
  std::vector<Eigen::VectorXcd> basis;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= tol) basis.push_back(svd.matrixV().col(i));
  }
  return basis;
}

}  // namespace detail

/// Zero-eigenvalue eigenstate of the scheme Hamiltonian at zero two-photon
/// detuning.  Uses the closed-form ground-state superposition for the
/// three-level and five-level chain layouts and falls back to a dense null
/// space computation otherwise.
///
/// Throws std::invalid_argument when any detuning is non-zero (use
/// perturbed_dark_state) and std::runtime_error when the Hamiltonian has an
/// empty null space.
inline DarkStateResult dark_state(const LevelScheme& scheme,
                                  const std::vector<FieldMode>& fields) {
  scheme.validate();
  for (double d : scheme.detuning) {
    if (d != 0.0) {
      throw std::invalid_argument(
          "dark_state requires zero detunings; use perturbed_dark_state for a "
          "finite two-photon detuning");
    }
  }

  DarkStateResult out;
  const int n = scheme.size();

  if (auto m = detail::m_chain_amplitudes(scheme, fields)) {
    const cplx alpha1 = (*m)[0], omega1 = (*m)[1];
    const cplx alpha2 = (*m)[2], omega2 = (*m)[3];
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(2) = omega1 * omega2;
    v(3) = -omega2 * alpha1;
    v(4) = alpha1 * alpha2;
    const double norm = v.norm();
    if (norm > 0.0) {
      v /= norm;
      detail::fix_phase(v, scheme);
      out.amplitudes = v;
      out.null_basis = {v};
      out.multiplicity = 1;
      return out;
    }
  } else if (auto lam = detail::lambda_amplitudes(scheme, fields)) {
    const cplx alpha1 = (*lam)[0], omega1 = (*lam)[1];
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(1) = omega1;
    v(2) = -alpha1;
    const double norm = v.norm();
    if (norm > 0.0) {
      v /= norm;
      detail::fix_phase(v, scheme);
      out.amplitudes = v;
      out.null_basis = {v};
      out.multiplicity = 1;
      return out;
    }
  }

  const Eigen::MatrixXcd h = build_hamiltonian(scheme, fields);
  std::vector<Eigen::VectorXcd> basis = detail::null_space(h);
  if (basis.empty()) {
    throw std::runtime_error(
        "level scheme has no dark state: Hamiltonian null space is empty");
  }
  for (Eigen::VectorXcd& v : basis) detail::fix_phase(v, scheme);
  out.amplitudes = basis.front();
  out.multiplicity = static_cast<int>(basis.size());
  out.null_basis = std::move(basis);
  return out;
}

/// First-order perturbed dark state of the five-level chain for a small
/// two-photon detuning `delta` placed on the end ground level.  The scheme
/// must carry zero stored detunings; `delta` enters only through the
/// perturbative formulas.  The normalization parameter zeta is computed
/// exactly from the corrected vector.  Regime violations (probe/drive ratio,
/// detuning bound) are attached as warnings.
inline DarkStateResult perturbed_dark_state(
    const LevelScheme& scheme, const std::vector<FieldMode>& fields,
    double delta, const PerturbationLimits& limits = {}) {
  scheme.validate();
  for (double d : scheme.detuning) {
    if (d != 0.0) {
      throw std::invalid_argument(
          "perturbed_dark_state uses the delta argument; scheme detunings "
          "must be zero");
    }
  }
  auto m = detail::m_chain_amplitudes(scheme, fields);
  if (!m) {
    throw std::invalid_argument(
        "perturbed_dark_state requires the five-level chain layout");
  }
  const cplx alpha1 = (*m)[0], omega1 = (*m)[1];
  const cplx alpha2 = (*m)[2], omega2 = (*m)[3];
  const double om1 = std::abs(omega1);
  const double om2 = std::abs(omega2);
  if (om1 == 0.0 || om2 == 0.0) {
    throw std::invalid_argument(
        "perturbed_dark_state requires non-zero drive fields");
  }

  DarkStateResult out;
  const double r1 = std::abs(alpha1) / om1;
  const double r2 = std::abs(alpha2) / om2;
  if (r1 > limits.max_probe_drive_ratio) {
    out.warnings.push_back(
        {"probe-drive-ratio",
         "|alpha1/Omega1| exceeds the weak-probe bound", r1});
  }
  if (r2 > limits.max_probe_drive_ratio) {
    out.warnings.push_back(
        {"probe-drive-ratio",
         "|alpha2/Omega2| exceeds the weak-probe bound", r2});
  }
  const double gamma2 = scheme.decay[1];
  const double detuning_bound =
      limits.max_detuning_fraction * std::min(gamma2, om2 * om2 / gamma2);
  if (std::abs(delta) > detuning_bound && detuning_bound > 0.0) {
    out.warnings.push_back({"detuning-bound",
                            "two-photon detuning too large for the "
                            "perturbative dark state",
                            std::abs(delta) / detuning_bound});
  }

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(5);
  v(2) = omega1 * omega2;
  v(3) = -omega2 * alpha1;
  v(4) = alpha1 * alpha2;
  const double norm = v.norm();
  if (norm == 0.0) {
    throw std::runtime_error(
        "dark state is degenerate; perturbative correction undefined");
  }
  v /= norm;
  v(0) = -delta * std::conj(alpha1) * std::norm(alpha2) / (om1 * om1 * om2 * om2);
  v(1) = delta * alpha1 * alpha2 / (om1 * om2 * om2);

  const double corrected_norm = v.norm();
  out.zeta = 1.0 / corrected_norm;
  v /= corrected_norm;
  detail::fix_phase(v, scheme);
  out.amplitudes = v;
  out.null_basis = {v};
  out.multiplicity = 1;
  out.eigenvalue =
      -delta * std::norm(alpha1) * std::norm(alpha2) / (om1 * om1 * om2 * om2);
  out.is_exact = (delta == 0.0);
  return out;
}

/// Dense-diagonalization reference: the eigenpair of the full Hamiltonian
/// (stored detunings included) with the smallest absolute eigenvalue.
struct DenseDarkState {
  Eigen::VectorXcd amplitudes;
  double eigenvalue = 0.0;
};

inline DenseDarkState eigen_dark_state(const LevelScheme& scheme,
                                       const std::vector<FieldMode>& fields) {
  const Eigen::MatrixXcd h = build_hamiltonian(scheme, fields);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("dense eigensolver failed to converge");
  }
  int pick = 0;
  for (int i = 1; i < solver.eigenvalues().size(); ++i) {
    if (std::abs(solver.eigenvalues()(i)) <
        std::abs(solver.eigenvalues()(pick))) {
      pick = i;
    }
  }
  DenseDarkState out;
  out.eigenvalue = solver.eigenvalues()(pick);
  Eigen::VectorXcd v = solver.eigenvectors().col(pick);
  detail::fix_phase(v, scheme);
  out.amplitudes = v;
  return out;
}

}  // namespace kerrsim
