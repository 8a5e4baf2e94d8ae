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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kerrsim/common.hpp"
#include "kerrsim/kerr.hpp"

namespace kerrsim {

/// Cross-phase gate generated by the cross-Kerr interaction eta * n1 * n2
/// between two quantized probe modes: |n1, n2> -> exp(i eta n1 n2) |n1, n2>.

inline constexpr int default_fock_cutoff = 8;

/// Conditional phase accumulated over interaction time t,
/// eta = hbar * delta * xi1^2 * xi2^2 * t / (|Omega1|^2 |Omega2|^2).
/// The dimensionless convention sets hbar = 1 (eta = -kappa * t for the
/// five-level-chain Kerr coefficient); the hbar argument exposes the variant
/// that keeps an explicit hbar factor.
inline double gate_phase(double delta, double xi1, double xi2, cplx omega1,
                         cplx omega2, double t, double hbar = 1.0) {
  return -hbar * kerr_coefficient_m(xi1, xi2, omega1, omega2, delta) * t;
}

/// Two-mode Fock state |n1, n2> with per-mode dimension `cutoff`
/// (photon numbers 0 .. cutoff-1), stored at index n1 * cutoff + n2.
inline Eigen::Index fock_index(int n1, int n2,
                               int cutoff = default_fock_cutoff) {
  if (cutoff < 1) {
    throw std::invalid_argument("cutoff must be >= 1");
  }
  if (n1 < 0 || n1 >= cutoff || n2 < 0 || n2 >= cutoff) {
    throw std::out_of_range("photon number outside the truncated basis");
  }
  return static_cast<Eigen::Index>(n1) * cutoff + n2;
}

inline Eigen::VectorXcd fock_state(int n1, int n2,
                                   int cutoff = default_fock_cutoff) {
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(
      static_cast<Eigen::Index>(cutoff) * cutoff);
  state(fock_index(n1, n2, cutoff)) = cplx(1.0, 0.0);
  return state;
}

/// Gate parameterization.  `direct` specs carry only the phase; `computed`
/// specs remember the physical parameters they were derived from.
struct GateSpec {
  enum class Provenance { direct, computed };

  struct Parameters {
    double delta = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    cplx omega1{0.0, 0.0};
    cplx omega2{0.0, 0.0};
    double time = 0.0;
    double hbar = 1.0;
  };

  double eta = 0.0;
  Provenance provenance = Provenance::direct;
  std::optional<Parameters> parameters;

  static GateSpec from_eta(double eta) {
    GateSpec spec;
    spec.eta = eta;
    spec.provenance = Provenance::direct;
    return spec;
  }

  static GateSpec from_parameters(double delta, double xi1, double xi2,
                                  cplx omega1, cplx omega2, double t,
                                  double hbar = 1.0) {
    GateSpec spec;
    spec.eta = gate_phase(delta, xi1, xi2, omega1, omega2, t, hbar);
    spec.provenance = Provenance::computed;
    spec.parameters = Parameters{delta, xi1, xi2, omega1, omega2, t, hbar};
    return spec;
  }
};

/// Applies the diagonal gate to a normalized two-mode state.
inline Eigen::VectorXcd apply_gate(const GateSpec& spec,
                                   const Eigen::VectorXcd& state,
                                   int cutoff = default_fock_cutoff) {
  if (cutoff < 1) {
    throw std::invalid_argument("cutoff must be >= 1");
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(cutoff) * cutoff;
  if (state.size() != dim) {
    throw std::invalid_argument("state dimension does not match cutoff");
  }
  if (std::abs(state.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("state is not normalized");
  }
  Eigen::VectorXcd out(dim);
  for (int n1 = 0; n1 < cutoff; ++n1) {
    for (int n2 = 0; n2 < cutoff; ++n2) {
      const Eigen::Index i = fock_index(n1, n2, cutoff);
      const double phase = spec.eta * n1 * n2;
      out(i) = state(i) * std::polar(1.0, phase);
    }
  }
  return out;
}

/// Action on the four computational (0/1 photon) basis states.  Only |1,1>
/// acquires the conditional phase.
struct TruthTableRow {
  int n1 = 0;
  int n2 = 0;
  cplx factor{1.0, 0.0};
};

inline std::vector<TruthTableRow> truth_table(const GateSpec& spec) {
  std::vector<TruthTableRow> rows;
  rows.reserve(4);
  for (int n1 = 0; n1 <= 1; ++n1) {
    for (int n2 = 0; n2 <= 1; ++n2) {
      rows.push_back({n1, n2, std::polar(1.0, spec.eta * n1 * n2)});
    }
  }
  return rows;
}

}  // namespace kerrsim
