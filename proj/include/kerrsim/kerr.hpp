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

#include "kerrsim/level_scheme.hpp"

namespace kerrsim {

/// Vacuum coupling rate of a quantized probe mode,
/// xi = sqrt(2 pi p^2 nu / (hbar V)) for dipole moment p, carrier frequency
/// nu and quantization volume V.  hbar defaults to 1 so that xi comes out in
/// the same frequency units as the Rabi frequencies.
inline double xi_coupling(double dipole_moment, double frequency,
                          double mode_volume, double hbar = 1.0) {
  if (!(dipole_moment >= 0.0)) {
    throw std::invalid_argument("dipole moment must be >= 0");
  }
  if (!(frequency > 0.0)) {
    throw std::invalid_argument("mode frequency must be > 0");
  }
  if (!(mode_volume > 0.0)) {
    throw std::invalid_argument("quantization volume must be > 0");
  }
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("hbar must be > 0");
  }
  return std::sqrt(2.0 * pi * dipole_moment * dipole_moment * frequency /
                   (hbar * mode_volume));
}

inline double xi_coupling(const FieldMode& field, double hbar = 1.0) {
  return xi_coupling(field.dipole_moment, field.frequency, field.mode_volume,
                     hbar);
}

/// Cross-Kerr rate of the five-level chain:
/// kappa = -delta xi1^2 xi2^2 / (|Omega1|^2 |Omega2|^2).
inline double kerr_coefficient_m(double xi1, double xi2, cplx omega1,
                                 cplx omega2, double delta) {
  const double om1 = std::norm(omega1);
  const double om2 = std::norm(omega2);
  if (om1 == 0.0 || om2 == 0.0) {
    throw std::invalid_argument("drive fields must be non-zero");
  }
  return -delta * xi1 * xi1 * xi2 * xi2 / (om1 * om2);
}

/// Cross-Kerr rate of the four-level chain:
/// kappa = xi1^2 xi2^2 / (Delta |Omega1|^2).
inline double kerr_coefficient_n(double xi1, double xi2, cplx omega1,
                                 double big_delta) {
  const double om1 = std::norm(omega1);
  if (om1 == 0.0) {
    throw std::invalid_argument("drive field must be non-zero");
  }
  if (big_delta == 0.0) {
    throw std::invalid_argument(
        "one-photon detuning must be non-zero for the four-level Kerr rate");
  }
  return xi1 * xi1 * xi2 * xi2 / (big_delta * om1);
}

/// Ratio delta * Delta / |Omega2|^2 relating the five- and four-level Kerr
/// rates at equal couplings; |kappa_m / kappa_n| equals its magnitude.
inline double coupling_ratio(double delta, double big_delta, cplx omega2) {
  const double om2 = std::norm(omega2);
  if (om2 == 0.0) {
    throw std::invalid_argument("drive field must be non-zero");
  }
  return delta * big_delta / om2;
}

}  // namespace kerrsim
