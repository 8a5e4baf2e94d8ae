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

#include "kerrsim/level_scheme.hpp"

namespace kerrsim {

/// Builds the rotating-frame Hamiltonian of a level scheme in units of
/// (hbar = 1) angular frequency.  Each coupling contributes
/// weight * rabi |excited><ground| plus the conjugate, and level i carries
/// -detuning[i] on the diagonal.  The result is Hermitian by construction.
inline Eigen::MatrixXcd build_hamiltonian(const LevelScheme& scheme,
                                          const std::vector<FieldMode>& fields) {
  scheme.validate();
  const int n = scheme.size();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (const Coupling& c : scheme.couplings) {
    const FieldMode& field = find_field(fields, c.field_id);
    const cplx amp = c.weight * field.rabi;
    h(c.excited, c.ground) += amp;
    h(c.ground, c.excited) += std::conj(amp);
  }
  for (int i = 0; i < n; ++i) {
    h(i, i) = cplx(-scheme.detuning[static_cast<std::size_t>(i)], 0.0);
  }
  return h;
}

}  // namespace kerrsim
