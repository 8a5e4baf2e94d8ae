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
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kerrsim/common.hpp"

namespace kerrsim {

enum class LevelKind { ground, excited };

struct Level {
  std::string label;
  LevelKind kind = LevelKind::ground;
};

/// Dipole coupling between one excited and one ground level, driven by the
/// field named `field_id`.  The effective Rabi frequency of the transition is
/// weight * field.rabi; the weight carries a transition amplitude such as a
/// Clebsch-Gordan coefficient and defaults to 1.
struct Coupling {
  std::string field_id;
  int excited = -1;
  int ground = -1;
  double weight = 1.0;
};

enum class FieldRole { probe, drive };

/// One classical field mode.  `rabi` is the Rabi frequency in units of the
/// natural linewidth scale used by the scheme.  The quantization constants
/// (dipole moment, carrier frequency, mode volume) are optional and only
/// needed when converting to a per-photon coupling.
struct FieldMode {
  std::string id;
  cplx rabi{0.0, 0.0};
  FieldRole role = FieldRole::probe;
  double dipole_moment = 0.0;
  double frequency = 0.0;
  double mode_volume = 0.0;
  double wavelength = 0.0;
};

/// Atomic level structure plus its dissipation constants.
///
/// Conventions:
///  - `detuning[i]` is the rotating-frame offset of level i; the Hamiltonian
///    diagonal carries -detuning[i].
///  - `decay[i]` is the total population decay rate of level i and must be
///    positive for excited levels and zero for ground levels.
///  - `ground_relaxation` is the slow ground-state relaxation rate, applied
///    uniformly over the ground manifold.
struct LevelScheme {
  std::vector<Level> levels;
  std::vector<double> detuning;
  std::vector<double> decay;
  double ground_relaxation = 0.0;
  std::vector<Coupling> couplings;

  int size() const { return static_cast<int>(levels.size()); }

  bool is_excited(int i) const {
    return levels.at(static_cast<std::size_t>(i)).kind == LevelKind::excited;
  }

  int index_of(std::string_view label) const {
    for (int i = 0; i < size(); ++i) {
      if (levels[static_cast<std::size_t>(i)].label == label) return i;
    }
    throw std::invalid_argument("unknown level label: " + std::string(label));
  }

  std::vector<int> ground_indices() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      if (!is_excited(i)) out.push_back(i);
    }
    return out;
  }

  std::vector<int> excited_indices() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      if (is_excited(i)) out.push_back(i);
    }
    return out;
  }

  /// Checks structural invariants; throws std::invalid_argument on the first
  /// violation.
  void validate() const {
    const std::size_t n = levels.size();
    if (n == 0) throw std::invalid_argument("level scheme has no levels");
    if (detuning.size() != n || decay.size() != n) {
      throw std::invalid_argument(
          "detuning and decay arrays must match the level count");
    }
    std::set<std::string> labels;
    for (const Level& level : levels) {
      if (level.label.empty()) {
        throw std::invalid_argument("level labels must be non-empty");
      }
      if (!labels.insert(level.label).second) {
        throw std::invalid_argument("duplicate level label: " + level.label);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(detuning[i])) {
        throw std::invalid_argument("non-finite detuning on level " +
                                    levels[i].label);
      }
      if (levels[i].kind == LevelKind::excited) {
        if (!(decay[i] > 0.0)) {
          throw std::invalid_argument("excited level " + levels[i].label +
                                      " needs a positive decay rate");
        }
      } else if (decay[i] != 0.0) {
        throw std::invalid_argument("ground level " + levels[i].label +
                                    " must have zero decay rate");
      }
    }
    if (!(ground_relaxation >= 0.0)) {
      throw std::invalid_argument("ground relaxation rate must be >= 0");
    }
    std::set<std::pair<int, int>> seen;
    for (const Coupling& c : couplings) {
      if (c.excited < 0 || c.excited >= static_cast<int>(n) || c.ground < 0 ||
          c.ground >= static_cast<int>(n)) {
        throw std::invalid_argument("coupling index out of range");
      }
      if (!is_excited(c.excited)) {
        throw std::invalid_argument(
            "coupling upper level is not an excited level: " +
            levels[static_cast<std::size_t>(c.excited)].label);
      }
      if (is_excited(c.ground)) {
        throw std::invalid_argument(
            "coupling lower level is not a ground level: " +
            levels[static_cast<std::size_t>(c.ground)].label);
      }
      if (c.field_id.empty()) {
        throw std::invalid_argument("coupling has an empty field id");
      }
      if (!std::isfinite(c.weight)) {
        throw std::invalid_argument("coupling weight must be finite");
      }
      if (!seen.insert({c.excited, c.ground}).second) {
        throw std::invalid_argument("duplicate coupling between levels " +
                                    levels[static_cast<std::size_t>(c.excited)].label +
                                    " and " +
                                    levels[static_cast<std::size_t>(c.ground)].label);
      }
    }
  }
};

/// Three-level chain: one excited level a1 decaying at gamma1, two ground
/// levels b1, b2.  Fields: probe "alpha1" on a1-b1, drive "Omega1" on a1-b2.
inline LevelScheme make_lambda_scheme(double gamma1, double gamma0) {
  LevelScheme s;
  s.levels = {{"a1", LevelKind::excited},
              {"b1", LevelKind::ground},
              {"b2", LevelKind::ground}};
  s.detuning = {0.0, 0.0, 0.0};
  s.decay = {gamma1, 0.0, 0.0};
  s.ground_relaxation = gamma0;
  s.couplings = {{"alpha1", 0, 1, 1.0}, {"Omega1", 0, 2, 1.0}};
  s.validate();
  return s;
}

/// Four-level chain b1-a1-b2-a2 with the second probe "alpha2" detuned by
/// `big_delta` from the a2-b2 resonance.  Fields: probe "alpha1" on a1-b1,
/// drive "Omega1" on a1-b2, probe "alpha2" on a2-b2.
inline LevelScheme make_n_scheme(double gamma1, double gamma2, double gamma0,
                                 double big_delta) {
  LevelScheme s;
  s.levels = {{"a1", LevelKind::excited},
              {"a2", LevelKind::excited},
              {"b1", LevelKind::ground},
              {"b2", LevelKind::ground}};
  s.detuning = {0.0, big_delta, 0.0, 0.0};
  s.decay = {gamma1, gamma2, 0.0, 0.0};
  s.ground_relaxation = gamma0;
  s.couplings = {
      {"alpha1", 0, 2, 1.0}, {"Omega1", 0, 3, 1.0}, {"alpha2", 1, 3, 1.0}};
  s.validate();
  return s;
}

/// Five-level chain b1-a1-b2-a2-b3 with a two-photon detuning `delta` stored
/// on the end ground level b3.  Fields: probes "alpha1" (a1-b1) and "alpha2"
/// (a2-b2), drives "Omega1" (a1-b2) and "Omega2" (a2-b3).  Level order is
/// (a1, a2, b1, b2, b3).
inline LevelScheme make_m_scheme(double gamma1, double gamma2, double gamma0,
                                 double delta) {
  LevelScheme s;
  s.levels = {{"a1", LevelKind::excited},
              {"a2", LevelKind::excited},
              {"b1", LevelKind::ground},
              {"b2", LevelKind::ground},
              {"b3", LevelKind::ground}};
  s.detuning = {0.0, 0.0, 0.0, 0.0, delta};
  s.decay = {gamma1, gamma2, 0.0, 0.0, 0.0};
  s.ground_relaxation = gamma0;
  s.couplings = {{"alpha1", 0, 2, 1.0},
                 {"Omega1", 0, 3, 1.0},
                 {"alpha2", 1, 3, 1.0},
                 {"Omega2", 1, 4, 1.0}};
  s.validate();
  return s;
}

/// Looks up a field by id; throws std::invalid_argument when missing.
inline const FieldMode& find_field(const std::vector<FieldMode>& fields,
                                   std::string_view id) {
  for (const FieldMode& f : fields) {
    if (f.id == id) return f;
  }
  throw std::invalid_argument("no field supplied for id: " + std::string(id));
}

}  // namespace kerrsim
