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
#include <cmath>
#include <map>
#include <vector>

#include "kerrsim/hamiltonian.hpp"
#include "kerrsim/level_scheme.hpp"

namespace kerrsim {

/// Steady-state density matrix with tolerance-checked physicality tests.
struct DensityMatrix {
  Eigen::MatrixXcd matrix;

  double trace_error() const { return std::abs(matrix.trace() - cplx(1.0)); }

  double hermiticity_error() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  }

  double min_eigenvalue() const {
    const Eigen::MatrixXcd sym = 0.5 * (matrix + matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    return solver.eigenvalues().minCoeff();
  }

  double population(int level) const { return matrix(level, level).real(); }

  cplx coherence(int upper, int lower) const { return matrix(upper, lower); }

  /// Throws std::runtime_error when the matrix fails the physicality
  /// tolerances (Hermiticity, unit trace, positivity).
  void validate(double hermiticity_tol = 1e-10, double trace_tol = 1e-10,
                double positivity_tol = 1e-8) const {
    if (hermiticity_error() > hermiticity_tol) {
      throw std::runtime_error("density matrix is not Hermitian to tolerance");
    }
    if (trace_error() > trace_tol) {
      throw std::runtime_error("density matrix trace deviates from 1");
    }
    if (min_eigenvalue() < -positivity_tol) {
      throw std::runtime_error("density matrix has a negative eigenvalue");
    }
  }
};

/// How the slow ground-manifold relaxation gamma0 is realized.
///
/// `isotropic`: jump operators |g><g'| at rate gamma0 / n_ground over all
/// ordered ground pairs.  Ground coherences decay at exactly gamma0 and
/// ground populations relax toward the unpolarized mixture at gamma0, so a
/// steady state exists at any magnetic field.
///
/// `dephasing_only`: jump operators |g><g| at rate gamma0.  Coherences decay,
/// populations never redistribute.
enum class GroundRelaxationModel { isotropic, dephasing_only };

/// Fraction of an excited level's decay routed to one ground level.
struct DecayBranch {
  int excited = -1;
  int ground = -1;
  double fraction = 0.0;
};

struct LindbladOptions {
  GroundRelaxationModel ground_model = GroundRelaxationModel::isotropic;
  /// Explicit branching fractions; when empty, each excited level decays in
  /// equal parts to the ground levels it couples to.
  std::vector<DecayBranch> branching;
};

/// Generator of density-matrix evolution in column-stacked vectorization:
/// matrix * vec(rho) = vec(-i [H, rho] + dissipators(rho)).
struct Liouvillian {
  Eigen::MatrixXcd matrix;
  int dim = 0;
};

inline Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

inline Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, int n) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n);
}

namespace detail {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Adds rate * (C rho C^dag - {C^dag C, rho} / 2) to the generator.
inline void add_dissipator(Eigen::MatrixXcd& generator,
                           const Eigen::MatrixXcd& c, double rate) {
  const Eigen::Index n = c.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd cdc = c.adjoint() * c;
  generator += rate * (kron(c.conjugate(), c) - 0.5 * kron(id, cdc) -
                       0.5 * kron(cdc.transpose(), id));
}

inline std::vector<DecayBranch> resolve_branching(
    const LevelScheme& scheme, const LindbladOptions& options) {
  const std::vector<int> excited = scheme.excited_indices();
  if (!options.branching.empty()) {
    std::map<int, double> totals;
    for (const DecayBranch& b : options.branching) {
      if (b.excited < 0 || b.excited >= scheme.size() ||
          !scheme.is_excited(b.excited)) {
        throw std::invalid_argument("branching entry with invalid excited level");
      }
      if (b.ground < 0 || b.ground >= scheme.size() ||
          scheme.is_excited(b.ground)) {
        throw std::invalid_argument("branching entry with invalid ground level");
      }
      if (!(b.fraction >= 0.0)) {
        throw std::invalid_argument("branching fraction must be >= 0");
      }
      totals[b.excited] += b.fraction;
    }
    for (int e : excited) {
      const auto it = totals.find(e);
      if (it == totals.end() || std::abs(it->second - 1.0) > 1e-9) {
        throw std::invalid_argument(
            "branching fractions must sum to 1 for every excited level");
      }
    }
    return options.branching;
  }
  std::vector<DecayBranch> branches;
  for (int e : excited) {
    std::vector<int> targets;
    for (const Coupling& c : scheme.couplings) {
      if (c.excited == e) targets.push_back(c.ground);
    }
    if (targets.empty()) {
      throw std::invalid_argument(
          "excited level " + scheme.levels[static_cast<std::size_t>(e)].label +
          " has no coupled ground level; supply explicit branching");
    }
    const double fraction = 1.0 / static_cast<double>(targets.size());
    for (int g : targets) branches.push_back({e, g, fraction});
  }
  return branches;
}

}  // namespace detail

/// Builds the full generator for a scheme: coherent part from the scheme
/// Hamiltonian plus per-level Zeeman diagonal shifts, radiative decay per the
/// branching fractions, and the selected ground-relaxation model.
///
/// `zeeman_shifts` adds directly to the Hamiltonian diagonal (one entry per
/// level); pass an empty vector for no shift.  Dimension is capped at 32
/// levels to keep the dense generator tractable.
inline Liouvillian build_liouvillian(const LevelScheme& scheme,
                                     const std::vector<FieldMode>& fields,
                                     const std::vector<double>& zeeman_shifts = {},
                                     const LindbladOptions& options = {}) {
  scheme.validate();
  const int n = scheme.size();
  if (n > 32) {
    throw std::invalid_argument(
        "level count exceeds the dense-generator cap of 32");
  }
  if (!zeeman_shifts.empty() &&
      static_cast<int>(zeeman_shifts.size()) != n) {
    throw std::invalid_argument(
        "zeeman_shifts must have one entry per level");
  }

  Eigen::MatrixXcd h = build_hamiltonian(scheme, fields);
  for (int i = 0; i < n && !zeeman_shifts.empty(); ++i) {
    h(i, i) += zeeman_shifts[static_cast<std::size_t>(i)];
  }

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Liouvillian out;
  out.dim = n;
  out.matrix = cplx(0.0, -1.0) *
               (detail::kron(id, h) - detail::kron(h.transpose(), id));

  for (const DecayBranch& b : detail::resolve_branching(scheme, options)) {
    if (b.fraction == 0.0) continue;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    c(b.ground, b.excited) = 1.0;
    detail::add_dissipator(
        out.matrix, c,
        scheme.decay[static_cast<std::size_t>(b.excited)] * b.fraction);
  }

  const double gamma0 = scheme.ground_relaxation;
  if (gamma0 > 0.0) {
    const std::vector<int> grounds = scheme.ground_indices();
    if (options.ground_model == GroundRelaxationModel::isotropic) {
      const double rate = gamma0 / static_cast<double>(grounds.size());
      for (int g1 : grounds) {
        for (int g2 : grounds) {
          Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
          c(g1, g2) = 1.0;
          detail::add_dissipator(out.matrix, c, rate);
        }
      }
    } else {
      for (int g : grounds) {
        Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
        c(g, g) = 1.0;
        detail::add_dissipator(out.matrix, c, gamma0);
      }
    }
  }
  return out;
}

/// Unique trace-1 steady state of the generator, found by replacing one row
/// of L with the trace functional and solving the resulting square system
/// with a rank-revealing QR factorization.
///
/// Throws std::runtime_error when the steady-state manifold is degenerate
/// (rank deficiency, dimension reported) or when the residual ||L vec(rho)||
/// exceeds residual_tol * ||L||_F.
inline DensityMatrix steady_state(const Liouvillian& liouvillian,
                                  double residual_tol = 1e-10) {
  const int n = liouvillian.dim;
  const Eigen::Index dim2 = liouvillian.matrix.rows();
  Eigen::MatrixXcd a = liouvillian.matrix;
  a.row(0).setZero();
  for (int i = 0; i < n; ++i) a(0, i * (n + 1)) = 1.0;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(dim2);
  b(0) = 1.0;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  if (qr.rank() < dim2) {
    const Eigen::Index deficiency = dim2 - qr.rank();
    throw std::runtime_error(
        "steady-state manifold is degenerate (dimension " +
        std::to_string(deficiency + 1) + ")");
  }
  const Eigen::VectorXcd x = qr.solve(b);

  const double residual = (liouvillian.matrix * x).norm();
  const double scale = liouvillian.matrix.norm();
  if (!(residual <= residual_tol * scale)) {
    throw std::runtime_error("steady-state solve did not converge (residual " +
                             std::to_string(residual) + ")");
  }
  return DensityMatrix{unvectorize(x, n)};
}

}  // namespace kerrsim
