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
#include <type_traits>
#include <vector>

#include "kerrsim/lindblad.hpp"

namespace kerrsim {

/// One thermal velocity class: a common one-photon detuning shift of every
/// optical transition, with its Gaussian quadrature weight.
struct VelocityClass {
  double shift = 0.0;
  double weight = 0.0;
};

/// Gauss-Hermite discretization of the thermal velocity distribution.
/// Weights are normalized to sum to exactly 1 and nodes are symmetrized
/// about zero, so the grid integrates exp(-v^2) moments of the shift
/// distribution (standard deviation width / sqrt 2) to quadrature accuracy.
struct VelocityGrid {
  std::vector<VelocityClass> classes;
  double width = 0.0;

  static VelocityGrid gauss_hermite(int points, double width);

  void validate() const {
    if (classes.empty()) throw std::invalid_argument("velocity grid is empty");
    double sum = 0.0;
    for (const VelocityClass& c : classes) {
      if (!(c.weight > 0.0)) {
        throw std::invalid_argument("velocity weights must be positive");
      }
      sum += c.weight;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("velocity weights must sum to 1");
    }
    const std::size_t n = classes.size();
    for (std::size_t i = 0; i < n; ++i) {
      const VelocityClass& a = classes[i];
      const VelocityClass& b = classes[n - 1 - i];
      if (std::abs(a.shift + b.shift) > 1e-12 * (1.0 + std::abs(a.shift)) ||
          std::abs(a.weight - b.weight) > 1e-12) {
        throw std::invalid_argument("velocity grid must be symmetric");
      }
      if (i + 1 < n && !(classes[i + 1].shift > a.shift)) {
        throw std::invalid_argument("velocity shifts must be increasing");
      }
    }
  }
};

inline VelocityGrid VelocityGrid::gauss_hermite(int points, double width) {
  if (points < 1) throw std::invalid_argument("need at least one point");
  if (!(width >= 0.0)) throw std::invalid_argument("width must be >= 0");

  VelocityGrid grid;
  grid.width = width;
  if (points == 1 || width == 0.0) {
    grid.classes = {{0.0, 1.0}};
    return grid;
  }

  // Golub-Welsch on the Hermite Jacobi matrix: zero diagonal, off-diagonal
  // sqrt(k / 2); weights from the squared first eigenvector components.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(points);
  Eigen::VectorXd sub(points - 1);
  for (int k = 1; k < points; ++k) {
    sub(k - 1) = std::sqrt(0.5 * static_cast<double>(k));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("quadrature eigensolve failed");
  }

  std::vector<VelocityClass> classes(static_cast<std::size_t>(points));
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double w = solver.eigenvectors()(0, i) * solver.eigenvectors()(0, i);
    classes[static_cast<std::size_t>(i)] = {solver.eigenvalues()(i), w};
    sum += w;
  }
  for (VelocityClass& c : classes) c.weight /= sum;

  // Enforce exact symmetry about zero against eigensolver round-off.
  const std::size_t n = classes.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    VelocityClass& lo = classes[i];
    VelocityClass& hi = classes[n - 1 - i];
    const double node = 0.5 * (hi.shift - lo.shift);
    const double w = 0.5 * (hi.weight + lo.weight);
    lo = {-node, w};
    hi = {node, w};
  }
  if (n % 2 == 1) classes[n / 2].shift = 0.0;

  for (VelocityClass& c : classes) c.shift *= width;
  grid.classes = std::move(classes);
  return grid;
}

/// Scheme + fields + options bundle averaged over velocity classes.
struct DopplerProblem {
  LevelScheme scheme;
  std::vector<FieldMode> fields;
  std::vector<double> zeeman_shifts;
  LindbladOptions options;
};

/// Weighted steady-state observable over the velocity grid.  Each class adds
/// its shift to the detuning of every excited level (equal one-photon
/// detuning on all optical transitions; two-photon detunings between ground
/// levels are unaffected, as for co-propagating beams).  Classes evaluate
/// independently on up to `threads` workers; the reduction is a fixed-order
/// sum, so results are reproducible for any thread count.
///
/// The observable is any callable of const DensityMatrix& returning a value
/// closed under double-weighted addition (double, complex, Eigen vector).
template <class Observable>
auto doppler_average(const DopplerProblem& problem, const VelocityGrid& grid,
                     Observable&& observable, int threads = 1) {
  grid.validate();
  using Value =
      std::decay_t<decltype(observable(std::declval<const DensityMatrix&>()))>;
  const std::size_t count = grid.classes.size();
  std::vector<Value> values(count);

  detail::parallel_for(count, threads, [&](std::size_t i) {
    LevelScheme shifted = problem.scheme;
    for (int e : shifted.excited_indices()) {
      shifted.detuning[static_cast<std::size_t>(e)] +=
          grid.classes[i].shift;
    }
    const Liouvillian gen = build_liouvillian(
        shifted, problem.fields, problem.zeeman_shifts, problem.options);
    values[i] = observable(steady_state(gen));
  });

  Value total{};
  for (std::size_t i = 0; i < count; ++i) {
    const Value& v = values[i];
    if constexpr (std::is_arithmetic_v<Value>) {
      if (!std::isfinite(v)) {
        throw std::runtime_error("observable non-finite at velocity class " +
                                 std::to_string(i));
      }
    } else if constexpr (std::is_same_v<Value, cplx>) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw std::runtime_error("observable non-finite at velocity class " +
                                 std::to_string(i));
      }
    }
    total += grid.classes[i].weight * v;
  }
  return total;
}

}  // namespace kerrsim
