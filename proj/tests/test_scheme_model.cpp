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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kerrsim/dark_state.hpp"
#include "kerrsim/hamiltonian.hpp"
#include "kerrsim/kerr.hpp"
#include "kerrsim/level_scheme.hpp"

namespace ks = kerrsim;
using ks::cplx;

namespace {

std::vector<ks::FieldMode> m_fields(cplx a1, cplx o1, cplx a2, cplx o2) {
  return {{"alpha1", a1, ks::FieldRole::probe},
          {"Omega1", o1, ks::FieldRole::drive},
          {"alpha2", a2, ks::FieldRole::probe},
          {"Omega2", o2, ks::FieldRole::drive}};
}

cplx random_coupling(std::mt19937& rng) {
  std::uniform_real_distribution<double> mag(0.05, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * ks::pi);
  return std::polar(mag(rng), phase(rng));
}

}  // namespace

TEST_CASE("hamiltonian of an undriven resonant scheme vanishes") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  const Eigen::MatrixXcd h =
      ks::build_hamiltonian(scheme, m_fields(0.0, 0.0, 0.0, 0.0));
  REQUIRE(h.norm() == 0.0);
}

TEST_CASE("hamiltonian places unit couplings on the chain links") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  const Eigen::MatrixXcd h =
      ks::build_hamiltonian(scheme, m_fields(1.0, 1.0, 1.0, 1.0));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(5, 5);
  expected(0, 2) = expected(2, 0) = 1.0;  // alpha1: a1-b1
  expected(0, 3) = expected(3, 0) = 1.0;  // Omega1: a1-b2
  expected(1, 3) = expected(3, 1) = 1.0;  // alpha2: a2-b2
  expected(1, 4) = expected(4, 1) = 1.0;  // Omega2: a2-b3
  REQUIRE((h - expected).norm() == 0.0);
}

TEST_CASE("hamiltonian carries minus the stored detunings on the diagonal") {
  const ks::LevelScheme m = ks::make_m_scheme(1.0, 1.0, 0.0, 0.01);
  const Eigen::MatrixXcd hm =
      ks::build_hamiltonian(m, m_fields(0.0, 0.0, 0.0, 0.0));
  for (int i = 0; i < 4; ++i) REQUIRE(hm(i, i) == cplx(0.0, 0.0));
  REQUIRE(hm(4, 4) == cplx(-0.01, 0.0));

  const ks::LevelScheme n = ks::make_n_scheme(1.0, 1.0, 0.0, 2.0);
  const std::vector<ks::FieldMode> nf = {
      {"alpha1", 0.0, ks::FieldRole::probe},
      {"Omega1", 0.0, ks::FieldRole::drive},
      {"alpha2", 0.0, ks::FieldRole::probe}};
  const Eigen::MatrixXcd hn = ks::build_hamiltonian(n, nf);
  REQUIRE(hn(1, 1) == cplx(-2.0, 0.0));
}

TEST_CASE("hamiltonian is Hermitian for random complex couplings") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_real_distribution<double> det(-1.0, 1.0);
    const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, det(rng));
    const Eigen::MatrixXcd h = ks::build_hamiltonian(
        scheme, m_fields(random_coupling(rng), random_coupling(rng),
                         random_coupling(rng), random_coupling(rng)));
    REQUIRE((h - h.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("hamiltonian rejects couplings without a matching field") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  const std::vector<ks::FieldMode> incomplete = {
      {"alpha1", 1.0, ks::FieldRole::probe}};
  REQUIRE_THROWS_AS(ks::build_hamiltonian(scheme, incomplete),
                    std::invalid_argument);
}

TEST_CASE("dark state of equal couplings is the alternating ground vector") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  const ks::DarkStateResult d =
      ks::dark_state(scheme, m_fields(1.0, 1.0, 1.0, 1.0));
  const double r = 1.0 / std::sqrt(3.0);
  REQUIRE(d.is_exact);
  REQUIRE(d.multiplicity == 1);
  REQUIRE(d.eigenvalue == 0.0);
  REQUIRE(std::abs(d.amplitudes(0)) == 0.0);
  REQUIRE(std::abs(d.amplitudes(1)) == 0.0);
  REQUIRE(std::abs(d.amplitudes(2) - cplx(r, 0.0)) < 1e-14);
  REQUIRE(std::abs(d.amplitudes(3) - cplx(-r, 0.0)) < 1e-14);
  REQUIRE(std::abs(d.amplitudes(4) - cplx(r, 0.0)) < 1e-14);
}

TEST_CASE("dark state with probes off collapses onto the first ground level") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  const ks::DarkStateResult d =
      ks::dark_state(scheme, m_fields(0.0, 1.0, 0.0, 1.0));
  REQUIRE(std::abs(d.amplitudes(2) - cplx(1.0, 0.0)) < 1e-14);
  REQUIRE(std::abs(d.amplitudes(3)) < 1e-14);
  REQUIRE(std::abs(d.amplitudes(4)) < 1e-14);
}

TEST_CASE("dark state amplitudes follow the chain product formula") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  const ks::DarkStateResult d =
      ks::dark_state(scheme, m_fields(0.1, 1.0, 0.2, 1.0));
  const double norm = std::sqrt(1.0 + 0.01 + 0.02 * 0.02);
  REQUIRE(std::abs(d.amplitudes(2) - cplx(1.0 / norm, 0.0)) < 1e-14);
  REQUIRE(std::abs(d.amplitudes(3) - cplx(-0.1 / norm, 0.0)) < 1e-14);
  REQUIRE(std::abs(d.amplitudes(4) - cplx(0.02 / norm, 0.0)) < 1e-14);
  REQUIRE(std::abs(d.amplitudes.norm() - 1.0) < 1e-12);
}

TEST_CASE("dark state annihilates the Hamiltonian over random field sets") {
  std::mt19937 rng(777);
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::vector<ks::FieldMode> fields =
        m_fields(random_coupling(rng), random_coupling(rng),
                 random_coupling(rng), random_coupling(rng));
    const ks::DarkStateResult d = ks::dark_state(scheme, fields);
    const Eigen::MatrixXcd h = ks::build_hamiltonian(scheme, fields);
    REQUIRE((h * d.amplitudes).norm() <= 1e-12 * h.norm());
    REQUIRE(std::abs(d.amplitudes(0)) == 0.0);
    REQUIRE(std::abs(d.amplitudes(1)) == 0.0);
    REQUIRE(std::abs(d.amplitudes.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("dark state requires resonance") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.01);
  REQUIRE_THROWS_AS(ks::dark_state(scheme, m_fields(0.1, 1.0, 0.1, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("dark state reports the degenerate manifold when all fields vanish") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  const ks::DarkStateResult d =
      ks::dark_state(scheme, m_fields(0.0, 0.0, 0.0, 0.0));
  REQUIRE(d.multiplicity == 5);
  REQUIRE(d.null_basis.size() == 5);
}

TEST_CASE("four-level chain has no dark state for generic couplings") {
  const ks::LevelScheme scheme = ks::make_n_scheme(1.0, 1.0, 0.0, 0.0);
  const std::vector<ks::FieldMode> fields = {
      {"alpha1", 0.1, ks::FieldRole::probe},
      {"Omega1", 1.0, ks::FieldRole::drive},
      {"alpha2", 0.1, ks::FieldRole::probe}};
  REQUIRE_THROWS_AS(ks::dark_state(scheme, fields), std::runtime_error);
}

TEST_CASE("perturbed dark state reduces to the exact one at zero detuning") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  const std::vector<ks::FieldMode> fields = m_fields(0.1, 1.0, 0.2, 1.0);
  const ks::DarkStateResult exact = ks::dark_state(scheme, fields);
  const ks::DarkStateResult p = ks::perturbed_dark_state(scheme, fields, 0.0);
  REQUIRE(p.is_exact);
  REQUIRE(p.eigenvalue == 0.0);
  REQUIRE(p.zeta == 1.0);
  REQUIRE((p.amplitudes - exact.amplitudes).norm() < 1e-14);
}

TEST_CASE("perturbed dark state eigenvalue and admixture match the formulas") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);
  const ks::DarkStateResult p =
      ks::perturbed_dark_state(scheme, m_fields(0.1, 1.0, 0.1, 1.0), 0.01);
  REQUIRE_THAT(p.eigenvalue, Catch::Matchers::WithinRel(-1e-6, 1e-12));
  REQUIRE(std::abs(p.amplitudes(1) - cplx(p.zeta * 1e-4, 0.0)) < 1e-16);
  REQUIRE(std::abs(p.amplitudes.norm() - 1.0) < 1e-12);
  REQUIRE_FALSE(p.is_exact);
  REQUIRE(p.warnings.empty());
}

TEST_CASE("perturbed dark state warns outside its validity regime") {
  const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, 0.0);

  const ks::DarkStateResult strong =
      ks::perturbed_dark_state(scheme, m_fields(0.5, 1.0, 0.5, 1.0), 0.001);
  int ratio_warnings = 0;
  for (const auto& w : strong.warnings) {
    if (w.code == "probe-drive-ratio") ++ratio_warnings;
  }
  REQUIRE(ratio_warnings == 2);

  const ks::DarkStateResult fast =
      ks::perturbed_dark_state(scheme, m_fields(0.1, 1.0, 0.1, 1.0), 0.5);
  bool detuning_warning = false;
  for (const auto& w : fast.warnings) {
    if (w.code == "detuning-bound") detuning_warning = true;
  }
  REQUIRE(detuning_warning);
}

TEST_CASE("perturbative eigenvalue error scales as the formulas predict") {
  const auto dense_error = [](double eps, double delta) {
    const ks::LevelScheme scheme = ks::make_m_scheme(1.0, 1.0, 0.0, delta);
    const std::vector<ks::FieldMode> fields =
        m_fields(eps, 1.0, eps, 1.0);
    const ks::DenseDarkState dense = ks::eigen_dark_state(scheme, fields);
    const double formula = -delta * eps * eps * eps * eps;
    return std::abs(dense.eigenvalue - formula);
  };

  const double e0 = dense_error(0.1, 0.01);
  const double e_half_eps = dense_error(0.05, 0.01);
  const double e_joint = dense_error(0.05, 0.005);

  const double lam = 0.01 * std::pow(0.1, 4);
  const double rel0 = e0 / lam;
  const double rel_half_eps = e_half_eps / (0.01 * std::pow(0.05, 4));

  REQUIRE(rel0 / rel_half_eps > 3.5);
  REQUIRE(rel0 / rel_half_eps < 4.5);
  REQUIRE(e0 / e_half_eps > 50.0);
  REQUIRE(e0 / e_joint > 100.0);
}

TEST_CASE("quantized coupling rate follows the square-root law") {
  REQUIRE(ks::xi_coupling(0.0, 1.0, 1.0) == 0.0);

  const double base = ks::xi_coupling(1.0, 1.0, 1.0);
  const double doubled_volume = ks::xi_coupling(1.0, 1.0, 2.0);
  REQUIRE_THAT(base / doubled_volume,
               Catch::Matchers::WithinRel(std::sqrt(2.0), 1e-14));

  const double dipole = std::sqrt(2.0 / ks::pi);
  REQUIRE_THAT(ks::xi_coupling(dipole, 1.0, 1.0),
               Catch::Matchers::WithinRel(2.0, 1e-14));

  REQUIRE_THROWS_AS(ks::xi_coupling(1.0, 0.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(ks::xi_coupling(1.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("five-level Kerr coefficient") {
  REQUIRE(ks::kerr_coefficient_m(1.0, 1.0, 1.0, 1.0, 0.0) == 0.0);
  REQUIRE_THAT(ks::kerr_coefficient_m(1.0, 1.0, 1.0, 1.0, 0.5),
               Catch::Matchers::WithinRel(-0.5, 1e-14));
  REQUIRE(ks::kerr_coefficient_m(1.0, 1.0, 1.0, 1.0, 0.3) ==
          -ks::kerr_coefficient_m(1.0, 1.0, 1.0, 1.0, -0.3));
  REQUIRE_THROWS_AS(ks::kerr_coefficient_m(1.0, 1.0, 0.0, 1.0, 0.1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(ks::kerr_coefficient_m(1.0, 1.0, 1.0, 0.0, 0.1),
                    std::invalid_argument);
}

TEST_CASE("four-level Kerr coefficient") {
  REQUIRE_THAT(ks::kerr_coefficient_n(1.0, 1.0, 1.0, 2.0),
               Catch::Matchers::WithinRel(0.5, 1e-14));
  REQUIRE(ks::kerr_coefficient_n(1.0, 1.0, 1.0, 10.0) <
          ks::kerr_coefficient_n(1.0, 1.0, 1.0, 5.0));
  REQUIRE_THAT(ks::kerr_coefficient_n(2.0, 1.0, 1.0, 2.0),
               Catch::Matchers::WithinRel(2.0, 1e-14));
  REQUIRE(ks::kerr_coefficient_n(1.0, 1.0, 1.0, 0.4) ==
          -ks::kerr_coefficient_n(1.0, 1.0, 1.0, -0.4));
  REQUIRE_THROWS_AS(ks::kerr_coefficient_n(1.0, 1.0, 1.0, 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(ks::kerr_coefficient_n(1.0, 1.0, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("strength ratio and its identity with the Kerr coefficients") {
  REQUIRE_THAT(ks::coupling_ratio(1.0, 100.0, 10.0),
               Catch::Matchers::WithinRel(1.0, 1e-14));
  REQUIRE(ks::coupling_ratio(0.0, 100.0, 10.0) == 0.0);
  REQUIRE_THROWS_AS(ks::coupling_ratio(1.0, 1.0, 0.0), std::invalid_argument);

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  std::uniform_real_distribution<double> sym(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double xi1 = pos(rng);
    const double xi2 = pos(rng);
    const cplx o1 = random_coupling(rng);
    const cplx o2 = random_coupling(rng);
    double delta = sym(rng);
    double big_delta = sym(rng);
    if (std::abs(delta) < 1e-3) delta = 0.5;
    if (std::abs(big_delta) < 1e-3) big_delta = 0.5;
    const double km = ks::kerr_coefficient_m(xi1, xi2, o1, o2, delta);
    const double kn = ks::kerr_coefficient_n(xi1, xi2, o1, big_delta);
    const double ratio = ks::coupling_ratio(delta, big_delta, o2);
    REQUIRE_THAT(std::abs(km / kn),
                 Catch::Matchers::WithinRel(std::abs(ratio), 1e-12));
  }
}
