// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "qems/constants.hpp"
#include "qems/steady.hpp"
#include "test_util.hpp"

using namespace qems;
using namespace qems::testutil;
using constants::two_pi;

TEST_CASE("sideband Hamiltonian structure") {
  SystemParams sp = nominal_params();
  const SpaceLayout layout(8, 8);

  SUBCASE("zero couplings give H = 0") {
    sp.g_mc = sp.gbar_cq = sp.gbar_mq = 0.0;
    CHECK(hamiltonian_sideband(sp, layout).max_abs() == 0.0);
  }

  SUBCASE("matrix element <1,0,0|H|0,1,0> = gbar_cq and hermiticity is exact") {
    const Operator h = hamiltonian_sideband(sp, layout);
    const DenseMatrix hd = h.dense();
    CHECK((hd - hd.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    const int bra = layout.index(1, 0, 0);
    const int ket = layout.index(0, 1, 0);
    CHECK(hd(bra, ket).real() == doctest::Approx(sp.gbar_cq).epsilon(1e-14));
    CHECK(hd(layout.index(1, 0, 0), layout.index(0, 0, 1)).real() ==
          doctest::Approx(sp.gbar_mq).epsilon(1e-14));
  }

  SUBCASE("off-resonant oscillators are rejected") {
    sp.omega_c = sp.omega_m * 1.01;
    CHECK_THROWS_AS(hamiltonian_sideband(sp, layout), ModelError);
  }

  SUBCASE("H conserves the total excitation number") {
    const Operator h = hamiltonian_sideband(sp, layout);
    const Operator n = embed(number_op(layout.n_c), Slot::circuit, layout) +
                       embed(number_op(layout.n_m), Slot::mech, layout) +
                       embed(sigma_plus() * sigma_minus(), Slot::qubit, layout);
    CHECK((h * n - n * h).max_abs() < 1e-12 * h.max_abs());
  }
}

TEST_CASE("lab Hamiltonian spectrum") {
  SystemParams sp = nominal_params();
  const SpaceLayout layout(4, 4);

  SUBCASE("uncoupled qubit eigenvalues are +-delta_d/2 plus the oscillator ladder") {
    sp.gbar_cq = sp.gbar_mq = 0.0;
    sp.g_mc = 0.0;
    const Operator h = hamiltonian_lab(sp, layout);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h.dense());
    CHECK(es.eigenvalues()(0) == doctest::Approx(-0.5 * sp.delta_d).epsilon(1e-12));
    // next level: -delta_d/2 + omega_c
    CHECK(es.eigenvalues()(1) ==
          doctest::Approx(-0.5 * sp.delta_d + sp.omega_c).epsilon(1e-12));
  }

  SUBCASE("single-excitation normal modes split by 2 g_mc") {
    sp.gbar_cq = sp.gbar_mq = 0.0;
    const Operator h = hamiltonian_lab(sp, layout);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h.dense());
    // qubit-down sector: 0, omega_c - g, omega_c + g, ...
    std::vector<double> evs(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
    for (double& e : evs) e += 0.5 * sp.delta_d;  // shift qubit-down sector to zero
    std::sort(evs.begin(), evs.end());
    // evs[2] is the qubit-up ground state at delta_d = omega_c
    CHECK(evs[1] == doctest::Approx(sp.omega_c - sp.g_mc).epsilon(1e-10));
    CHECK(evs[3] == doctest::Approx(sp.omega_c + sp.g_mc).epsilon(1e-10));
    CHECK(evs[3] - evs[1] == doctest::Approx(2.0 * sp.g_mc).epsilon(1e-8));
  }

  SUBCASE("hermiticity with couplings on") {
    const Operator h = hamiltonian_lab(sp, layout);
    CHECK(h.is_hermitian());
  }
}

TEST_CASE("full Liouvillian: uncoupled steady state is a product of thermal states") {
  SystemParams sp = nominal_params();
  sp.g_mc = 0.0;
  sp.gbar_cq = 0.0;
  sp.gbar_mq = 0.0;
  sp.nbar_m = 0.15;
  sp.nbar_c = 0.3;
  const SpaceLayout layout(12, 12);
  const SteadyState ss = solve_steady_system(sp, layout, ModelFrame::sideband(sp));
  // detailed-balance oracle: occupations equal the environment occupations
  CHECK(rel_diff(ss.n_m(), sp.nbar_m) < 1e-6);
  CHECK(rel_diff(ss.n_c(), sp.nbar_c) < 1e-6);
  CHECK(ss.expectations.at("p_excited").real() ==
        doctest::Approx(sp.gamma_up / (sp.gamma_down + sp.gamma_up)).epsilon(1e-9));
}

TEST_CASE("dephasing: D[sz] form equals the double commutator and decays coherences") {
  SystemParams sp = nominal_params();
  sp.g_mc = sp.gbar_cq = sp.gbar_mq = 0.0;
  sp.gamma_down = sp.gamma_up = 0.0;
  sp.gamma_m = sp.gamma_c = 0.0;
  const SpaceLayout layout(2, 2);
  const Superoperator L = full_liouvillian(sp, layout, ModelFrame::sideband(sp));

  // (gamma_phi/2) D[sz] rho == -(gamma_phi/4)[sz,[sz,rho]]
  const Operator sz = embed(sigma_z(), Slot::qubit, layout);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix rho = random_hermitian(layout.dim());
    const DenseMatrix lhs = L.apply(rho);
    const DenseMatrix szd = sz.dense();
    const DenseMatrix inner = szd * rho - rho * szd;
    const DenseMatrix rhs = -(sp.gamma_phi / 4.0) * (szd * inner - inner * szd);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <=
          1e-12 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }

  // populations constant, qubit coherences decay at gamma_phi
  DenseMatrix rho0 = DenseMatrix::Zero(layout.dim(), layout.dim());
  const int g = layout.index(0, 0, 0), e = layout.index(1, 0, 0);
  rho0(g, g) = 0.5;
  rho0(e, e) = 0.5;
  rho0(g, e) = rho0(e, g) = 0.4;
  const DenseMatrix drho = L.apply(rho0);
  CHECK(std::abs(drho(g, g)) < 1e-12 * sp.gamma_phi);
  CHECK(std::abs(drho(e, e)) < 1e-12 * sp.gamma_phi);
  CHECK(drho(g, e).real() == doctest::Approx(-sp.gamma_phi * 0.4).epsilon(1e-12));
}

TEST_CASE("qubit coherence decays at gamma_t/2 with all channels on") {
  SystemParams sp = nominal_params();
  sp.g_mc = sp.gbar_cq = sp.gbar_mq = 0.0;
  sp.gamma_m = sp.gamma_c = 0.0;
  const SpaceLayout layout(2, 2);
  const Superoperator L = full_liouvillian(sp, layout, ModelFrame::sideband(sp));
  DenseMatrix rho0 = DenseMatrix::Zero(layout.dim(), layout.dim());
  const int g = layout.index(0, 0, 0), e = layout.index(1, 0, 0);
  rho0(g, e) = 1.0;
  const DenseMatrix drho = L.apply(rho0);
  CHECK(drho(g, e).real() == doctest::Approx(-0.5 * sp.gamma_t()).epsilon(1e-12));
}

TEST_CASE("truncation guard rejects hot baths") {
  SystemParams sp = nominal_params();
  sp.nbar_c = 10.0;
  CHECK_THROWS_AS(full_liouvillian(sp, SpaceLayout(8, 8), ModelFrame::sideband(sp)),
                  TruncationError);
}

TEST_CASE("steady state of the nominal sideband Liouvillian is a physical state") {
  const SystemParams sp = nominal_params();
  const SpaceLayout layout(6, 6);
  const SteadyState ss = solve_steady_system(sp, layout, ModelFrame::sideband(sp));
  CHECK(std::abs(ss.rho.trace().real() - 1.0) < 1e-10);
  CHECK((ss.rho - ss.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(ss.rho);
  CHECK(es.eigenvalues().minCoeff() > -1e-8);
  CHECK(ss.residual < 1e-8);
}
