// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "qems/constants.hpp"
#include "qems/steady.hpp"
#include "test_util.hpp"

using namespace qems;
using namespace qems::testutil;
using constants::two_pi;

TEST_CASE("qubit fluctuation spectrum limits and symmetry") {
  SystemParams sp = nominal_params();

  SUBCASE("resonant peak at gamma_up -> 0") {
    sp.gamma_up = 0.0;
    const Complex g = qubit_fluctuation_G(sp.delta_d, sp);
    CHECK(g.real() == doctest::Approx(2.0 / sp.gamma_t()).epsilon(1e-9));
    CHECK(std::abs(g.imag()) < 1e-12 * g.real());
  }

  SUBCASE("G(-w) is the conjugate partner under rate exchange") {
    SystemParams swapped = sp;
    std::swap(swapped.gamma_up, swapped.gamma_down);
    SystemParams flipped = sp;
    flipped.delta_d = -sp.delta_d;
    for (double w : {0.3e9, 1.1e9, 2.5e9}) {
      const Complex a = qubit_fluctuation_G(-w, sp);
      CHECK(std::abs(a - std::conj(qubit_fluctuation_G(w, swapped))) < 1e-12 * std::abs(a));
      CHECK(std::abs(a - std::conj(qubit_fluctuation_G(w, flipped))) < 1e-12 * std::abs(a));
    }
  }

  SUBCASE("2 gbar_cq^2 Re G(+omega_c) reproduces the quoted cooling rate") {
    const double rate = 2.0 * sp.gbar_cq * sp.gbar_cq * qubit_fluctuation_G(sp.omega_c, sp).real();
    CHECK(rate / two_pi == doctest::Approx(397410.248).epsilon(1e-6));  // quoted as 399 kHz
  }
}

TEST_CASE("induced rates at nominal parameters match the quoted values") {
  const SystemParams sp = nominal_params();
  const InducedRates ir = induced_rates(sp);
  // quoted design values: 399 kHz, 440 Hz, 2.0 kHz within 2%
  CHECK(std::abs(ir.gamma_minus_ce / two_pi - 399e3) < 0.02 * 399e3);
  CHECK(std::abs(ir.gamma_plus_ce / two_pi - 440.0) < 0.02 * 440.0);
  CHECK(std::abs(ir.delta_c / two_pi - 2000.0) < 0.02 * 2000.0);
  // mechanical: ~1 mHz, ~1 uHz, ~5 uHz
  CHECK(ir.gamma_minus_me / two_pi == doctest::Approx(9.935e-4).epsilon(1e-3));
  CHECK(ir.gamma_plus_me / two_pi == doctest::Approx(1.093e-6).epsilon(1e-3));
  CHECK(ir.delta_m / two_pi == doctest::Approx(4.987e-6).epsilon(1e-3));
}

TEST_CASE("induced rates vanish with the coupling") {
  SystemParams sp = nominal_params();
  sp.gbar_cq = 0.0;
  sp.gbar_mq = 0.0;
  const InducedRates ir = induced_rates(sp);
  CHECK(ir.gamma_minus_ce == 0.0);
  CHECK(ir.gamma_plus_me == 0.0);
  CHECK(ir.delta_c == 0.0);
}

TEST_CASE("explicit forms equal the G-route at red-sideband driving") {
  for (int trial = 0; trial < 100; ++trial) {
    SystemParams sp = nominal_params();
    sp.omega_m = sp.omega_c = uniform(1e8, 3e9);
    sp.gamma_down = uniform(1e6, 1e8);
    sp.gamma_up = uniform(1e3, 1e6);
    sp.gamma_phi = uniform(1e3, 1e6);
    sp.gbar_cq = uniform(1e3, 1e7);
    sp.gbar_mq = uniform(1.0, 1e3);
    sp.delta_d = sp.omega_c;
    const InducedRates a = induced_rates(sp);
    const InducedRates b = induced_rates_explicit(sp);
    CHECK(rel_diff(a.gamma_minus_ce, b.gamma_minus_ce) < 1e-12);
    CHECK(rel_diff(a.gamma_plus_ce, b.gamma_plus_ce) < 1e-12);
    CHECK(rel_diff(a.delta_c, b.delta_c) < 1e-11);
    CHECK(rel_diff(a.gamma_minus_me, b.gamma_minus_me) < 1e-12);
    CHECK(rel_diff(a.gamma_plus_me, b.gamma_plus_me) < 1e-12);
    CHECK(rel_diff(a.delta_m, b.delta_m) < 1e-11);
    // cooling beats heating at red-sideband driving with gamma_down > gamma_up
    CHECK(a.gamma_minus_ce > a.gamma_plus_ce);
    CHECK(a.gamma_plus_ce > 0.0);
    CHECK(a.gamma_eff_c(sp) > 0.0);
    CHECK(a.gamma_eff_m(sp) > 0.0);
  }
}

TEST_CASE("gamma_t = 0 is singular") {
  SystemParams sp = nominal_params();
  sp.gamma_down = sp.gamma_up = sp.gamma_phi = 0.0;
  CHECK_THROWS_AS(induced_rates(sp), ParameterError);
}

TEST_CASE("frequency shifts are negligible against the cooling rates") {
  const SystemParams sp = nominal_params();
  const InducedRates ir = induced_rates(sp);
  CHECK(ir.gamma_minus_ce - ir.gamma_plus_ce > 10.0 * ir.delta_c);
  CHECK(ir.gamma_minus_me - ir.gamma_plus_me > 10.0 * ir.delta_m);
}

TEST_CASE("adiabatic occupations") {
  const SystemParams sp = nominal_params();
  const InducedRates ir = induced_rates(sp);

  SUBCASE("nominal values") {
    const AdiabaticOccupations occ = steady_occupations_adiabatic(sp, ir);
    CHECK(occ.n_c == doctest::Approx(0.243260).epsilon(1e-4));
    CHECK(occ.n_m == doctest::Approx(0.243508).epsilon(1e-4));
    CHECK(occ.assumptions_ok);
  }

  SUBCASE("uncoupled formula at g_mc = 0") {
    SystemParams sp0 = sp;
    sp0.g_mc = 0.0;
    const AdiabaticOccupations occ = steady_occupations_adiabatic(sp0, ir);
    const double expect_c = (ir.gamma_plus_ce + sp.gamma_c * sp.nbar_c) /
                            (ir.gamma_minus_ce - ir.gamma_plus_ce + sp.gamma_c);
    CHECK(occ.n_c == doctest::Approx(expect_c).epsilon(1e-12));
  }

  SUBCASE("strong cooling limit empties the circuit mode") {
    SystemParams hot = sp;
    hot.gbar_cq *= 50.0;  // gamma-_ce ~ 1 GHz
    const InducedRates ir2 = induced_rates(hot);
    const AdiabaticOccupations occ = steady_occupations_adiabatic(hot, ir2);
    CHECK(occ.n_c < 1e-3);
    const double floor = hot.nbar_m * (hot.gamma_m + ir2.gamma_minus_me) *
                         (ir2.gamma_minus_ce + hot.gamma_c) /
                         ((hot.gamma_m + ir2.gamma_minus_me) * (ir2.gamma_minus_ce + hot.gamma_c) +
                          4.0 * hot.g_mc * hot.g_mc);
    CHECK(occ.n_m == doctest::Approx(occ.n_c * (1 - floor / hot.nbar_m) + floor).epsilon(1e-2));
  }
}

TEST_CASE("cooling criteria") {
  const SystemParams sp = nominal_params();
  const InducedRates ir = induced_rates(sp);

  SUBCASE("nominal margins") {
    const CoolingCriteria cc = cooling_criteria(sp, ir);
    CHECK(cc.circuit_ok);
    CHECK(cc.mechanical_ok);
    CHECK(cc.margin_circuit == doctest::Approx(3.9741).epsilon(1e-3));
    CHECK(cc.margin_mechanical == doctest::Approx(3901.6).epsilon(1e-3));
  }

  SUBCASE("larger circuit damping breaks the first criterion") {
    SystemParams sp2 = sp;
    sp2.gamma_c = two_pi * 500e3;
    CHECK_FALSE(cooling_criteria(sp2, induced_rates(sp2)).circuit_ok);
  }

  SUBCASE("no electromechanical coupling breaks the second") {
    SystemParams sp2 = sp;
    sp2.g_mc = 0.0;
    CHECK_FALSE(cooling_criteria(sp2, induced_rates(sp2)).mechanical_ok);
  }
}

TEST_CASE("reduced master equation: steady state against independent code paths") {
  const SystemParams sp = nominal_params();
  const InducedRates ir = induced_rates(sp);
  ReducedOptions opts;
  opts.n_c = opts.n_m = 14;
  const Superoperator L = reduced_liouvillian_adiabatic(sp, ir, opts);
  CHECK(L.trace_defect() < 1e-9 * L.max_abs());
  const SteadySolution sol = solve_steady(L);
  const Operator ic = Operator::Identity(opts.n_c);
  const Operator im = Operator::Identity(opts.n_m);
  const Operator n_c_op = kron(number_op(opts.n_c), im);
  const Operator n_m_op = kron(ic, number_op(opts.n_m));
  const double n_c = expectation(n_c_op, sol.rho).real();
  const double n_m = expectation(n_m_op, sol.rho).real();

  // exact second-moment solution of the same generator: independent path
  const ReducedMoments mm = steady_occupations_reduced_exact(sp, ir);
  CHECK(rel_diff(n_m, mm.n_m) < 1e-6);
  CHECK(rel_diff(n_c, mm.n_c) < 1e-6);

  // the closed occupation formulas drop gamma+ terms; they agree to ~0.5%
  const AdiabaticOccupations occ = steady_occupations_adiabatic(sp, ir);
  CHECK(rel_diff(n_m, occ.n_m) < 0.01);
  CHECK(rel_diff(n_c, occ.n_c) < 0.01);

  // frequency shifts have negligible impact on the occupations
  ReducedOptions with_shifts = opts;
  with_shifts.include_shifts = true;
  const SteadySolution sol2 = solve_steady(reduced_liouvillian_adiabatic(sp, ir, with_shifts));
  CHECK(rel_diff(expectation(n_m_op, sol2.rho).real(), n_m) < 1e-5);
}

TEST_CASE("neumann variant reduces to the interaction rates at gamma_up = gamma_phi = 0") {
  SystemParams sp = nominal_params();
  sp.gamma_up = 0.0;
  sp.gamma_phi = 0.0;
  const InducedRates ir = induced_rates(sp);
  const double neumann_rate_c = 4.0 * sp.gbar_cq * sp.gbar_cq / sp.gamma_t();
  CHECK(rel_diff(ir.gamma_minus_ce, neumann_rate_c) < 2e-4);  // 16 omega_p^2 tail only
  const double neumann_rate_m = 4.0 * sp.gbar_mq * sp.gbar_mq / sp.gamma_t();
  CHECK(rel_diff(ir.gamma_minus_me, neumann_rate_m) < 2e-4);
}

TEST_CASE("cross terms shift occupations by less than 1%") {
  const SystemParams sp = nominal_params();
  const InducedRates ir = induced_rates(sp);
  ReducedOptions opts;
  opts.n_c = opts.n_m = 12;
  ReducedOptions crossed = opts;
  crossed.include_cross = true;
  const Operator n_m_op = kron(Operator::Identity(opts.n_c), number_op(opts.n_m));
  const Operator n_c_op = kron(number_op(opts.n_c), Operator::Identity(opts.n_m));
  const SteadySolution plain = solve_steady(reduced_liouvillian_adiabatic(sp, ir, opts));
  const SteadySolution cross = solve_steady(reduced_liouvillian_adiabatic(sp, ir, crossed));
  CHECK(rel_diff(expectation(n_m_op, cross.rho).real(), expectation(n_m_op, plain.rho).real()) <
        0.01);
  CHECK(rel_diff(expectation(n_c_op, cross.rho).real(), expectation(n_c_op, plain.rho).real()) <
        0.01);
}

TEST_CASE("neumann cross terms build a trace-preserving generator") {
  const SystemParams sp = nominal_params();
  const InducedRates ir = induced_rates(sp);
  ReducedOptions opts;
  opts.variant = ReducedVariant::neumann;
  opts.include_cross = true;
  opts.n_c = opts.n_m = 8;
  const Superoperator L = reduced_liouvillian_adiabatic(sp, ir, opts);
  CHECK(L.trace_defect() < 1e-9 * L.max_abs());
}

TEST_CASE("reduced model converges to the full tripartite steady state") {
  // relative n_m gap below 10% at gamma_down/2pi = 10 MHz, decreasing as
  // gamma_down doubles twice
  const SpaceLayout layout(8, 8);
  double prev_gap = 1.0;
  for (double gd_hz : {10e6, 20e6, 40e6}) {
    SystemParams sp = nominal_params();
    sp.gamma_down = two_pi * gd_hz;
    const InducedRates ir = induced_rates(sp);
    const ReducedMoments mm = steady_occupations_reduced_exact(sp, ir);
    const SteadyState full = solve_steady_system(sp, layout, ModelFrame::sideband(sp));
    const double gap = rel_diff(mm.n_m, full.n_m());
    if (gd_hz == 10e6) CHECK(gap < 0.10);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}
