// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#include "qems/adiabatic.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace qems {

std::complex<double> qubit_fluctuation_G(double omega, const SystemParams& sp) {
  const double gt = sp.gamma_t();
  if (gt <= 0) throw ParameterError("qubit_fluctuation_G: gamma_t must be positive");
  const double gS = sp.gamma_down + sp.gamma_up;
  const Complex i(0.0, 1.0);
  return (sp.gamma_up / (0.5 * gt - i * (omega + sp.delta_d)) +
          sp.gamma_down / (0.5 * gt - i * (omega - sp.delta_d))) /
         gS;
}

InducedRates induced_rates(const SystemParams& sp) {
  if (sp.gamma_t() <= 0)
    throw ParameterError("induced_rates: gamma_t = 0 is singular");
  InducedRates ir;
  const auto fill = [&](double gbar, double wp, double& gm, double& gp, double& dp) {
    const Complex Gp = qubit_fluctuation_G(+wp, sp);
    const Complex Gm = qubit_fluctuation_G(-wp, sp);
    gm = 2.0 * gbar * gbar * Gp.real();
    gp = 2.0 * gbar * gbar * Gm.real();
    dp = gbar * gbar * (Gp - Gm).imag();
  };
  fill(sp.gbar_mq, sp.omega_m, ir.gamma_minus_me, ir.gamma_plus_me, ir.delta_m);
  fill(sp.gbar_cq, sp.omega_c, ir.gamma_minus_ce, ir.gamma_plus_ce, ir.delta_c);
  const double gS = sp.gamma_down + sp.gamma_up;
  ir.gtilde_mq = sp.gbar_mq / gS;
  ir.gtilde_cq = sp.gbar_cq / gS;
  return ir;
}

InducedRates induced_rates_explicit(const SystemParams& sp) {
  const double gt = sp.gamma_t();
  if (gt <= 0)
    throw ParameterError("induced_rates_explicit: gamma_t = 0 is singular");
  const double gS = sp.gamma_down + sp.gamma_up;
  InducedRates ir;
  const auto fill = [&](double gbar, double wp, double& gm, double& gp, double& dp) {
    const double a = 4.0 * gbar * gbar / gt;
    const double lor = gt * gt / (gt * gt + 16.0 * wp * wp);
    gm = a * (sp.gamma_down / gS + sp.gamma_up / gS * lor);
    gp = a * (sp.gamma_up / gS + sp.gamma_down / gS * lor);
    dp = 2.0 * gbar * gbar * 4.0 * wp / (gt * gt + 16.0 * wp * wp);
  };
  fill(sp.gbar_mq, sp.omega_m, ir.gamma_minus_me, ir.gamma_plus_me, ir.delta_m);
  fill(sp.gbar_cq, sp.omega_c, ir.gamma_minus_ce, ir.gamma_plus_ce, ir.delta_c);
  ir.gtilde_mq = sp.gbar_mq / gS;
  ir.gtilde_cq = sp.gbar_cq / gS;
  return ir;
}

AdiabaticOccupations steady_occupations_adiabatic(const SystemParams& sp, const InducedRates& ir,
                                                  Warnings* warnings) {
  AdiabaticOccupations occ;
  if (sp.g_mc == 0.0) {
    // independently cooled modes
    occ.n_c = (ir.gamma_plus_ce + sp.gamma_c * sp.nbar_c) /
              (ir.gamma_minus_ce - ir.gamma_plus_ce + sp.gamma_c);
    occ.n_m = (ir.gamma_plus_me + sp.gamma_m * sp.nbar_m) /
              (ir.gamma_minus_me - ir.gamma_plus_me + sp.gamma_m);
    return occ;
  }
  const double fast = std::min(ir.gamma_minus_ce, sp.gamma_c);
  const double slow = std::max(sp.gamma_m, ir.gamma_plus_ce);
  if (fast < 10.0 * slow) {
    occ.assumptions_ok = false;
    warn(warnings,
         "adiabatic occupation formulas assume gamma-_ce, gamma_c >> gamma_m, gamma+_ce; "
         "ratio is only " + std::to_string(slow > 0 ? fast / slow : 0.0));
  }
  occ.n_c = sp.nbar_c * sp.gamma_c / (sp.gamma_c + ir.gamma_minus_ce);
  const double A = 4.0 * sp.g_mc * sp.g_mc;
  const double B = (sp.gamma_m + ir.gamma_minus_me) * (sp.gamma_c + ir.gamma_minus_ce);
  occ.n_m = occ.n_c * A / (A + B) + sp.nbar_m * B / (A + B);
  return occ;
}

ReducedMoments steady_occupations_reduced_exact(const SystemParams& sp, const InducedRates& ir) {
  // Moment equations of the reduced master equation (cross terms and shifts
  // off): the generator is quadratic, so second moments close exactly.
  const double Am = sp.gamma_m + ir.gamma_minus_me - ir.gamma_plus_me;
  const double Ac = sp.gamma_c + ir.gamma_minus_ce - ir.gamma_plus_ce;
  const double Sm = sp.gamma_m * sp.nbar_m + ir.gamma_plus_me;
  const double Sc = sp.gamma_c * sp.nbar_c + ir.gamma_plus_ce;
  const double Gx = 4.0 * sp.g_mc * sp.g_mc / (Am + Ac);
  Eigen::Matrix2d M;
  M << Am + Gx, -Gx, -Gx, Ac + Gx;
  Eigen::Vector2d S(Sm, Sc);
  const Eigen::Vector2d n = M.fullPivLu().solve(S);
  ReducedMoments r;
  r.n_m = n(0);
  r.n_c = n(1);
  r.coherence = Complex(0.0, 2.0 * sp.g_mc * (r.n_c - r.n_m) / (Am + Ac));
  return r;
}

CoolingCriteria cooling_criteria(const SystemParams& sp, const InducedRates& ir) {
  CoolingCriteria cc;
  cc.margin_circuit = sp.gamma_c > 0 ? ir.gamma_minus_ce / sp.gamma_c
                                     : std::numeric_limits<double>::infinity();
  cc.circuit_ok = ir.gamma_minus_ce > sp.gamma_c;
  const double denom = (sp.gamma_m + ir.gamma_minus_me) * (ir.gamma_minus_ce + sp.gamma_c);
  cc.margin_mechanical = denom > 0 ? 4.0 * sp.g_mc * sp.g_mc / denom
                                   : std::numeric_limits<double>::infinity();
  cc.mechanical_ok = 4.0 * sp.g_mc * sp.g_mc > denom;
  return cc;
}

namespace {

// circuit slowest: index = ic * n_m + im
struct TwoModeOps {
  Operator a_c, a_m;
  int dim;
};

TwoModeOps two_mode_ops(int n_c, int n_m) {
  const Operator ic = Operator::Identity(n_c);
  const Operator im = Operator::Identity(n_m);
  return {kron(destroy(n_c), im), kron(ic, destroy(n_m)), n_c * n_m};
}

// vec form of rho -> A rho B
SparseMatrix sandwich(const Operator& a, const Operator& b) {
  SparseMatrix bt = b.matrix().transpose();
  return Eigen::kroneckerProduct(bt, a.matrix());
}

}  // namespace

Superoperator reduced_liouvillian_adiabatic(const SystemParams& sp, const InducedRates& ir,
                                            const ReducedOptions& opts, Warnings* warnings) {
  const RegimeReport rr = regime_report(sp);
  if (!rr.adiabatic)
    warn(warnings, "reduced master equation used outside the adiabatic regime");

  auto [a_c, a_m, dim] = two_mode_ops(opts.n_c, opts.n_m);
  Operator h = sp.g_mc * (a_m.adjoint() * a_c + a_m * a_c.adjoint());
  if (opts.include_shifts) {
    h = h + ir.delta_m * (a_m.adjoint() * a_m) + ir.delta_c * (a_c.adjoint() * a_c);
  }

  std::vector<std::pair<double, Operator>> channels;
  channels.emplace_back(sp.gamma_m * (sp.nbar_m + 1.0), a_m);
  channels.emplace_back(sp.gamma_m * sp.nbar_m, a_m.adjoint());
  channels.emplace_back(sp.gamma_c * (sp.nbar_c + 1.0), a_c);
  channels.emplace_back(sp.gamma_c * sp.nbar_c, a_c.adjoint());
  if (opts.variant == ReducedVariant::interaction) {
    channels.emplace_back(ir.gamma_minus_me, a_m);
    channels.emplace_back(ir.gamma_plus_me, a_m.adjoint());
    channels.emplace_back(ir.gamma_minus_ce, a_c);
    channels.emplace_back(ir.gamma_plus_ce, a_c.adjoint());
  } else {
    const double gt = sp.gamma_t();
    channels.emplace_back(4.0 * sp.gbar_mq * sp.gbar_mq / gt, a_m);
    channels.emplace_back(4.0 * sp.gbar_cq * sp.gbar_cq / gt, a_c);
  }
  Superoperator L = liouvillian(h, channels);

  if (!opts.include_cross) return L;

  SparseMatrix cross(L.dim(), L.dim());
  const SparseMatrix id = SparseMatrix(Operator::Identity(dim).matrix());
  const auto add_cross_interaction = [&](const Operator& ap, const Operator& abar, double gp,
                                         double gbar_, double wp) {
    const Complex Gp = qubit_fluctuation_G(+wp, sp);
    const Complex Gm = qubit_fluctuation_G(-wp, sp);
    const double gg = gp * gbar_;
    // G(+wp) [abar rho, ap^dag] + G(-wp) [abar^dag rho, ap] + h.c.
    const Operator apd = ap.adjoint();
    const Operator abard = abar.adjoint();
    cross += gg * (Gp * (sandwich(abar, apd) -
                         SparseMatrix(Eigen::kroneckerProduct(id, (apd * abar).matrix()))) +
                   std::conj(Gp) * (sandwich(ap, abard) -
                                    sandwich(Operator::Identity(dim), abard * ap)) +
                   Gm * (sandwich(abard, ap) -
                         SparseMatrix(Eigen::kroneckerProduct(id, (ap * abard).matrix()))) +
                   std::conj(Gm) * (sandwich(apd, abar) -
                                    sandwich(Operator::Identity(dim), abar * apd)));
  };
  const auto add_cross_neumann = [&](const Operator& ap, const Operator& abar, double gp,
                                     double gbar_) {
    // (2 gbar_pq gbar_pbar_q / gamma_t) ([ap, rho abar^dag] + h.c.)
    const double r = 2.0 * gp * gbar_ / sp.gamma_t();
    const Operator apd = ap.adjoint();
    const Operator abard = abar.adjoint();
    cross += Complex(r) * (sandwich(ap, abard) - sandwich(Operator::Identity(dim), abard * ap) +
                           sandwich(abar, apd) -
                           SparseMatrix(Eigen::kroneckerProduct(id, (apd * abar).matrix())));
  };
  if (opts.variant == ReducedVariant::interaction) {
    add_cross_interaction(a_m, a_c, sp.gbar_mq, sp.gbar_cq, sp.omega_m);
    add_cross_interaction(a_c, a_m, sp.gbar_cq, sp.gbar_mq, sp.omega_c);
  } else {
    add_cross_neumann(a_m, a_c, sp.gbar_mq, sp.gbar_cq);
    add_cross_neumann(a_c, a_m, sp.gbar_cq, sp.gbar_mq);
  }
  return L + Superoperator(dim, std::move(cross));
}

}  // namespace qems
