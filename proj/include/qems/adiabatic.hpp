// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include "qems/circuit.hpp"
#include "qems/hilbert.hpp"

namespace qems {

/// Qubit-induced cooling/heating rates and frequency shifts per mode,
/// all angular (rad/s).
struct InducedRates {
  double gamma_minus_me = 0;
  double gamma_plus_me = 0;
  double delta_m = 0;
  double gamma_minus_ce = 0;
  double gamma_plus_ce = 0;
  double delta_c = 0;
  double gtilde_mq = 0;  // gbar_mq / (gamma_down + gamma_up), dimensionless
  double gtilde_cq = 0;

  double gamma_eff_m(const SystemParams& sp) const {
    return sp.gamma_m + gamma_minus_me - gamma_plus_me;
  }
  double gamma_eff_c(const SystemParams& sp) const {
    return sp.gamma_c + gamma_minus_ce - gamma_plus_ce;
  }
};

/// Fluctuation spectrum of the uncoupled driven qubit,
/// G(w) = [gu/(gt/2 - i(w+dd)) + gd/(gt/2 - i(w-dd))] / (gd+gu).
std::complex<double> qubit_fluctuation_G(double omega, const SystemParams& sp);

/// gamma-+_pe = 2 gbar_pq^2 Re G(+-omega_p),
/// delta_p = gbar_pq^2 Im[G(+omega_p) - G(-omega_p)].
InducedRates induced_rates(const SystemParams& sp);

/// Closed two-term forms, valid at red-sideband driving delta_d = omega_p.
InducedRates induced_rates_explicit(const SystemParams& sp);

struct AdiabaticOccupations {
  double n_c = 0;
  double n_m = 0;
  bool assumptions_ok = true;
};

/// n_c = nbar_c gc/(gc + g-_ce) and the sympathetic n_m formula. Soft
/// assumptions (gamma-_ce, gamma_c >> gamma_m, gamma+_ce) are flagged via
/// warnings, not errors. With g_mc = 0 falls back to the independent-mode
/// formula n_p = (g+_pe + gp nbar_p)/(g-_pe - g+_pe + gp).
AdiabaticOccupations steady_occupations_adiabatic(const SystemParams& sp, const InducedRates& ir,
                                                  Warnings* warnings = nullptr);

/// Exact steady second moments of the reduced master equation (shifts and
/// cross terms off): the quadratic generator closes on
/// (n_m, n_c, <am^dag ac>).
struct ReducedMoments {
  double n_m = 0;
  double n_c = 0;
  std::complex<double> coherence;  // <am^dag ac>
};
ReducedMoments steady_occupations_reduced_exact(const SystemParams& sp, const InducedRates& ir);

struct CoolingCriteria {
  bool circuit_ok = false;      // gamma-_ce > gamma_c
  bool mechanical_ok = false;   // 4 g_mc^2 > (gm + g-_me)(g-_ce + gc)
  double margin_circuit = 0;    // gamma-_ce / gamma_c
  double margin_mechanical = 0; // 4 g_mc^2 / [(gm + g-_me)(g-_ce + gc)]
};
CoolingCriteria cooling_criteria(const SystemParams& sp, const InducedRates& ir);

enum class ReducedVariant {
  interaction,  // projection-operator result with rates from G(+-omega_p)
  neumann       // sideband-picture elimination, rates 4 gbar^2/gamma_t
};

struct ReducedOptions {
  ReducedVariant variant = ReducedVariant::interaction;
  bool include_cross = false;   // cross-mode qubit-mediated terms
  bool include_shifts = false;  // -i delta_p [n_p, .] terms
  int n_c = 12;                 // Fock truncations of the two-oscillator space
  int n_m = 12;
};

/// Reduced Liouvillian on the two-oscillator space (circuit (x) mech is
/// ordered circuit slowest). Warns when the adiabatic regime does not hold.
Superoperator reduced_liouvillian_adiabatic(const SystemParams& sp, const InducedRates& ir,
                                            const ReducedOptions& opts,
                                            Warnings* warnings = nullptr);

}  // namespace qems
