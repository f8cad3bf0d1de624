// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>

#include "qems/errors.hpp"

namespace qems {

/// Equivalent-circuit element values. All frequencies angular (rad/s),
/// capacitances in farad, inductances in henry, energies in joule.
struct CircuitParams {
  double C_m = 1.07e-20;       // motional capacitance of the quartz mode
  double L_m = -1.0;           // motional inductance; <= 0 derives it from omega_m_target
  double omega_m_target = 0;   // rad/s, used when L_m <= 0
  double C_c = 4.6e-12;        // electrode stray capacitance forming the LC tank
  double C_ct = 16e-15;        // tank-transmon coupling capacitance
  double C_t = 56e-15;         // transmon shunt capacitance
  double L_c = -1.0;           // tank (SQUID) inductance; <= 0 tunes to resonance
  double E_J_max = 0;          // joule
  double flux_ratio = 0;       // Phi/Phi_0
  double drive_amp = 0;        // E_d, rad/s
  double drive_freq = 0;       // omega_d, rad/s
  double temperature = 0.020;  // kelvin

  void validate() const;
};

/// Renormalised capacitances and coupling constants of the equivalent circuit.
struct DerivedCapacitances {
  double C_Pi = 0;      // farad^2
  double C_Pim = 0;     // farad^2
  double Ct_c = 0;      // farad
  double Ct_m = 0;      // farad
  double Ct_t = 0;      // farad
  double gt_mc = 0;     // 1/farad
  double bt_t = 0;      // 1/farad
  double beta_mt = 0;   // dimensionless
  double beta_ct = 0;   // dimensionless
};

/// Abstract model parameters. All rates and frequencies angular (rad/s);
/// user-facing I/O converts to ordinary frequency at the CLI boundary.
struct SystemParams {
  double omega_m = 0;
  double omega_c = 0;
  double qubit_splitting = 0;  // Omega
  double drive_freq = 0;       // omega_d
  double drive_amp = 0;        // E_d
  double delta_d = 0;          // Omega - omega_d
  double g_mc = 0;
  double g_cq = 0;
  double g_mq = 0;
  double gbar_cq = 0;
  double gbar_mq = 0;
  double gamma_m = 0;
  double gamma_c = 0;
  double nbar_m = 0;
  double nbar_c = 0;
  double gamma_down = 0;
  double gamma_up = 0;
  double gamma_phi = 0;
  double E_C = 0;   // joule, set when derived from a circuit
  double V0_m = 0;  // volt
  double V0_c = 0;  // volt

  double gamma_t() const { return gamma_down + gamma_up + 2.0 * gamma_phi; }
  void validate() const;
};

/// Anticipated experimental parameter set (angular units), thermal
/// occupations at the quoted design value 1.21.
SystemParams nominal_params();

/// Appendix A: equivalent circuit -> abstract model parameters.
/// Dissipation rates are not derivable from the lossless circuit and are
/// left zero for the caller to fill.
std::pair<DerivedCapacitances, SystemParams> derive_params(const CircuitParams& cp,
                                                           Warnings* warnings = nullptr);

/// hbar Omega = sqrt(8 E_C E_J) - E_C, returned as angular frequency.
/// Warns when E_J/E_C < 1 (transmon approximation invalid).
double transmon_splitting(double E_C, double E_J, Warnings* warnings = nullptr);

/// Inverse of transmon_splitting at fixed E_C.
double solve_E_J_for_splitting(double E_C, double Omega);

/// Bessel J1 by power series, 1e-12 relative.
double bessel_j1(double x);

/// gbar_pq = g_pq J1(E_d / omega_d).
double sideband_coupling(double g_pq, double drive_amp, double drive_freq);

/// n(omega) = 1/(exp(hbar omega / kB T) - 1); 0 at T = 0.
double bose_occupation(double omega, double temperature);

struct RegimeReport {
  double resolved_ratio_m = 0;  // omega_m / gamma_t
  double resolved_ratio_c = 0;
  bool resolved_sideband = false;
  double adiabatic_ratio_gmc = 0;   // gamma_down / g_mc
  double adiabatic_ratio_gcq = 0;   // gamma_down / gbar_cq
  double adiabatic_ratio_gmq = 0;   // gamma_down / gbar_mq
  double adiabatic_ratio_gm = 0;    // gamma_down / gamma_m
  double adiabatic_ratio_gc = 0;    // gamma_down / gamma_c
  bool adiabatic = false;
};

/// Resolved-sideband (omega_p >> gamma_t) and adiabatic
/// (gamma_down >> g_mc, gbar_pq, gamma_p) checks; a ratio >= 10 counts as
/// satisfied.
RegimeReport regime_report(const SystemParams& sp);

}  // namespace qems
