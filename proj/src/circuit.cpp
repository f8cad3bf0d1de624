// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#include "qems/circuit.hpp"

#include <cmath>
#include <limits>

#include "qems/constants.hpp"

namespace qems {

using constants::e_charge;
using constants::hbar;
using constants::k_boltzmann;
using constants::two_pi;

void CircuitParams::validate() const {
  if (C_m <= 0 || C_c <= 0 || C_ct <= 0 || C_t <= 0)
    throw ParameterError("all capacitances must be positive");
  if (L_m <= 0 && omega_m_target <= 0)
    throw ParameterError("either L_m or omega_m_target must be positive");
  if (E_J_max < 0) throw ParameterError("E_J_max must be nonnegative");
  if (temperature < 0) throw ParameterError("temperature must be nonnegative");
  if (drive_freq < 0) throw ParameterError("drive frequency must be nonnegative");
}

void SystemParams::validate() const {
  if (omega_m <= 0 || omega_c <= 0)
    throw ParameterError("oscillator frequencies must be positive");
  if (gamma_m < 0 || gamma_c < 0 || gamma_down < 0 || gamma_up < 0 || gamma_phi < 0)
    throw ParameterError("all dissipation rates must be nonnegative");
  if (nbar_m < 0 || nbar_c < 0)
    throw ParameterError("thermal occupations must be nonnegative");
}

SystemParams nominal_params() {
  SystemParams sp;
  sp.omega_m = two_pi * 250e6;
  sp.omega_c = two_pi * 250e6;
  sp.qubit_splitting = two_pi * 8e9;
  sp.drive_freq = two_pi * 7.75e9;
  sp.drive_amp = two_pi * 775e6;
  sp.delta_d = sp.qubit_splitting - sp.drive_freq;
  sp.g_mc = two_pi * 7e3;
  sp.g_cq = two_pi * 20e6;
  sp.g_mq = two_pi * 1e3;
  sp.gbar_cq = sideband_coupling(sp.g_cq, sp.drive_amp, sp.drive_freq);
  sp.gbar_mq = sideband_coupling(sp.g_mq, sp.drive_amp, sp.drive_freq);
  sp.gamma_m = two_pi * 0.1;
  sp.gamma_c = two_pi * 100e3;
  sp.nbar_m = 1.21;
  sp.nbar_c = 1.21;
  sp.gamma_down = two_pi * 10e6;
  sp.gamma_up = two_pi * 10e3;
  sp.gamma_phi = two_pi * 10e3;
  return sp;
}

std::pair<DerivedCapacitances, SystemParams> derive_params(const CircuitParams& cp,
                                                           Warnings* warnings) {
  cp.validate();
  DerivedCapacitances dc;
  dc.C_Pi = cp.C_c * cp.C_ct + cp.C_c * cp.C_t + cp.C_ct * cp.C_t;
  dc.C_Pim = cp.C_m * (cp.C_c + cp.C_ct);
  dc.Ct_c = dc.C_Pi / (cp.C_ct + cp.C_t);
  dc.Ct_m = cp.C_m * dc.C_Pi / (dc.C_Pi + dc.C_Pim);
  dc.Ct_t = dc.C_Pi / (cp.C_c + cp.C_ct);
  dc.gt_mc = (cp.C_ct + cp.C_t) / dc.C_Pi;
  dc.bt_t = cp.C_ct / dc.C_Pi;
  dc.beta_mt = dc.Ct_m * dc.bt_t;
  dc.beta_ct = dc.Ct_c * dc.bt_t;

  SystemParams sp;
  const double L_m = cp.L_m > 0 ? cp.L_m : 1.0 / (cp.omega_m_target * cp.omega_m_target * dc.Ct_m);
  sp.omega_m = 1.0 / std::sqrt(L_m * dc.Ct_m);
  // SQUID inductance tuned into resonance with the mechanical mode when
  // not given explicitly.
  const double L_c = cp.L_c > 0 ? cp.L_c : 1.0 / (sp.omega_m * sp.omega_m * dc.Ct_c);
  sp.omega_c = 1.0 / std::sqrt(L_c * dc.Ct_c);

  const double E_J = cp.E_J_max * std::abs(std::cos(M_PI * cp.flux_ratio));
  sp.E_C = e_charge * e_charge / (2.0 * dc.Ct_t);
  sp.qubit_splitting = transmon_splitting(sp.E_C, E_J, warnings);

  sp.V0_m = std::sqrt(hbar * sp.omega_m / (2.0 * dc.Ct_m));
  sp.V0_c = std::sqrt(hbar * sp.omega_c / (2.0 * dc.Ct_c));

  sp.g_mc = dc.gt_mc / std::sqrt(4.0 * sp.omega_m * L_m * sp.omega_c * L_c);
  const double transmon_factor = E_J > 0 ? std::pow(E_J / (2.0 * sp.E_C), 0.25) : 0.0;
  sp.g_mq = e_charge * sp.V0_m * dc.beta_mt * transmon_factor / hbar;
  sp.g_cq = e_charge * sp.V0_c * dc.beta_ct * transmon_factor / hbar;

  sp.drive_amp = cp.drive_amp;
  sp.drive_freq = cp.drive_freq;
  sp.delta_d = sp.qubit_splitting - sp.drive_freq;
  sp.gbar_cq = sideband_coupling(sp.g_cq, cp.drive_amp, cp.drive_freq);
  sp.gbar_mq = sideband_coupling(sp.g_mq, cp.drive_amp, cp.drive_freq);

  sp.nbar_m = bose_occupation(sp.omega_m, cp.temperature);
  sp.nbar_c = bose_occupation(sp.omega_c, cp.temperature);
  return {dc, sp};
}

double transmon_splitting(double E_C, double E_J, Warnings* warnings) {
  if (E_C <= 0) throw ParameterError("transmon_splitting: E_C must be positive");
  if (E_J < 0) throw ParameterError("transmon_splitting: E_J must be nonnegative");
  if (E_J < E_C)
    warn(warnings, "transmon approximation invalid: E_J/E_C = " + std::to_string(E_J / E_C) +
                       " < 1");
  return (std::sqrt(8.0 * E_C * E_J) - E_C) / hbar;
}

double solve_E_J_for_splitting(double E_C, double Omega) {
  if (E_C <= 0) throw ParameterError("solve_E_J_for_splitting: E_C must be positive");
  const double s = hbar * Omega + E_C;
  return s * s / (8.0 * E_C);
}

double bessel_j1(double x) {
  // J1(x) = sum_k (-1)^k / (k! (k+1)!) (x/2)^(2k+1)
  const double h = 0.5 * x;
  double term = h;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -(h * h) / (double(k) * double(k + 1));
    sum += term;
    if (std::abs(term) <= 1e-16 * std::abs(sum)) break;
  }
  return sum;
}

double sideband_coupling(double g_pq, double drive_amp, double drive_freq) {
  if (drive_freq <= 0) throw ParameterError("sideband_coupling: drive frequency must be positive");
  return g_pq * bessel_j1(drive_amp / drive_freq);
}

double bose_occupation(double omega, double temperature) {
  if (omega <= 0) throw ParameterError("bose_occupation: frequency must be positive");
  if (temperature < 0) throw ParameterError("bose_occupation: temperature must be nonnegative");
  if (temperature == 0) return 0.0;
  return 1.0 / std::expm1(hbar * omega / (k_boltzmann * temperature));
}

namespace {
double ratio_or_inf(double num, double den) {
  if (den <= 0) return std::numeric_limits<double>::infinity();
  return num / den;
}
}  // namespace

RegimeReport regime_report(const SystemParams& sp) {
  RegimeReport r;
  const double gt = sp.gamma_t();
  r.resolved_ratio_m = ratio_or_inf(sp.omega_m, gt);
  r.resolved_ratio_c = ratio_or_inf(sp.omega_c, gt);
  r.resolved_sideband = r.resolved_ratio_m >= 10.0 && r.resolved_ratio_c >= 10.0;
  r.adiabatic_ratio_gmc = ratio_or_inf(sp.gamma_down, sp.g_mc);
  r.adiabatic_ratio_gcq = ratio_or_inf(sp.gamma_down, sp.gbar_cq);
  r.adiabatic_ratio_gmq = ratio_or_inf(sp.gamma_down, sp.gbar_mq);
  r.adiabatic_ratio_gm = ratio_or_inf(sp.gamma_down, sp.gamma_m);
  r.adiabatic_ratio_gc = ratio_or_inf(sp.gamma_down, sp.gamma_c);
  r.adiabatic = r.adiabatic_ratio_gmc >= 10.0 && r.adiabatic_ratio_gcq >= 10.0 &&
                r.adiabatic_ratio_gmq >= 10.0 && r.adiabatic_ratio_gm >= 10.0 &&
                r.adiabatic_ratio_gc >= 10.0;
  return r;
}

}  // namespace qems
