// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qems/adiabatic.hpp"
#include "qems/steady.hpp"

namespace qems {

/// Hybridized oscillator damping rates, bare and qubit-renormalized:
/// 2 gt_p = gm + gc +- sqrt((gc - gm)^2 - 16 g_mc^2), + for circuit.
struct HybridLinewidths {
  double gt_m = 0;
  double gt_c = 0;
  double gt_m_eff = 0;
  double gt_c_eff = 0;
  double radicand_bare = 0;  // (gc - gm)^2 - 16 g_mc^2
  double radicand_eff = 0;
  bool strong = false;  // 16 g_mc^2 > (gc_eff - gm_eff)^2
};
HybridLinewidths hybrid_linewidths(const SystemParams& sp, const InducedRates& ir);

/// Frequency grid relative to the drive (rad/s), total spectrum and named
/// contributions in 1/(rad/s). Analytic results satisfy
/// total = sum of parts pointwise.
struct SpectrumResult {
  std::vector<double> grid;
  std::vector<double> total;
  std::map<std::string, std::vector<double>> parts;
  ModelFrame frame;
};

std::vector<double> linear_grid(double center, double span, int points);
/// sinh-spaced grid, dense near the center, coarse at the edges.
std::vector<double> log_dense_grid(double center, double span, int points);

/// S_q(w) = [gu/(gd+gu)] (gt/2) / [(gt/2)^2 + (w - delta_d)^2].
std::vector<double> qubit_spectrum_uncoupled(const std::vector<double>& grid,
                                             const SystemParams& sp);

/// Uncoupled-qubit correlation functions evaluated at an oscillator-space
/// eigenvalue (Re lambda <= 0). Errors near the pole of r.
struct QubitCorrelators {
  Complex r;
  Complex t;
};
QubitCorrelators qubit_correlators_rt(Complex lambda, const SystemParams& sp);

/// Closed-form weak-coupling decomposition at red-sideband driving
/// (delta_d = omega_p): parts s_q, s_c_upper, s_m_upper, s_c_lower,
/// s_m_lower. Occupations are the steady-state values of the two modes.
SpectrumResult sideband_analytic(const std::vector<double>& grid, const SystemParams& sp,
                                 const InducedRates& ir, double n_c_ss, double n_m_ss);

/// Weak-branch eigenvalue sum over the oscillator Liouvillian spectrum with
/// the r/t correlators; general delta_d, includes the excitation-order
/// cross terms the boxed forms drop.
SpectrumResult sideband_analytic_general(const std::vector<double>& grid, const SystemParams& sp,
                                         const InducedRates& ir, double n_c_ss, double n_m_ss);

/// Strong-coupling (normal-mode) branch: peaks split by the
/// electromechanical coupling, common linewidth sum_p gamma_p,eff / 2.
/// n_plus/n_minus are the normal-mode occupations.
SpectrumResult normal_mode_analytic(const std::vector<double>& grid, const SystemParams& sp,
                                    const InducedRates& ir, double n_plus, double n_minus);

/// Dispatches on the coupling regime and checks that phase-dependent
/// moments of the supplied steady state are negligible before applying the
/// simplified forms.
SpectrumResult spectrum_analytic(const std::vector<double>& grid, const SystemParams& sp,
                                 const InducedRates& ir, const SteadyState& ss);

/// Regression-theorem spectrum: one shifted solve
/// (i w Id - L) X = vec(sigma- rho_ss) per grid point in the sideband
/// picture, reported on the lab grid so Sbar[w] = S[w + delta_d].
SpectrumResult spectrum_numeric(const SystemParams& sp, const SpaceLayout& layout,
                                const std::vector<double>& grid, int threads = 0);

/// Peak diagnostics: quadratic-fit center/height, interpolated half-max
/// crossings. For features with narrow interference structure the midpoint
/// (left+right)/2 is the robust center estimate.
struct PeakMeasurement {
  double center = 0;
  double height = 0;
  double fwhm = 0;
  double left = 0;   // half-max crossings
  double right = 0;
  double midpoint() const { return 0.5 * (left + right); }
};
PeakMeasurement measure_peak(const std::vector<double>& grid, const std::vector<double>& values);

double trapezoid(const std::vector<double>& grid, const std::vector<double>& values);

}  // namespace qems
