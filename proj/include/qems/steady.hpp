// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qems/adiabatic.hpp"
#include "qems/model.hpp"

namespace qems {

/// Density matrix with solver diagnostics and named expectations.
struct SteadyState {
  DenseMatrix rho;
  SpaceLayout layout;
  double residual = 0;      // ||L vec(rho)||_2 / max|L|
  std::map<std::string, Complex> expectations;

  double n_c() const { return expectations.at("n_c").real(); }
  double n_m() const { return expectations.at("n_m").real(); }
};

/// Null-space solve of the bordered system [L with one redundant row
/// replaced by the trace row] x = e_trace. Hermitizes and renormalizes the
/// result; falls back to time integration if the direct residual is poor.
struct SteadySolution {
  DenseMatrix rho;
  double residual = 0;  // relative to max|L|
};
SteadySolution solve_steady(const Superoperator& L, Warnings* warnings = nullptr);

/// Same solve restricted to an invariant sector of vec space. `sector_of`
/// maps each vec index to its conservation class; the steady state lives in
/// class 0. Falls back to the full solve when L couples classes.
SteadySolution solve_steady_sectored(const Superoperator& L, const std::vector<int>& basis_numbers,
                                     Warnings* warnings = nullptr);

/// Builds the frame Liouvillian for sp/layout, solves, and fills the named
/// expectations (n_c, n_m, p_excited, coh_mc = <am^dag ac>, a2_m, a2_c).
SteadyState solve_steady_system(const SystemParams& sp, const SpaceLayout& layout,
                                const ModelFrame& frame, Warnings* warnings = nullptr);

/// RK4 integration of rho' = L rho up to total_time (used as an independent
/// oracle and as the fallback path).
DenseMatrix integrate_to_steady(const Superoperator& L, const DenseMatrix& rho0,
                                double total_time);

struct SweepRow {
  double gamma_down = 0;  // rad/s
  double gamma_c = 0;     // rad/s
  double n_m_numeric = 0;
  double n_m_adiabatic = 0;
  double n_c_numeric = 0;
  double n_c_adiabatic = 0;
  double residual = 0;
  bool ok = false;
  std::string error;
};

/// Numeric (sideband picture) and analytic (adiabatic) occupations over a
/// gamma_down grid for each gamma_c. Rows are ordered gamma_c-major in input
/// order; failed points are flagged and the sweep continues.
std::vector<SweepRow> occupation_sweep(const SystemParams& sp,
                                       const std::vector<double>& gamma_down_grid,
                                       const std::vector<double>& gamma_c_values,
                                       const SpaceLayout& layout, int threads = 0);

struct EscalationResult {
  SpaceLayout layout;
  double n_c = 0;
  double n_m = 0;
  double tail_c = 0;  // top-level population of the circuit mode
  double tail_m = 0;
  int solves = 0;
};

/// Grows n_c, n_m (in steps of two) until occupations change by < 1e-4
/// relative between successive sizes and the top-level populations are
/// below 1e-4. Errors at the cap n = 24.
EscalationResult truncation_escalate(const SystemParams& sp, const SpaceLayout& layout0,
                                     const ModelFrame& frame);

}  // namespace qems
