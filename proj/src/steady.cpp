// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#include "qems/steady.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include "qems/work_pool.hpp"

namespace qems {

namespace {

constexpr double kResidualTol = 1e-8;

double max_abs(const SparseMatrix& m) {
  double v = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) v = std::max(v, std::abs(it.value()));
  return v;
}

/// Solve the bordered system built from the triplets of an L-block with one
/// redundant row replaced by the trace row. `diag_local` lists the block
/// positions of the diagonal vec indices; `replace_row` must be one of them.
Vector bordered_solve(const std::vector<Triplet>& entries, long n,
                      const std::vector<long>& diag_local, long replace_row) {
  std::vector<Triplet> tt;
  tt.reserve(entries.size() + diag_local.size());
  for (const auto& t : entries)
    if (t.row() != replace_row) tt.push_back(t);
  for (long k : diag_local) tt.emplace_back(replace_row, k, Complex(1.0, 0.0));
  SparseMatrix A(n, n);
  A.setFromTriplets(tt.begin(), tt.end());
  Vector b = Vector::Zero(n);
  b(replace_row) = 1.0;
  if (n <= 4096) {
    const DenseMatrix Ad(A);
    Vector x = Ad.partialPivLu().solve(b);
    if (!x.allFinite() || (Ad * x - b).norm() > 1e-8 * b.norm()) {
      // Degenerate steady space: the full-pivot solve picks one member of
      // the solution family.
      x = Ad.fullPivLu().solve(b);
    }
    return x;
  }
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    throw SolverError("steady-state factorization failed (singular bordered system)");
  return lu.solve(b);
}

DenseMatrix hermitize_normalize(DenseMatrix rho) {
  rho = 0.5 * (rho + rho.adjoint().eval());
  const double tr = rho.trace().real();
  if (!(std::abs(tr) > 0))
    throw SolverError("steady-state solve produced a traceless matrix");
  rho /= tr;
  return rho;
}

double relative_residual(const Superoperator& L, const DenseMatrix& rho, double scale) {
  const double r = (L.matrix() * vec(rho)).norm();
  return scale > 0 ? r / scale : r;
}

void maybe_warn_uniqueness(const Superoperator& L, Warnings* warnings) {
  // Degeneracy probe, only affordable on small instances.
  if (!warnings || L.dim() > 400) return;
  const DenseMatrix Ld(L.matrix());
  Eigen::JacobiSVD<DenseMatrix> svd(Ld);
  const auto& s = svd.singularValues();
  const long n = s.size();
  if (n >= 2 && s(n - 2) < 1e3 * s(n - 1) + 1e-12 * s(0))
    warnings->add("steady state may be non-unique: second-smallest singular value " +
                  std::to_string(s(n - 2)) + " < 1e3 x smallest " + std::to_string(s(n - 1)));
}

}  // namespace

SteadySolution solve_steady(const Superoperator& L, Warnings* warnings) {
  const long D = L.dim();
  const int d = L.op_dim();
  const double scale = max_abs(L.matrix());

  std::vector<Triplet> entries;
  entries.reserve(L.matrix().nonZeros());
  for (int k = 0; k < L.matrix().outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(L.matrix(), k); it; ++it)
      entries.emplace_back(it.row(), it.col(), it.value());
  std::vector<long> diag(d);
  for (int k = 0; k < d; ++k) diag[k] = static_cast<long>(k) * (d + 1);

  maybe_warn_uniqueness(L, warnings);
  Vector x = bordered_solve(entries, D, diag, 0);
  DenseMatrix rho = hermitize_normalize(unvec(x, d));
  double resid = relative_residual(L, rho, scale);
  if (resid > kResidualTol) {
    warn(warnings, "direct steady solve residual " + std::to_string(resid) +
                       "; falling back to time integration");
    rho = hermitize_normalize(integrate_to_steady(L, rho, 50.0 / std::max(scale * 1e-6, 1e-12)));
    resid = relative_residual(L, rho, scale);
    if (resid > kResidualTol)
      throw SolverError("steady-state solver did not converge: relative residual " +
                        std::to_string(resid));
  }
  return {std::move(rho), resid};
}

SteadySolution solve_steady_sectored(const Superoperator& L,
                                     const std::vector<int>& basis_numbers, Warnings* warnings) {
  const int d = L.op_dim();
  if (static_cast<int>(basis_numbers.size()) != d)
    throw ParameterError("solve_steady_sectored: basis_numbers size mismatch");
  const auto sector_of = [&](long v) {
    return basis_numbers[v % d] - basis_numbers[v / d];
  };
  // The solve can restrict to the conserved class 0 only if L never couples
  // classes; verify on the sparsity pattern and fall back otherwise.
  for (int k = 0; k < L.matrix().outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(L.matrix(), k); it; ++it)
      if (sector_of(it.row()) != sector_of(it.col())) return solve_steady(L, warnings);

  std::vector<long> local(static_cast<size_t>(d) * d, -1);
  std::vector<long> global;
  for (long v = 0; v < static_cast<long>(d) * d; ++v)
    if (sector_of(v) == 0) {
      local[v] = static_cast<long>(global.size());
      global.push_back(v);
    }
  const long n = static_cast<long>(global.size());

  std::vector<Triplet> entries;
  for (int k = 0; k < L.matrix().outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(L.matrix(), k); it; ++it) {
      const long li = local[it.row()], lj = local[it.col()];
      if (li >= 0 && lj >= 0) entries.emplace_back(li, lj, it.value());
    }
  std::vector<long> diag_local(d);
  for (int k = 0; k < d; ++k) diag_local[k] = local[static_cast<long>(k) * (d + 1)];

  Vector x_sub = bordered_solve(entries, n, diag_local, diag_local[0]);
  Vector x = Vector::Zero(static_cast<long>(d) * d);
  for (long i = 0; i < n; ++i) x(global[i]) = x_sub(i);
  DenseMatrix rho = hermitize_normalize(unvec(x, d));
  const double scale = max_abs(L.matrix());
  const double resid = relative_residual(L, rho, scale);
  if (resid > kResidualTol)
    throw SolverError("sectored steady solve did not converge: relative residual " +
                      std::to_string(resid));
  return {std::move(rho), resid};
}

SteadyState solve_steady_system(const SystemParams& sp, const SpaceLayout& layout,
                                const ModelFrame& frame, Warnings* warnings) {
  const Superoperator L = full_liouvillian(sp, layout, frame);
  SteadySolution sol = frame.tag == ModelFrame::Tag::sideband
                           ? solve_steady_sectored(L, excitation_numbers(layout), warnings)
                           : solve_steady(L, warnings);
  SteadyState ss;
  ss.layout = layout;
  ss.residual = sol.residual;
  ss.rho = std::move(sol.rho);
  const Operator a_c = embed(destroy(layout.n_c), Slot::circuit, layout);
  const Operator a_m = embed(destroy(layout.n_m), Slot::mech, layout);
  const Operator sp_op = embed(sigma_plus(), Slot::qubit, layout);
  const Operator sm_op = embed(sigma_minus(), Slot::qubit, layout);
  ss.expectations["n_c"] = expectation(a_c.adjoint() * a_c, ss.rho);
  ss.expectations["n_m"] = expectation(a_m.adjoint() * a_m, ss.rho);
  ss.expectations["p_excited"] = expectation(sp_op * sm_op, ss.rho);
  ss.expectations["coh_mc"] = expectation(a_m.adjoint() * a_c, ss.rho);
  ss.expectations["a2_m"] = expectation(a_m * a_m, ss.rho);
  ss.expectations["a2_c"] = expectation(a_c * a_c, ss.rho);
  return ss;
}

DenseMatrix integrate_to_steady(const Superoperator& L, const DenseMatrix& rho0,
                                double total_time) {
  // Power-iteration estimate of the spectral radius sets the stable RK4 step.
  const long D = L.dim();
  Vector v = Vector::Ones(D).normalized();
  double lam = 0.0;
  for (int it = 0; it < 20; ++it) {
    Vector w = L.matrix() * v;
    lam = w.norm();
    if (lam == 0.0) break;
    v = w / lam;
  }
  if (lam == 0.0) return rho0;
  const double dt_max = 1.5 / lam;
  long steps = static_cast<long>(std::ceil(total_time / dt_max));
  if (steps > 4'000'000)
    throw SolverError("time integration to steady state needs " + std::to_string(steps) +
                      " steps; rates are too widely separated");
  const double dt = total_time / double(steps);
  Vector y = vec(rho0);
  for (long s = 0; s < steps; ++s) {
    const Vector k1 = L.matrix() * y;
    const Vector k2 = L.matrix() * (y + 0.5 * dt * k1);
    const Vector k3 = L.matrix() * (y + 0.5 * dt * k2);
    const Vector k4 = L.matrix() * (y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return unvec(y, L.op_dim());
}

std::vector<SweepRow> occupation_sweep(const SystemParams& sp,
                                       const std::vector<double>& gamma_down_grid,
                                       const std::vector<double>& gamma_c_values,
                                       const SpaceLayout& layout, int threads) {
  for (double g : gamma_down_grid)
    if (g <= 0) throw ParameterError("occupation_sweep: gamma_down grid values must be positive");
  for (double g : gamma_c_values)
    if (g <= 0) throw ParameterError("occupation_sweep: gamma_c values must be positive");

  const int n = static_cast<int>(gamma_down_grid.size() * gamma_c_values.size());
  std::vector<SweepRow> rows(n);
  parallel_for_index(
      n,
      [&](int i) {
        const size_t ic = i / gamma_down_grid.size();
        const size_t id = i % gamma_down_grid.size();
        SweepRow& row = rows[i];
        row.gamma_c = gamma_c_values[ic];
        row.gamma_down = gamma_down_grid[id];
        try {
          SystemParams p = sp;
          p.gamma_down = row.gamma_down;
          p.gamma_c = row.gamma_c;
          const InducedRates ir = induced_rates(p);
          const AdiabaticOccupations ao = steady_occupations_adiabatic(p, ir);
          row.n_m_adiabatic = ao.n_m;
          row.n_c_adiabatic = ao.n_c;
          const SteadyState ss = solve_steady_system(p, layout, ModelFrame::sideband(p));
          row.n_m_numeric = ss.n_m();
          row.n_c_numeric = ss.n_c();
          row.residual = ss.residual;
          row.ok = true;
        } catch (const Error& e) {
          row.ok = false;
          row.error = std::string(e.kind_name()) + ": " + e.what();
        }
      },
      threads);
  return rows;
}

namespace {

struct TruncMetrics {
  double n_c, n_m, tail_c, tail_m;
};

TruncMetrics metrics_at(const SystemParams& sp, const SpaceLayout& layout,
                        const ModelFrame& frame) {
  const SteadyState ss = solve_steady_system(sp, layout, frame);
  TruncMetrics m{ss.n_c(), ss.n_m(), 0.0, 0.0};
  for (int q = 0; q < SpaceLayout::qubit_dim; ++q)
    for (int ic = 0; ic < layout.n_c; ++ic)
      for (int im = 0; im < layout.n_m; ++im) {
        const double p = ss.rho(layout.index(q, ic, im), layout.index(q, ic, im)).real();
        if (ic == layout.n_c - 1) m.tail_c += p;
        if (im == layout.n_m - 1) m.tail_m += p;
      }
  return m;
}

}  // namespace

EscalationResult truncation_escalate(const SystemParams& sp, const SpaceLayout& layout0,
                                     const ModelFrame& frame) {
  constexpr int kCap = 24;
  constexpr double kTol = 1e-4;
  SpaceLayout layout = layout0;
  if (layout.n_c >= kCap || layout.n_m >= kCap)
    throw TruncationError("truncation escalation starts at the cap n = 24");
  TruncMetrics prev = metrics_at(sp, layout, frame);
  int solves = 1;
  while (true) {
    const SpaceLayout next(std::min(layout.n_c + 2, kCap), std::min(layout.n_m + 2, kCap));
    const TruncMetrics cur = metrics_at(sp, next, frame);
    ++solves;
    const auto rel_change = [](double a, double b) {
      return std::abs(a - b) / std::max(std::abs(b), 1e-9);
    };
    const bool occupations_settled =
        rel_change(prev.n_c, cur.n_c) < kTol && rel_change(prev.n_m, cur.n_m) < kTol;
    const bool tails_small = cur.tail_c < kTol && cur.tail_m < kTol;
    if (occupations_settled && tails_small)
      return {next, cur.n_c, cur.n_m, cur.tail_c, cur.tail_m, solves};
    if (next.n_c >= kCap || next.n_m >= kCap)
      throw TruncationError("truncation escalation reached the cap n = 24 without converging");
    layout = next;
    prev = cur;
  }
}

}  // namespace qems
