// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#include "qems/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>

#include "qems/work_pool.hpp"

namespace qems {

namespace {
constexpr double kRegimeTol = 1e-9;
}

HybridLinewidths hybrid_linewidths(const SystemParams& sp, const InducedRates& ir) {
  HybridLinewidths h;
  const double gm_eff = ir.gamma_eff_m(sp);
  const double gc_eff = ir.gamma_eff_c(sp);
  const double g16 = 16.0 * sp.g_mc * sp.g_mc;
  h.radicand_bare = (sp.gamma_c - sp.gamma_m) * (sp.gamma_c - sp.gamma_m) - g16;
  h.radicand_eff = (gc_eff - gm_eff) * (gc_eff - gm_eff) - g16;
  h.strong = h.radicand_eff < 0.0;
  const double rb = std::sqrt(std::max(h.radicand_bare, 0.0));
  const double re = std::sqrt(std::max(h.radicand_eff, 0.0));
  h.gt_m = 0.5 * (sp.gamma_m + sp.gamma_c - rb);
  h.gt_c = 0.5 * (sp.gamma_m + sp.gamma_c + rb);
  h.gt_m_eff = 0.5 * (gm_eff + gc_eff - re);
  h.gt_c_eff = 0.5 * (gm_eff + gc_eff + re);
  return h;
}

std::vector<double> linear_grid(double center, double span, int points) {
  if (points < 2) throw ParameterError("grid needs at least 2 points");
  if (span <= 0) throw ParameterError("grid span must be positive");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i)
    g[i] = center - 0.5 * span + span * double(i) / double(points - 1);
  return g;
}

std::vector<double> log_dense_grid(double center, double span, int points) {
  if (points < 2) throw ParameterError("grid needs at least 2 points");
  if (span <= 0) throw ParameterError("grid span must be positive");
  constexpr double alpha = 8.0;
  const double norm = std::sinh(alpha);
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    const double t = -1.0 + 2.0 * double(i) / double(points - 1);
    g[i] = center + 0.5 * span * std::sinh(alpha * t) / norm;
  }
  return g;
}

std::vector<double> qubit_spectrum_uncoupled(const std::vector<double>& grid,
                                             const SystemParams& sp) {
  const double gt = sp.gamma_t();
  if (gt <= 0) throw ParameterError("qubit_spectrum_uncoupled: gamma_t must be positive");
  const double w0 = sp.gamma_up / (sp.gamma_down + sp.gamma_up);
  std::vector<double> s(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    const double d = grid[i] - sp.delta_d;
    s[i] = w0 * (0.5 * gt) / (0.25 * gt * gt + d * d);
  }
  return s;
}

QubitCorrelators qubit_correlators_rt(Complex lambda, const SystemParams& sp) {
  const double gt = sp.gamma_t();
  if (gt <= 0) throw ParameterError("qubit_correlators_rt: gamma_t must be positive");
  const double gS = sp.gamma_down + sp.gamma_up;
  const Complex i(0.0, 1.0);
  const Complex pole = 0.5 * gt + i * sp.delta_d - lambda;
  if (std::abs(pole) < 1e-6 * gt)
    throw SolverError("qubit_correlators_rt: lambda within 1e-6 gamma_t of the r pole");
  QubitCorrelators qc;
  qc.r = (sp.gamma_up - sp.gamma_down) / gS / pole;
  // Two-term form; at Re(lambda) = 0 it reduces to the single Lorentzian
  // gu/(gd+gu) * gt / [(gt/2)^2 + (delta_d - Im lambda)^2].
  qc.t = sp.gamma_up / gS *
         (1.0 / (0.5 * gt + lambda - i * sp.delta_d) + 1.0 / (0.5 * gt - lambda + i * sp.delta_d));
  return qc;
}

namespace {

struct EigenTerm {
  Complex lambda;        // bare oscillator-space eigenvalue (for r/t)
  Complex lambda_prime;  // renormalized eigenvalue (resolvent pole)
  double weight_r2;      // coefficient of r*(l) r(l)
  double weight_t;       // coefficient of r*(l) t(l)
};

/// Accumulates Re[ 1/(iw - l') * (w_r2 r* r + w_t r* t) ] over terms.
std::vector<double> assemble_terms(const std::vector<double>& grid, const SystemParams& sp,
                                   const std::vector<EigenTerm>& terms) {
  std::vector<double> out(grid.size(), 0.0);
  const Complex i(0.0, 1.0);
  for (const auto& term : terms) {
    const QubitCorrelators qc = qubit_correlators_rt(term.lambda, sp);
    const Complex amp = std::conj(qc.r) * (term.weight_r2 * qc.r + term.weight_t * qc.t);
    for (size_t k = 0; k < grid.size(); ++k) {
      const Complex resolvent = 1.0 / (i * grid[k] - term.lambda_prime);
      out[k] += (resolvent * amp).real();
    }
  }
  return out;
}

void require_red_sideband(const SystemParams& sp) {
  const double wp = sp.omega_c;
  if (std::abs(sp.delta_d - wp) > 1e-6 * wp)
    throw ModelError("closed-form sideband decomposition requires delta_d = omega_p "
                     "(red-sideband driving); use the general eigenvalue sum otherwise");
}

}  // namespace

SpectrumResult sideband_analytic(const std::vector<double>& grid, const SystemParams& sp,
                                 const InducedRates& ir, double n_c_ss, double n_m_ss) {
  require_red_sideband(sp);
  const HybridLinewidths h = hybrid_linewidths(sp, ir);
  const double scale = 16.0 * sp.g_mc * sp.g_mc + std::abs(h.radicand_eff);
  if (h.radicand_eff < -kRegimeTol * scale)
    throw RegimeError("16 g_mc^2 exceeds (gamma_c,eff - gamma_m,eff)^2: use the "
                      "normal-mode (strong-coupling) path");
  if (h.radicand_bare < -kRegimeTol * (16.0 * sp.g_mc * sp.g_mc + std::abs(h.radicand_bare)))
    throw RegimeError("bare damping rates are hybridized beyond threshold: use the "
                      "normal-mode (strong-coupling) path");

  const double gt = sp.gamma_t();
  SpectrumResult res;
  res.grid = grid;
  res.frame = ModelFrame::lab(sp);
  res.parts["s_q"] = qubit_spectrum_uncoupled(grid, sp);

  struct Mode {
    const char* upper;
    const char* lower;
    double gbar, omega, delta, gtilde, gtilde_eff, n;
  };
  const Mode modes[2] = {
      {"s_c_upper", "s_c_lower", sp.gbar_cq, sp.omega_c, ir.delta_c, h.gt_c, h.gt_c_eff, n_c_ss},
      {"s_m_upper", "s_m_lower", sp.gbar_mq, sp.omega_m, ir.delta_m, h.gt_m, h.gt_m_eff, n_m_ss}};
  for (const Mode& m : modes) {
    std::vector<double> up(grid.size()), lo(grid.size());
    const double pre_u = 8.0 * m.gbar * m.gbar / ((gt + m.gtilde) * (gt + m.gtilde));
    const double pre_l =
        8.0 * m.gbar * m.gbar / ((gt + m.gtilde) * (gt + m.gtilde) + 16.0 * m.omega * m.omega);
    for (size_t i = 0; i < grid.size(); ++i) {
      const double du = grid[i] - m.omega - m.delta;
      const double dl = grid[i] + m.omega + m.delta;
      up[i] = pre_u * m.gtilde_eff / (4.0 * du * du + m.gtilde_eff * m.gtilde_eff) * m.n;
      lo[i] = pre_l * m.gtilde_eff / (4.0 * dl * dl + m.gtilde_eff * m.gtilde_eff) * (m.n + 1.0);
    }
    res.parts[m.upper] = std::move(up);
    res.parts[m.lower] = std::move(lo);
  }
  res.total.assign(grid.size(), 0.0);
  for (const auto& [name, part] : res.parts)
    for (size_t i = 0; i < grid.size(); ++i) res.total[i] += part[i];
  return res;
}

SpectrumResult sideband_analytic_general(const std::vector<double>& grid, const SystemParams& sp,
                                         const InducedRates& ir, double n_c_ss, double n_m_ss) {
  const HybridLinewidths h = hybrid_linewidths(sp, ir);
  const double scale = 16.0 * sp.g_mc * sp.g_mc + std::abs(h.radicand_eff);
  if (h.radicand_eff < -kRegimeTol * scale)
    throw RegimeError("general weak-branch sum invalid in the strong-coupling regime");

  const Complex i(0.0, 1.0);
  SpectrumResult res;
  res.grid = grid;
  res.frame = ModelFrame::lab(sp);
  res.parts["s_q"] = qubit_spectrum_uncoupled(grid, sp);

  struct Mode {
    const char* name;
    double gbar, omega, delta, gtilde, gtilde_eff, n;
  };
  const Mode modes[2] = {
      {"s_c", sp.gbar_cq, sp.omega_c, ir.delta_c, h.gt_c, h.gt_c_eff, n_c_ss},
      {"s_m", sp.gbar_mq, sp.omega_m, ir.delta_m, h.gt_m, h.gt_m_eff, n_m_ss}};
  for (const Mode& m : modes) {
    std::vector<EigenTerm> terms;
    for (int k : {+1, -1}) {
      EigenTerm t;
      t.lambda = i * double(k) * m.omega - 0.5 * m.gtilde;
      t.lambda_prime = i * double(k) * (m.omega + m.delta) - 0.5 * m.gtilde_eff;
      t.weight_r2 = m.gbar * m.gbar * (k > 0 ? m.n : m.n + 1.0);
      t.weight_t = -double(k) * m.gbar * m.gbar;
      terms.push_back(t);
    }
    res.parts[m.name] = assemble_terms(grid, sp, terms);
  }
  res.total.assign(grid.size(), 0.0);
  for (const auto& [name, part] : res.parts)
    for (size_t i = 0; i < grid.size(); ++i) res.total[i] += part[i];
  return res;
}

SpectrumResult normal_mode_analytic(const std::vector<double>& grid, const SystemParams& sp,
                                    const InducedRates& ir, double n_plus, double n_minus) {
  const HybridLinewidths h = hybrid_linewidths(sp, ir);
  const double scale = 16.0 * sp.g_mc * sp.g_mc + std::abs(h.radicand_eff);
  if (h.radicand_eff > kRegimeTol * scale)
    throw RegimeError("16 g_mc^2 below (gamma_c,eff - gamma_m,eff)^2: use the "
                      "weak-coupling sideband path");

  const Complex i(0.0, 1.0);
  const double gamma_bare = 0.5 * (sp.gamma_m + sp.gamma_c);           // per normal mode, FWHM
  const double gamma_eff = 0.5 * (ir.gamma_eff_m(sp) + ir.gamma_eff_c(sp));
  const double dbar = 0.5 * (ir.delta_m + ir.delta_c);
  const double split = std::sqrt(0.25 * (ir.delta_m - ir.delta_c) * (ir.delta_m - ir.delta_c) +
                                 sp.g_mc * sp.g_mc);

  SpectrumResult res;
  res.grid = grid;
  res.frame = ModelFrame::lab(sp);
  res.parts["s_q"] = qubit_spectrum_uncoupled(grid, sp);

  // q_m = (q_+ + q_-)/sqrt2, q_c = (q_+ - q_-)/sqrt2
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  struct Mode {
    const char* upper;
    const char* lower;
    double gbar;
    double u_plus, u_minus;
  };
  const Mode modes[2] = {{"s_c_upper", "s_c_lower", sp.gbar_cq, inv_sqrt2, -inv_sqrt2},
                         {"s_m_upper", "s_m_lower", sp.gbar_mq, inv_sqrt2, inv_sqrt2}};
  const double gsum_plus = (sp.gbar_mq + sp.gbar_cq) * inv_sqrt2;
  const double gsum_minus = (sp.gbar_mq - sp.gbar_cq) * inv_sqrt2;

  for (const Mode& m : modes) {
    std::vector<EigenTerm> upper_terms, lower_terms;
    const struct {
      double u, gsum, n, omega_bare, omega_ren;
    } nm[2] = {{m.u_plus, gsum_plus, n_plus, sp.omega_c + sp.g_mc, sp.omega_c + dbar + split},
               {m.u_minus, gsum_minus, n_minus, sp.omega_c - sp.g_mc, sp.omega_c + dbar - split}};
    for (const auto& s : nm) {
      for (int k : {+1, -1}) {
        EigenTerm t;
        t.lambda = i * double(k) * s.omega_bare - 0.5 * gamma_bare;
        t.lambda_prime = i * double(k) * s.omega_ren - 0.5 * gamma_eff;
        const double coupling = m.gbar * s.u * s.gsum;
        t.weight_r2 = coupling * (k > 0 ? s.n : s.n + 1.0);
        t.weight_t = -double(k) * coupling;
        (k > 0 ? upper_terms : lower_terms).push_back(t);
      }
    }
    res.parts[m.upper] = assemble_terms(grid, sp, upper_terms);
    res.parts[m.lower] = assemble_terms(grid, sp, lower_terms);
  }
  res.total.assign(grid.size(), 0.0);
  for (const auto& [name, part] : res.parts)
    for (size_t i = 0; i < grid.size(); ++i) res.total[i] += part[i];
  return res;
}

SpectrumResult spectrum_analytic(const std::vector<double>& grid, const SystemParams& sp,
                                 const InducedRates& ir, const SteadyState& ss) {
  const double n_c = ss.n_c();
  const double n_m = ss.n_m();
  const Complex coh = ss.expectations.at("coh_mc");
  const double phase_scale = 1e-3 * std::max({n_c, n_m, 1e-6});
  if (std::abs(ss.expectations.at("a2_c")) > phase_scale ||
      std::abs(ss.expectations.at("a2_m")) > phase_scale)
    throw RegimeError("phase-dependent moments <a_p^2> are not negligible; the simplified "
                      "analytic spectrum does not apply");
  const HybridLinewidths h = hybrid_linewidths(sp, ir);
  if (!h.strong) {
    if (std::abs(coh) > phase_scale)
      throw RegimeError("oscillator cross-correlations are not negligible; the weak-coupling "
                        "analytic spectrum does not apply");
    return sideband_analytic(grid, sp, ir, n_c, n_m);
  }
  const double n_plus = 0.5 * (n_m + n_c) + coh.real();
  const double n_minus = 0.5 * (n_m + n_c) - coh.real();
  return normal_mode_analytic(grid, sp, ir, n_plus, n_minus);
}

SpectrumResult spectrum_numeric(const SystemParams& sp, const SpaceLayout& layout,
                                const std::vector<double>& grid, int threads) {
  const ModelFrame frame = ModelFrame::sideband(sp);
  const Superoperator L = full_liouvillian(sp, layout, frame);
  const std::vector<int> numbers = excitation_numbers(layout);
  const int d = layout.dim();
  const SteadySolution ss = solve_steady_sectored(L, numbers);

  const Operator s_minus = embed(sigma_minus(), Slot::qubit, layout);
  const Operator s_plus = embed(sigma_plus(), Slot::qubit, layout);
  const DenseMatrix b_mat = s_minus.matrix() * ss.rho;
  const Vector b_full = vec(b_mat);

  // tr[s+ X] = sum_{i,j} s+(i,j) vec(X)[i*d + j]
  std::vector<std::pair<long, Complex>> trace_weights;
  for (int k = 0; k < s_plus.matrix().outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(s_plus.matrix(), k); it; ++it)
      trace_weights.emplace_back(static_cast<long>(it.row()) * d + it.col(), it.value());

  const auto sector_of = [&](long v) { return numbers[v % d] - numbers[v / d]; };
  bool sector_closed = true;
  for (int k = 0; k < L.matrix().outerSize() && sector_closed; ++k)
    for (SparseMatrix::InnerIterator it(L.matrix(), k); it; ++it)
      if (sector_of(it.row()) != sector_of(it.col())) {
        sector_closed = false;
        break;
      }

  // Restrict the shifted solves to the invariant class of vec(s- rho): the
  // RHS and the trace weights both live in the class K = -1.
  std::vector<long> global;
  std::vector<long> local(static_cast<size_t>(d) * d, -1);
  if (sector_closed) {
    for (long v = 0; v < static_cast<long>(d) * d; ++v)
      if (sector_of(v) == -1) {
        local[v] = static_cast<long>(global.size());
        global.push_back(v);
      }
  } else {
    global.resize(static_cast<size_t>(d) * d);
    for (long v = 0; v < static_cast<long>(d) * d; ++v) {
      global[v] = v;
      local[v] = v;
    }
  }
  const long n = static_cast<long>(global.size());

  std::vector<Triplet> base;
  base.reserve(L.matrix().nonZeros() + n);
  for (int k = 0; k < L.matrix().outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(L.matrix(), k); it; ++it) {
      const long li = local[it.row()], lj = local[it.col()];
      if (li >= 0 && lj >= 0) base.emplace_back(li, lj, -it.value());
    }
  for (long k = 0; k < n; ++k) base.emplace_back(k, k, Complex(0.0, 0.0));
  Vector b = Vector::Zero(n);
  for (long k = 0; k < n; ++k) b(k) = b_full(global[k]);

  SpectrumResult res;
  res.grid = grid;
  res.frame = frame;
  res.total.assign(grid.size(), 0.0);

  const int nthreads = threads > 0 ? threads : default_threads();
  const int npts = static_cast<int>(grid.size());
  const int chunk = (npts + nthreads - 1) / nthreads;
  const int nchunks = (npts + chunk - 1) / chunk;
  parallel_for_index(
      nchunks,
      [&](int c) {
        // One solver per chunk: the sparsity pattern is shift-independent,
        // so the symbolic analysis is reused across the chunk.
        Eigen::SparseLU<SparseMatrix> lu;
        bool analyzed = false;
        std::vector<Triplet> tt = base;
        SparseMatrix A(n, n);
        for (int p = c * chunk; p < std::min((c + 1) * chunk, npts); ++p) {
          const Complex shift(0.0, grid[p] - frame.delta_d);
          for (long k = 0; k < n; ++k)
            tt[base.size() - n + k] = Triplet(k, k, shift);
          A.setFromTriplets(tt.begin(), tt.end());
          if (!analyzed) {
            lu.analyzePattern(A);
            analyzed = true;
          }
          lu.factorize(A);
          if (lu.info() != Eigen::Success)
            throw SolverError("resolvent solve failed at grid point " + std::to_string(p));
          const Vector x = lu.solve(b);
          Complex s = 0.0;
          for (const auto& [v, wgt] : trace_weights)
            if (local[v] >= 0) s += wgt * x(local[v]);
          res.total[p] = s.real();
        }
      },
      nthreads);
  res.parts["numeric"] = res.total;
  return res;
}

PeakMeasurement measure_peak(const std::vector<double>& grid, const std::vector<double>& values) {
  if (grid.size() != values.size() || grid.size() < 3)
    throw ParameterError("measure_peak: need matching grids with >= 3 points");
  const size_t imax = std::distance(values.begin(), std::max_element(values.begin(), values.end()));
  if (imax == 0 || imax + 1 == values.size())
    throw ParameterError("measure_peak: maximum at grid edge");
  // quadratic through the three points around the maximum
  const double x0 = grid[imax - 1], x1 = grid[imax], x2 = grid[imax + 1];
  const double y0 = values[imax - 1], y1 = values[imax], y2 = values[imax + 1];
  // Newton-form quadratic through the three bracketing points.
  const double d1 = (y1 - y0) / (x1 - x0);
  const double d2 = (y2 - y1) / (x2 - x1);
  const double c = (d2 - d1) / (x2 - x0);
  PeakMeasurement pm;
  if (c < 0) {
    const double xv = std::clamp(0.5 * (x0 + x1) - d1 / (2.0 * c), x0, x2);
    pm.center = xv;
    pm.height = y0 + d1 * (xv - x0) + c * (xv - x0) * (xv - x1);
  } else {
    pm.center = x1;
    pm.height = y1;
  }
  // Crossings located from the outside in: narrow interference structure
  // (e.g. a dark-mode dip inside the peak) must not truncate the scan.
  const double half = 0.5 * pm.height;
  pm.left = grid.front();
  pm.right = grid.back();
  for (size_t i = 1; i <= imax; ++i) {
    if (values[i] >= half) {
      const double f = (half - values[i - 1]) / (values[i] - values[i - 1]);
      pm.left = grid[i - 1] + f * (grid[i] - grid[i - 1]);
      break;
    }
  }
  for (size_t i = values.size() - 1; i > imax; --i) {
    if (values[i - 1] >= half) {
      const double f = (half - values[i]) / (values[i - 1] - values[i]);
      pm.right = grid[i] + f * (grid[i - 1] - grid[i]);
      break;
    }
  }
  pm.fwhm = pm.right - pm.left;
  return pm;
}

double trapezoid(const std::vector<double>& grid, const std::vector<double>& values) {
  if (grid.size() != values.size() || grid.size() < 2)
    throw ParameterError("trapezoid: need matching grids with >= 2 points");
  double s = 0.0;
  for (size_t i = 1; i < grid.size(); ++i)
    s += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  return s;
}

}  // namespace qems
