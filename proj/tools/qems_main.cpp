// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qems/config.hpp"
#include "qems/constants.hpp"
#include "qems/spectrum.hpp"

namespace {

using namespace qems;
using constants::two_pi;

double hz(double w) { return w / two_pi; }

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot open output file: " + out_path);
  out << text;
}

/// Header block of every artifact: all effective parameters, induced rates
/// and hybridized linewidths, so emitted curves are self-documenting.
void emit_header(std::ostream& os, const ParsedConfig& pc, const char* command) {
  os << "# qems " << command << "\n";
  for (const auto& line : pc.echo) os << "# " << line << "\n";
  const SystemParams& sp = pc.system;
  const InducedRates ir = induced_rates(sp);
  os << "# gamma_minus_ce_hz = " << format_g17(hz(ir.gamma_minus_ce)) << "\n";
  os << "# gamma_plus_ce_hz = " << format_g17(hz(ir.gamma_plus_ce)) << "\n";
  os << "# delta_c_hz = " << format_g17(hz(ir.delta_c)) << "\n";
  os << "# gamma_minus_me_hz = " << format_g17(hz(ir.gamma_minus_me)) << "\n";
  os << "# gamma_plus_me_hz = " << format_g17(hz(ir.gamma_plus_me)) << "\n";
  os << "# delta_m_hz = " << format_g17(hz(ir.delta_m)) << "\n";
  const HybridLinewidths h = hybrid_linewidths(sp, ir);
  os << "# gamma_tilde_m_hz = " << format_g17(hz(h.gt_m)) << "\n";
  os << "# gamma_tilde_c_hz = " << format_g17(hz(h.gt_c)) << "\n";
  os << "# gamma_tilde_m_eff_hz = " << format_g17(hz(h.gt_m_eff)) << "\n";
  os << "# gamma_tilde_c_eff_hz = " << format_g17(hz(h.gt_c_eff)) << "\n";
  os << "# coupling_regime = " << (h.strong ? "strong" : "weak") << "\n";
}

int run_params(const ParsedConfig& pc, const std::string& out_path) {
  std::ostringstream os;
  emit_header(os, pc, "params");
  const SystemParams& sp = pc.system;
  const InducedRates ir = induced_rates(sp);
  const RegimeReport rr = regime_report(sp);
  const CoolingCriteria cc = cooling_criteria(sp, ir);
  const AdiabaticOccupations ao = steady_occupations_adiabatic(sp, ir);
  os << "resolved_sideband = " << (rr.resolved_sideband ? "yes" : "no")
     << "  (omega_m/gamma_t = " << format_g17(rr.resolved_ratio_m)
     << ", omega_c/gamma_t = " << format_g17(rr.resolved_ratio_c) << ")\n";
  os << "adiabatic = " << (rr.adiabatic ? "yes" : "no")
     << "  (min ratio = "
     << format_g17(std::min({rr.adiabatic_ratio_gmc, rr.adiabatic_ratio_gcq,
                             rr.adiabatic_ratio_gmq, rr.adiabatic_ratio_gm,
                             rr.adiabatic_ratio_gc}))
     << ")\n";
  os << "cooling_circuit_criterion = " << (cc.circuit_ok ? "yes" : "no")
     << "  (margin = " << format_g17(cc.margin_circuit) << ")\n";
  os << "cooling_mechanical_criterion = " << (cc.mechanical_ok ? "yes" : "no")
     << "  (margin = " << format_g17(cc.margin_mechanical) << ")\n";
  os << "n_c_adiabatic = " << format_g17(ao.n_c) << "\n";
  os << "n_m_adiabatic = " << format_g17(ao.n_m) << "\n";
  if (pc.system.E_C > 0) {
    os << "E_C_joule = " << format_g17(sp.E_C) << "\n";
    os << "V0_m_volt = " << format_g17(sp.V0_m) << "\n";
    os << "V0_c_volt = " << format_g17(sp.V0_c) << "\n";
  }
  write_output(out_path, os.str());
  return 0;
}

int run_steady(const ParsedConfig& pc, const std::string& out_path) {
  std::ostringstream os;
  emit_header(os, pc, "steady");
  const SystemParams& sp = pc.system;
  SpaceLayout layout(pc.run.trunc_n_c, pc.run.trunc_n_m);
  const ModelFrame frame = ModelFrame::sideband(sp);
  if (pc.run.auto_truncate) {
    const EscalationResult er = truncation_escalate(sp, layout, frame);
    layout = er.layout;
    os << "# escalated_layout = 2x" << layout.n_c << "x" << layout.n_m << "\n";
  }
  Warnings w;
  const SteadyState ss = solve_steady_system(sp, layout, frame, &w);
  for (const auto& msg : w.messages) std::cerr << "qems: warning: " << msg << "\n";
  const InducedRates ir = induced_rates(sp);
  const AdiabaticOccupations ao = steady_occupations_adiabatic(sp, ir);
  os << "layout = 2x" << layout.n_c << "x" << layout.n_m << "\n";
  os << "n_c_numeric = " << format_g17(ss.n_c()) << "\n";
  os << "n_m_numeric = " << format_g17(ss.n_m()) << "\n";
  os << "n_c_adiabatic = " << format_g17(ao.n_c) << "\n";
  os << "n_m_adiabatic = " << format_g17(ao.n_m) << "\n";
  os << "qubit_excited_population = " << format_g17(ss.expectations.at("p_excited").real())
     << "\n";
  os << "coherence_mc_re = " << format_g17(ss.expectations.at("coh_mc").real()) << "\n";
  os << "coherence_mc_im = " << format_g17(ss.expectations.at("coh_mc").imag()) << "\n";
  os << "residual = " << format_g17(ss.residual) << "\n";
  write_output(out_path, os.str());
  return 0;
}

int run_sweep(const ParsedConfig& pc, const std::string& out_path) {
  const SystemParams& sp = pc.system;
  const RunConfig& rc = pc.run;
  std::vector<double> grid_hz(rc.sweep_points);
  for (int i = 0; i < rc.sweep_points; ++i) {
    const double f = double(i) / double(rc.sweep_points - 1);
    grid_hz[i] = rc.sweep_log
                     ? rc.sweep_min_hz * std::pow(rc.sweep_max_hz / rc.sweep_min_hz, f)
                     : rc.sweep_min_hz + f * (rc.sweep_max_hz - rc.sweep_min_hz);
  }
  std::vector<double> grid(grid_hz.size()), gcs(rc.sweep_gamma_c_hz.size());
  for (size_t i = 0; i < grid_hz.size(); ++i) grid[i] = two_pi * grid_hz[i];
  for (size_t i = 0; i < gcs.size(); ++i) gcs[i] = two_pi * rc.sweep_gamma_c_hz[i];

  const SpaceLayout layout(rc.trunc_n_c, rc.trunc_n_m);
  const auto rows = occupation_sweep(sp, grid, gcs, layout, rc.threads);

  std::ostringstream os;
  emit_header(os, pc, "sweep");
  os << "gamma_down_hz,gamma_c_hz,n_m_numeric,n_m_adiabatic,n_c_numeric,n_c_adiabatic,residual\n";
  bool any_failed = false;
  for (const auto& r : rows) {
    if (!r.ok) {
      any_failed = true;
      os << format_g17(hz(r.gamma_down)) << "," << format_g17(hz(r.gamma_c))
         << ",failed,failed,failed,failed,failed  # " << r.error << "\n";
      continue;
    }
    os << format_g17(hz(r.gamma_down)) << "," << format_g17(hz(r.gamma_c)) << ","
       << format_g17(r.n_m_numeric) << "," << format_g17(r.n_m_adiabatic) << ","
       << format_g17(r.n_c_numeric) << "," << format_g17(r.n_c_adiabatic) << ","
       << format_g17(r.residual) << "\n";
  }
  write_output(out_path, os.str());
  return any_failed ? 3 : 0;
}

int run_spectrum(const ParsedConfig& pc, const std::string& out_path) {
  const SystemParams& sp = pc.system;
  const RunConfig& rc = pc.run;
  const InducedRates ir = induced_rates(sp);
  const double center =
      rc.window_center_hz > 0 ? two_pi * rc.window_center_hz : sp.omega_c + ir.delta_c;
  const double span = two_pi * rc.window_span_hz;
  const std::vector<double> grid = rc.grid_log ? log_dense_grid(center, span, rc.window_points)
                                               : linear_grid(center, span, rc.window_points);
  const SpaceLayout layout(rc.trunc_n_c, rc.trunc_n_m);

  const bool want_analytic = rc.method != RunConfig::Method::numeric;
  const bool want_numeric = rc.method != RunConfig::Method::analytic;

  std::optional<SpectrumResult> analytic;
  std::optional<SpectrumResult> numeric;
  if (want_analytic) {
    const SteadyState ss = solve_steady_system(sp, layout, ModelFrame::sideband(sp));
    analytic = spectrum_analytic(grid, sp, ir, ss);
  }
  if (want_numeric) numeric = spectrum_numeric(sp, layout, grid, rc.threads);

  std::ostringstream os;
  emit_header(os, pc, "spectrum");
  os << "omega_hz_rel_drive";
  const char* analytic_cols[] = {"total", "s_q", "s_c_upper", "s_m_upper", "s_c_lower",
                                 "s_m_lower"};
  if (want_analytic)
    for (const char* c : analytic_cols) os << "," << c;
  if (want_numeric) os << ",numeric";
  if (want_analytic && want_numeric) os << ",rel_gap";
  os << "\n";
  for (size_t i = 0; i < grid.size(); ++i) {
    os << format_g17(hz(grid[i]));
    if (want_analytic) {
      os << "," << format_g17(analytic->total[i]);
      for (size_t c = 1; c < 6; ++c) {
        const auto it = analytic->parts.find(analytic_cols[c]);
        os << "," << format_g17(it != analytic->parts.end() ? it->second[i] : 0.0);
      }
    }
    if (want_numeric) os << "," << format_g17(numeric->total[i]);
    if (want_analytic && want_numeric) {
      const double denom = std::max(std::abs(numeric->total[i]), 1e-300);
      os << "," << format_g17((analytic->total[i] - numeric->total[i]) / denom);
    }
    os << "\n";
  }
  write_output(out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qems: driven qubit coupled to two thermally damped oscillators -- "
               "steady-state cooling and fluorescence spectra"};
  app.require_subcommand(1);

  std::string config_path, out_path, method;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value parameter file");
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--method", method, "analytic|numeric|both (spectrum/sweep)");
  };
  CLI::App* cmd_params = app.add_subcommand("params", "derived parameters and regime report");
  CLI::App* cmd_steady = app.add_subcommand("steady", "steady-state occupations");
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "occupation vs gamma_down sweep (CSV)");
  CLI::App* cmd_spectrum = app.add_subcommand("spectrum", "qubit fluorescence spectrum (CSV)");
  for (CLI::App* c : {cmd_params, cmd_steady, cmd_sweep, cmd_spectrum}) add_common(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    ParsedConfig pc = load_config(config_path);
    if (!method.empty()) pc.run.method = qems::parse_method(method);
    if (cmd_params->parsed()) return run_params(pc, out_path);
    if (cmd_steady->parsed()) return run_steady(pc, out_path);
    if (cmd_sweep->parsed()) return run_sweep(pc, out_path);
    if (cmd_spectrum->parsed()) return run_spectrum(pc, out_path);
  } catch (const qems::Error& e) {
    std::cerr << "qems: error [" << e.kind_name() << "]: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "qems: error [internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
