// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#include "qems/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "qems/constants.hpp"

namespace qems {

using constants::two_pi;

void RunConfig::validate() const {
  if (sweep_points < 2 || window_points < 2)
    throw ConfigError("sweep_points and window_points must be >= 2");
  if (window_span_hz <= 0) throw ConfigError("window_span_hz must be positive");
  if (sweep_min_hz <= 0 || sweep_max_hz <= sweep_min_hz)
    throw ConfigError("sweep range must satisfy 0 < sweep_min_hz < sweep_max_hz");
  for (double g : sweep_gamma_c_hz)
    if (g <= 0) throw ConfigError("sweep_gamma_c_hz values must be positive");
  if (trunc_n_c < 2 || trunc_n_m < 2) throw ConfigError("truncations must be >= 2");
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig::Method parse_method(const std::string& name) {
  if (name == "analytic") return RunConfig::Method::analytic;
  if (name == "numeric") return RunConfig::Method::numeric;
  if (name == "both") return RunConfig::Method::both;
  throw ConfigError("unknown method '" + name + "' (want analytic|numeric|both)");
}

namespace {

struct RawEntry {
  std::string value;
  int line;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const RawEntry& e) {
  try {
    size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size())
      throw ConfigError("line " + std::to_string(e.line) + ": malformed number for '" + key +
                        "': " + e.value);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(e.line) + ": malformed number for '" + key +
                      "': " + e.value);
  }
}

std::vector<double> parse_number_list(const std::string& key, const RawEntry& e) {
  std::vector<double> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ConfigError("line " + std::to_string(e.line) + ": empty list item for '" + key + "'");
    out.push_back(parse_number(key, {item, e.line}));
  }
  if (out.empty())
    throw ConfigError("line " + std::to_string(e.line) + ": empty list for '" + key + "'");
  return out;
}

const std::set<std::string> kSystemKeys = {
    "omega_m_hz",    "omega_c_hz", "qubit_splitting_hz", "drive_freq_hz", "drive_amp_hz",
    "delta_d_hz",    "g_mc_hz",    "g_cq_hz",            "g_mq_hz",       "gbar_cq_hz",
    "gbar_mq_hz",    "nbar_m",     "nbar_c"};
const std::set<std::string> kCircuitKeys = {"c_m_f",  "l_m_h",       "c_c_f",     "c_ct_f",
                                            "c_t_f",  "l_c_h",       "e_j_max_j", "flux_ratio"};
const std::set<std::string> kSharedKeys = {
    "gamma_m_hz",   "gamma_c_hz",     "gamma_down_hz", "gamma_up_hz",  "gamma_phi_hz",
    "temperature_k"};
const std::set<std::string> kRunKeys = {
    "method",        "trunc_n_c",    "trunc_n_m",        "auto_truncate",   "sweep_min_hz",
    "sweep_max_hz",  "sweep_points", "sweep_log",        "sweep_gamma_c_hz", "window_center_hz",
    "window_span_hz", "window_points", "grid_log",       "threads"};

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
  std::map<std::string, RawEntry> raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (!kSystemKeys.count(key) && !kCircuitKeys.count(key) && !kSharedKeys.count(key) &&
        !kRunKeys.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (raw.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    raw[key] = {value, lineno};
  }

  bool has_system = false, has_circuit = false;
  for (const auto& [k, v] : raw) {
    has_system |= kSystemKeys.count(k) > 0;
    has_circuit |= kCircuitKeys.count(k) > 0;
  }
  if (has_system && has_circuit)
    throw ConfigError("config mixes system-level and circuit-level parameters; "
                      "give one set only");
  if (raw.count("delta_d_hz") && raw.count("drive_freq_hz"))
    throw ConfigError("give either delta_d_hz or drive_freq_hz, not both");
  if (raw.count("temperature_k") && (raw.count("nbar_m") || raw.count("nbar_c")))
    throw ConfigError("give either temperature_k or explicit nbar_m/nbar_c, not both");

  ParsedConfig pc;
  const auto take = [&](const std::string& key) -> const RawEntry* {
    const auto it = raw.find(key);
    return it == raw.end() ? nullptr : &it->second;
  };
  const auto num_or = [&](const std::string& key, double dflt, bool* given = nullptr) {
    const RawEntry* e = take(key);
    if (given) *given = e != nullptr;
    return e ? parse_number(key, *e) : dflt;
  };

  // --- run controls ---
  RunConfig& rc = pc.run;
  if (const RawEntry* e = take("method")) rc.method = parse_method(e->value);
  rc.trunc_n_c = static_cast<int>(num_or("trunc_n_c", 8));
  rc.trunc_n_m = static_cast<int>(num_or("trunc_n_m", 8));
  rc.auto_truncate = num_or("auto_truncate", 0) != 0;
  rc.sweep_min_hz = num_or("sweep_min_hz", 1e6);
  rc.sweep_max_hz = num_or("sweep_max_hz", 30e6);
  rc.sweep_points = static_cast<int>(num_or("sweep_points", 12));
  rc.sweep_log = num_or("sweep_log", 1) != 0;
  if (const RawEntry* e = take("sweep_gamma_c_hz"))
    rc.sweep_gamma_c_hz = parse_number_list("sweep_gamma_c_hz", *e);
  rc.window_center_hz = num_or("window_center_hz", 0);
  rc.window_span_hz = num_or("window_span_hz", 4e6);
  rc.window_points = static_cast<int>(num_or("window_points", 2001));
  rc.grid_log = num_or("grid_log", 1) != 0;
  rc.threads = static_cast<int>(num_or("threads", 0));
  rc.validate();

  // --- physical parameters ---
  SystemParams dflt = nominal_params();
  SystemParams& sp = pc.system;
  bool temp_given = false;
  const double temperature = num_or("temperature_k", 0.020, &temp_given);

  if (has_circuit) {
    CircuitParams cp;
    cp.C_m = num_or("c_m_f", cp.C_m);
    cp.L_m = num_or("l_m_h", -1.0);
    cp.omega_m_target = cp.L_m > 0 ? 0.0 : two_pi * 250e6;
    cp.C_c = num_or("c_c_f", cp.C_c);
    cp.C_ct = num_or("c_ct_f", cp.C_ct);
    cp.C_t = num_or("c_t_f", cp.C_t);
    cp.L_c = num_or("l_c_h", -1.0);
    cp.E_J_max = num_or("e_j_max_j", 0.0);
    cp.flux_ratio = num_or("flux_ratio", 0.0);
    cp.drive_amp = two_pi * num_or("drive_amp_hz", 775e6);
    cp.drive_freq = two_pi * num_or("drive_freq_hz", 7.75e9);
    cp.temperature = temperature;
    pc.circuit = cp;
    sp = derive_params(cp).second;
  } else {
    sp = dflt;
    sp.omega_m = two_pi * num_or("omega_m_hz", 250e6);
    sp.omega_c = two_pi * num_or("omega_c_hz", 250e6);
    sp.qubit_splitting = two_pi * num_or("qubit_splitting_hz", 8e9);
    sp.drive_amp = two_pi * num_or("drive_amp_hz", 775e6);
    bool delta_given = false;
    const double delta_d_hz = num_or("delta_d_hz", 0.0, &delta_given);
    if (delta_given) {
      sp.delta_d = two_pi * delta_d_hz;
      sp.drive_freq = sp.qubit_splitting - sp.delta_d;
    } else {
      sp.drive_freq = two_pi * num_or("drive_freq_hz", 7.75e9);
      sp.delta_d = sp.qubit_splitting - sp.drive_freq;
    }
    sp.g_mc = two_pi * num_or("g_mc_hz", 7e3);
    sp.g_cq = two_pi * num_or("g_cq_hz", 20e6);
    sp.g_mq = two_pi * num_or("g_mq_hz", 1e3);
    bool gbar_given = false;
    const double gbar_cq_hz = num_or("gbar_cq_hz", 0.0, &gbar_given);
    sp.gbar_cq = gbar_given ? two_pi * gbar_cq_hz
                            : sideband_coupling(sp.g_cq, sp.drive_amp, sp.drive_freq);
    const double gbar_mq_hz = num_or("gbar_mq_hz", 0.0, &gbar_given);
    sp.gbar_mq = gbar_given ? two_pi * gbar_mq_hz
                            : sideband_coupling(sp.g_mq, sp.drive_amp, sp.drive_freq);
    if (temp_given) {
      sp.nbar_m = bose_occupation(sp.omega_m, temperature);
      sp.nbar_c = bose_occupation(sp.omega_c, temperature);
    } else {
      sp.nbar_m = num_or("nbar_m", dflt.nbar_m);
      sp.nbar_c = num_or("nbar_c", dflt.nbar_c);
    }
  }
  sp.gamma_m = two_pi * num_or("gamma_m_hz", 0.1);
  sp.gamma_c = two_pi * num_or("gamma_c_hz", 100e3);
  sp.gamma_down = two_pi * num_or("gamma_down_hz", 10e6);
  sp.gamma_up = two_pi * num_or("gamma_up_hz", 10e3);
  sp.gamma_phi = two_pi * num_or("gamma_phi_hz", 10e3);
  try {
    sp.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }

  // --- effective-parameter echo ---
  const auto hz = [](double w) { return w / two_pi; };
  const auto put = [&](const std::string& k, double v) {
    pc.echo.push_back(k + " = " + format_g17(v));
  };
  put("omega_m_hz", hz(sp.omega_m));
  put("omega_c_hz", hz(sp.omega_c));
  put("qubit_splitting_hz", hz(sp.qubit_splitting));
  put("drive_freq_hz", hz(sp.drive_freq));
  put("drive_amp_hz", hz(sp.drive_amp));
  put("delta_d_hz", hz(sp.delta_d));
  put("g_mc_hz", hz(sp.g_mc));
  put("g_cq_hz", hz(sp.g_cq));
  put("g_mq_hz", hz(sp.g_mq));
  put("gbar_cq_hz", hz(sp.gbar_cq));
  put("gbar_mq_hz", hz(sp.gbar_mq));
  put("gamma_m_hz", hz(sp.gamma_m));
  put("gamma_c_hz", hz(sp.gamma_c));
  put("gamma_down_hz", hz(sp.gamma_down));
  put("gamma_up_hz", hz(sp.gamma_up));
  put("gamma_phi_hz", hz(sp.gamma_phi));
  put("gamma_t_hz", hz(sp.gamma_t()));
  put("nbar_m", sp.nbar_m);
  put("nbar_c", sp.nbar_c);
  return pc;
}

ParsedConfig load_config(const std::string& path) {
  if (path.empty()) return parse_config_text("");
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace qems
