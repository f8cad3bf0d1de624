// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qems/circuit.hpp"

namespace qems {

/// Run controls shared by all commands. Frequencies in the config file are
/// ordinary (Hz = omega/2pi); conversion to angular units happens here.
struct RunConfig {
  enum class Method { analytic, numeric, both };
  Method method = Method::both;

  int trunc_n_c = 8;
  int trunc_n_m = 8;
  bool auto_truncate = false;

  std::vector<double> sweep_gamma_down_hz;  // filled from min/max/points
  double sweep_min_hz = 1e6;
  double sweep_max_hz = 30e6;
  int sweep_points = 12;
  bool sweep_log = true;
  std::vector<double> sweep_gamma_c_hz{50e3, 100e3, 200e3};

  double window_center_hz = 0;  // 0 -> auto (upper circuit sideband)
  double window_span_hz = 4e6;
  int window_points = 2001;
  bool grid_log = true;

  int threads = 0;  // 0 -> QEMS_THREADS / hardware

  void validate() const;
};

struct ParsedConfig {
  SystemParams system;
  std::optional<CircuitParams> circuit;  // set when circuit-level keys were given
  RunConfig run;
  // "key = value" lines for every effective parameter, defaults included,
  // emitted as the self-documenting output header.
  std::vector<std::string> echo;
};

/// key = value file with '#' comments. Unknown keys and mixed
/// circuit-level/system-level parameter sets are errors; missing keys take
/// the nominal defaults. An empty path loads the full default set.
ParsedConfig load_config(const std::string& path);
ParsedConfig parse_config_text(const std::string& text);

RunConfig::Method parse_method(const std::string& name);

/// Fixed 17-significant-digit float formatting used for all CSV output.
std::string format_g17(double v);

}  // namespace qems
