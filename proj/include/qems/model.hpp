// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qems/circuit.hpp"
#include "qems/hilbert.hpp"

namespace qems {

/// Frame bookkeeping. In the sideband frame spectra are reported as
/// Sbar[w] = S[w + delta_d]; the offset lives here, not in the Hamiltonian.
struct ModelFrame {
  enum class Tag { sideband, lab_osc };
  Tag tag = Tag::sideband;
  double delta_d = 0;  // rad/s

  static ModelFrame sideband(const SystemParams& sp) { return {Tag::sideband, sp.delta_d}; }
  static ModelFrame lab(const SystemParams& sp) { return {Tag::lab_osc, sp.delta_d}; }
};

/// H = g_mc (am^dag ac + am ac^dag) + sum_p gbar_pq (ap s+ + ap^dag s-),
/// in rad/s (hbar folded in). Requires omega_m = omega_c.
Operator hamiltonian_sideband(const SystemParams& sp, const SpaceLayout& layout);

/// H = (delta_d/2) sz + omega_c sum_p ap^dag ap + g_mc (am^dag ac + h.c.)
///     + sum_p gbar_pq (ap + ap^dag) sx.
Operator hamiltonian_lab(const SystemParams& sp, const SpaceLayout& layout);

/// Full dissipative Liouvillian: frame Hamiltonian plus
/// gamma_p (nbar_p+1) D[ap] + gamma_p nbar_p D[ap^dag] per mode,
/// gamma_down D[s-] + gamma_up D[s+] + (gamma_phi/2) D[sz].
/// Errors when the truncation cannot hold the thermal state
/// (nbar_p + 3 sqrt(nbar_p) >= truncation).
Superoperator full_liouvillian(const SystemParams& sp, const SpaceLayout& layout,
                               const ModelFrame& frame);

/// Per-basis-state total excitation number q + i_c + i_m, used for the
/// conserved-sector solves.
std::vector<int> excitation_numbers(const SpaceLayout& layout);

}  // namespace qems
