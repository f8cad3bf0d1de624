// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace qems::constants {

// CODATA 2018 (SI exact where defined)
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double planck_h = 6.62607015e-34;    // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J/K
inline constexpr double e_charge = 1.602176634e-19;   // C
inline constexpr double flux_quantum = planck_h / (2.0 * e_charge);  // Wb
inline constexpr double two_pi = 6.283185307179586476925286766559;

}  // namespace qems::constants
