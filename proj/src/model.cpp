// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#include "qems/model.hpp"

#include <cmath>

namespace qems {

Operator hamiltonian_sideband(const SystemParams& sp, const SpaceLayout& layout) {
  if (std::abs(sp.omega_m - sp.omega_c) > 1e-9 * std::max(sp.omega_m, sp.omega_c))
    throw ModelError("sideband Hamiltonian requires omega_m = omega_c (rotating-wave form)");
  const Operator a_c = embed(destroy(layout.n_c), Slot::circuit, layout);
  const Operator a_m = embed(destroy(layout.n_m), Slot::mech, layout);
  const Operator sp_ = embed(sigma_plus(), Slot::qubit, layout);
  const Operator sm_ = embed(sigma_minus(), Slot::qubit, layout);
  Operator h = sp.g_mc * (a_m.adjoint() * a_c + a_m * a_c.adjoint());
  h = h + sp.gbar_cq * (a_c * sp_ + a_c.adjoint() * sm_);
  h = h + sp.gbar_mq * (a_m * sp_ + a_m.adjoint() * sm_);
  return h;
}

Operator hamiltonian_lab(const SystemParams& sp, const SpaceLayout& layout) {
  const Operator a_c = embed(destroy(layout.n_c), Slot::circuit, layout);
  const Operator a_m = embed(destroy(layout.n_m), Slot::mech, layout);
  const Operator sx = embed(sigma_x(), Slot::qubit, layout);
  const Operator sz = embed(sigma_z(), Slot::qubit, layout);
  Operator h = (0.5 * sp.delta_d) * sz;
  h = h + sp.omega_c * (a_c.adjoint() * a_c + a_m.adjoint() * a_m);
  h = h + sp.g_mc * (a_m.adjoint() * a_c + a_m * a_c.adjoint());
  h = h + sp.gbar_cq * ((a_c + a_c.adjoint()) * sx);
  h = h + sp.gbar_mq * ((a_m + a_m.adjoint()) * sx);
  return h;
}

Superoperator full_liouvillian(const SystemParams& sp, const SpaceLayout& layout,
                               const ModelFrame& frame) {
  sp.validate();
  const auto check_trunc = [](double nbar, int n, const char* mode) {
    if (nbar + 3.0 * std::sqrt(nbar) >= double(n))
      throw TruncationError(std::string("truncation too small for thermal occupation on the ") +
                            mode + " mode: need n > " +
                            std::to_string(nbar + 3.0 * std::sqrt(nbar)));
  };
  if (sp.gamma_c > 0) check_trunc(sp.nbar_c, layout.n_c, "circuit");
  if (sp.gamma_m > 0) check_trunc(sp.nbar_m, layout.n_m, "mechanical");

  const Operator h = frame.tag == ModelFrame::Tag::sideband ? hamiltonian_sideband(sp, layout)
                                                            : hamiltonian_lab(sp, layout);
  const Operator a_c = embed(destroy(layout.n_c), Slot::circuit, layout);
  const Operator a_m = embed(destroy(layout.n_m), Slot::mech, layout);
  std::vector<std::pair<double, Operator>> channels;
  channels.emplace_back(sp.gamma_m * (sp.nbar_m + 1.0), a_m);
  channels.emplace_back(sp.gamma_m * sp.nbar_m, a_m.adjoint());
  channels.emplace_back(sp.gamma_c * (sp.nbar_c + 1.0), a_c);
  channels.emplace_back(sp.gamma_c * sp.nbar_c, a_c.adjoint());
  channels.emplace_back(sp.gamma_down, embed(sigma_minus(), Slot::qubit, layout));
  channels.emplace_back(sp.gamma_up, embed(sigma_plus(), Slot::qubit, layout));
  // -(gamma_phi/4)[sz,[sz,rho]] equals (gamma_phi/2) D[sz]
  channels.emplace_back(0.5 * sp.gamma_phi, embed(sigma_z(), Slot::qubit, layout));
  return liouvillian(h, channels);
}

std::vector<int> excitation_numbers(const SpaceLayout& layout) {
  std::vector<int> n(layout.dim());
  for (int q = 0; q < SpaceLayout::qubit_dim; ++q)
    for (int ic = 0; ic < layout.n_c; ++ic)
      for (int im = 0; im < layout.n_m; ++im) n[layout.index(q, ic, im)] = q + ic + im;
  return n;
}

}  // namespace qems
