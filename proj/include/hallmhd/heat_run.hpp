#pragma once

#include "json.hpp"

#include "hallmhd/config.hpp"

namespace hallmhd {

struct HeatRunResult {
  bool pass = false;
  double max_rel_err_a0 = 0.0;  // vs closed form, every snapshot
  double max_rel_err_a1 = 0.0;
  double max_rel_err_a2 = 0.0;
  double slope_a0 = 0.0;  // fitted on [5, t_end], shift sigma^2/2
  double slope_a1 = 0.0;
  double slope_a2 = 0.0;
  nlohmann::ordered_json report;
};

/// Linear-only evolution of the scalar Gaussian, checked at every snapshot
/// against the closed-form periodized-Gaussian norms (a = 0 to 1e-6
/// relative, a in {1,2} to 1e-4) and fitted for the -3/4, -1/4, +1/4
/// decay-exponent ladder (each within 0.02 on [5, t_end]). The fit shift is
/// sigma^2/(2 nu), the exact heat-kernel time offset, under which the
/// free-space law is a pure power.
///
/// The default diffusivity is 0.5: it keeps the diffusion width
/// sqrt(sigma^2 + 2 nu T) (and the |x|^2-weighted integrand, which peaks
/// near sqrt(3) times that) inside the half-box through T = 24, so the
/// finite box reproduces the whole-space exponents. At nu = 1 the a = 2
/// integrand reaches the boundary and the late-time slope is contaminated
/// by periodic images regardless of solver accuracy.
HeatRunResult run_heat_oracle(int n = 64, double box = 32.0,
                              double sigma = 1.0, double t_end = 24.0,
                              double nu = 0.5);

}  // namespace hallmhd
