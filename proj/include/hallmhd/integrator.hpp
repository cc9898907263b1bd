#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hallmhd/dynamics.hpp"

namespace hallmhd {

/// Step-size policy and snapshot schedule. Snapshots fall on the geometric
/// ladder t_j = schedule_t0 * schedule_ratio^j, uniform in log t.
struct StepControl {
  double cfl_adv = 0.4;
  double cfl_whistler = 0.25;
  double dt_max = 0.25;
  double schedule_t0 = 0.25;
  double schedule_ratio = std::pow(2.0, 0.25);
  std::int64_t max_steps = 10'000'000;
  double max_wall_seconds = 86'400.0;

  void validate() const;
};

/// Stable explicit step:
///   dt = min( cfl_adv*dx / max(|u|,|B|,eps),
///             cfl_whistler*dx^2 / (pi^2 * eps_hall * max|B| + eps),
///             dt_max ).
/// The whistler bound scales as dx^2 because the Hall term is second order
/// in derivatives.
double stable_dt(const SimState& s, const StepControl& c);

/// One integrating-factor RK4 step: diffusion applied by exact exponential
/// multipliers, nonlinear tendencies explicit. linear_only skips the
/// nonlinear evaluation entirely (test hook), making the step the exact heat
/// propagator. Requires dt <= 1.1 * stable_dt.
SimState step(const SimState& s, double dt, const StepControl& c,
              bool linear_only = false);

using Observer = std::function<void(const SimState&)>;

/// Advances to t_end, stepping at stable_dt but landing exactly on every
/// schedule time in (s.t, t_end]; each observer fires at each schedule time.
/// Enforces the step/wall-clock budgets in c.
SimState integrate(SimState s, double t_end, const StepControl& c,
                   const std::vector<Observer>& observers,
                   bool linear_only = false);

/// Schedule times of c falling in the half-open interval (t_begin, t_end].
std::vector<double> schedule_times(const StepControl& c, double t_begin,
                                   double t_end);

/// Binary checkpoint: grid metadata, params, t, and full spectral
/// coefficients. Round trips bit-exactly.
void save_checkpoint(const std::string& path, const SimState& s);
SimState load_checkpoint(const std::string& path);

}  // namespace hallmhd
