#pragma once

#include "hallmhd/grid.hpp"

namespace hallmhd {

/// Closed-form reference for the linear-only Gaussian run: the periodic heat
/// evolution of exp(-|x|^2 / (2 sigma^2)) is the product of periodized 1-d
/// Gaussians with variance sigma^2 + 2 nu t, and the grid-quadrature weighted
/// norms factor into 1-d lattice sums of that analytic profile. Everything
/// here is evaluated from the formula alone (no transforms), so it is an
/// independent oracle for the solver path.
class HeatOracle {
 public:
  HeatOracle(const Grid& g, double sigma, double nu = 1.0)
      : grid_(g), sigma_(sigma), nu_(nu) {}

  /// Periodized 1-d profile at time t (amplitude decay included).
  double profile(double x, double t) const;

  /// Discrete ||(|x|^a) u(t)||_{L^2} for a in {0, 1, 2}.
  double weighted_l2(int a, double t) const;

 private:
  /// Lattice sums sum_j x_j^q phi(x_j, t)^2 for q = 0, 2, 4.
  void lattice_sums(double t, double& s0, double& s2, double& s4) const;

  Grid grid_;
  double sigma_;
  double nu_;
};

}  // namespace hallmhd
