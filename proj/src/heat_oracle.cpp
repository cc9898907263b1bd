#include "hallmhd/heat_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace hallmhd {

double HeatOracle::profile(double x, double t) const {
  const double s2 = sigma_ * sigma_ + 2.0 * nu_ * t;
  const double amp = std::sqrt(sigma_ * sigma_ / s2);
  const double l = grid_.box();
  double v = 0.0;
  // Image sum; four images per side bound the truncation by
  // exp(-(4L - L/2)^2 / (2 s^2)), far below double precision here.
  for (int n = -4; n <= 4; ++n) {
    const double y = x + n * l;
    v += std::exp(-y * y / (2.0 * s2));
  }
  return amp * v;
}

void HeatOracle::lattice_sums(double t, double& s0, double& s2,
                              double& s4) const {
  s0 = s2 = s4 = 0.0;
  for (int j = 0; j < grid_.n(); ++j) {
    const double x = grid_.coord(j);
    const double f2 = profile(x, t) * profile(x, t);
    s0 += f2;
    s2 += x * x * f2;
    s4 += x * x * x * x * f2;
  }
}

double HeatOracle::weighted_l2(int a, double t) const {
  double s0, s2, s4;
  lattice_sums(t, s0, s2, s4);
  const double dx3 = grid_.dx() * grid_.dx() * grid_.dx();
  switch (a) {
    case 0:
      return std::sqrt(dx3 * s0 * s0 * s0);
    case 1:
      // |x|^2 = x1^2 + x2^2 + x3^2 splits over the product profile.
      return std::sqrt(dx3 * 3.0 * s2 * s0 * s0);
    case 2:
      // |x|^4 = sum x_i^4 + 2 sum_{i<j} x_i^2 x_j^2.
      return std::sqrt(dx3 * (3.0 * s4 * s0 * s0 + 6.0 * s2 * s2 * s0));
    default:
      throw std::invalid_argument("heat oracle covers a in {0, 1, 2}");
  }
}

}  // namespace hallmhd
