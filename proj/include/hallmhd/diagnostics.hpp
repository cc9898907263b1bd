#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hallmhd/dynamics.hpp"

namespace hallmhd {

enum class FieldKind { u, B, omega, custom };
enum class WeightKind { centered, shifted };

/// Specification of one weighted norm |||x|^a D^b f||_{L^p}. The derivative
/// block D^b stacks every multi-index of order b applied to every component,
/// with no multinomial weights; the pointwise magnitude is Euclidean over
/// the stack. weight_kind selects |x|^a or the heat-adapted (|x|^2+t)^{a/2},
/// both measured from the box center.
struct WeightedNormSpec {
  FieldKind field_kind = FieldKind::custom;
  double a = 0.0;
  int b = 0;
  double p = 2.0;  // Lebesgue exponent; may be infinity
  WeightKind weight_kind = WeightKind::centered;

  void validate() const;  // rejects a < 0, b < 0, p < 2
  std::string label() const;
};

double weighted_norm(const Field& f, const WeightedNormSpec& spec, double t);

/// Vorticity curl u of the state, spectral.
Field vorticity(const SimState& s);

/// Pressure head pi = R_i R_j (u_i u_j - B_i B_j), evaluated spectrally
/// from physically formed (and dealiased) products; zero-mean normalized.
/// Returned as a physical scalar lattice.
Eigen::ArrayXd pressure_diagnostic(const SimState& s);

/// Fraction of the L^2 mass in the near-boundary shell
/// {max_i |x_i| > (1-shell) L/2}; the validity monitor of the whole-space
/// approximation. Returns 0 for a zero-mass field.
double boundary_fraction(const Field& f, double shell = 0.1);

struct NormSample {
  double t;
  double value;
};

struct NormSeries {
  WeightedNormSpec spec;
  std::string label;
  std::vector<NormSample> samples;
};

struct RunMeta {
  int grid_n = 0;
  double grid_l = 0.0;
  HallMhdParams params;
  std::uint64_t seed = 0;
  double init_width = 1.0;  // largest blob sigma; sets the fit window floor
};

/// All time series recorded during one run: one per norm spec, plus the
/// boundary-fraction series of u and B.
struct NormSeriesSet {
  RunMeta meta;
  std::vector<NormSeries> series;
  NormSeries boundary_u;
  NormSeries boundary_B;
};

/// Appends (s.t, value) for every spec (resolving u/B/omega; custom is
/// rejected) and the boundary fractions of u and B.
void record_norms(const SimState& s, const std::vector<WeightedNormSpec>& specs,
                  NormSeriesSet& sink);

}  // namespace hallmhd
