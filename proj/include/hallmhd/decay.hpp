#pragma once

#include <optional>
#include <string>

#include "hallmhd/diagnostics.hpp"

namespace hallmhd {

/// Baseline temporal decay exponent of the L^2 norms for L^1-cap-L^2 data.
inline constexpr double kGamma0 = 0.75;

struct ExponentQuery {
  FieldKind field = FieldKind::u;
  double a = 0.0;
  int b = 0;
  double p = 2.0;

  void validate() const;
};

/// Predicted decay exponent of |||x|^a D^b f||_{L^p}:
///   -gamma0 + a/2 - b/2 - (3/4)(1 - 2/p), with an extra -1/2 for the
/// vorticity. Velocity queries require a < b + 5/2 (strict); the magnetic
/// field and vorticity carry no weight restriction. The table does not
/// depend on eps_hall. Returns nullopt when the query is out of validity.
std::optional<double> predicted_exponent(const ExponentQuery& q);

struct DecayFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
  double r_squared = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double shift = 1.0;  // fit is linear in log(t + shift)
  int n_points = 0;
};

/// Least-squares line through (log(t_i + shift), log v_i) over samples with
/// t in [t_lo, t_hi]. Requires >= 5 in-window samples, all positive.
DecayFit fit_decay(const NormSeries& series, double t_lo, double t_hi,
                   double shift = 1.0);

struct FitWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

/// Validity window for decay fits: t_lo = t_min_factor * init_width^2 cuts
/// the transient, t_hi is the last time the boundary fraction stays at or
/// below threshold. nullopt when the window is empty.
std::optional<FitWindow> auto_window(const NormSeries& series,
                                     const NormSeries& boundary,
                                     double threshold = 1e-6,
                                     double t_min_factor = 5.0,
                                     double init_width = 1.0);

struct SupRecursionResult {
  bool holds = true;
  bool vacuous = false;  // no sample time reached 4 * t_floor
};

/// Sampled check of the dyadic sup-recursion hypothesis
///   sup_{t/2<=tau<=t} F(tau)^2 <= C0 t^{-2 gamma} + C0 t^{-gamma}
///                                   sup_{t/4<=tau<=t} F(tau)
/// for every sampled t >= 4 t_floor. Requires every evaluated window
/// [t/4, t] to contain at least 3 samples.
SupRecursionResult check_sup_recursion(const NormSeries& series, double gamma,
                                       double c0, double t_floor);

enum class Verdict { pass, fail, out_of_validity, no_valid_window };

std::string to_string(Verdict v);

/// pass iff |slope - predicted| <= tol and R^2 >= 0.95; out_of_validity when
/// the predictor rejects the query.
Verdict verdict(const ExponentQuery& q, const DecayFit& fit, double tol);

}  // namespace hallmhd
