#pragma once

#include <utility>
#include <vector>

#include "hallmhd/field.hpp"

namespace hallmhd {

/// Parameters of the generalized Gronwall inequality
///   F'(t) <= C0 t^-a0 F + C1 t^-a1 F^b1 + C2 t^-a2 F^b2 + C3 t^(g2-1),
///   F(1) <= K0,   t >= 1,
/// with gamma_i = (1-alpha_i)/(1-beta_i).
struct GronwallParams {
  double alpha0 = 2.0;
  double alpha1 = 0.5;
  double alpha2 = 0.5;
  double beta1 = 0.5;
  double beta2 = 0.5;
  double C0 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double K0 = 0.0;

  double gamma1() const { return (1.0 - alpha1) / (1.0 - beta1); }
  double gamma2() const { return (1.0 - alpha2) / (1.0 - beta2); }

  /// alpha0 > 1, alpha_i < 1, beta_i < 1, C_i >= 0, K0 >= 0,
  /// gamma1 >= gamma2 (> 0 follows from the ranges).
  void validate() const;
};

/// Constructive constants realizing the bound F(t) <= C* t^gamma1, t >= 1.
struct BoundCertificate {
  double gamma1 = 0.0;
  double C_star = 0.0;  // = 2 K
  double t0 = 1.0;      // where C0 t^-(alpha0-1) drops below gamma1/2
  double K1 = 0.0;      // bound on F(t0) from the linear majorant
  double K = 0.0;       // max of the barrier constants and K1
};

std::pair<double, double> gronwall_exponents(const GronwallParams& p);

/// Builds the certificate: t0 = max(1, (2 C0/gamma1)^(1/(alpha0-1))); K1 by
/// adaptive quadrature (rel. tol 1e-10) of the variation-of-constants
/// solution of the linear majorant on [1, t0]; K the max of the barrier
/// constants (C_i 2^(3+beta_i)/gamma1)^(1/(1-beta_i)), K1, 8 C0/gamma1 and
/// 8 C3/gamma1; C* = 2K.
BoundCertificate gronwall_certificate(const GronwallParams& p);

struct OdeSample {
  double t;
  double f;
};

/// Extremal trajectory: the inequality integrated as an equality ODE from
/// F(1) = K0 with adaptive RK45 (rel. tol 1e-10), sampled on the geometric
/// schedule. Dominates every admissible F pointwise.
std::vector<OdeSample> gronwall_worst_case(const GronwallParams& p,
                                           double t_max);

/// True iff the worst-case trajectory stays below C* t^gamma1 at every
/// sample, with C* from gronwall_certificate.
bool gronwall_verify(const GronwallParams& p, double t_max);

/// Empirical constant of the parabolic interpolation inequality: the ratio
///   sup_{t/2<=tau<=t} ||grad u||_p^2
///   -----------------------------------------------------------------
///   sup_{t/4<=tau<=t}||u||_p sup_{t/4<=tau<=t}||g||_p + sup||u||_p^2/t
/// where g = u_t - Laplacian(u). Snapshots must cover [t/4, t] with at
/// least 3 samples per dyadic window.
double parabolic_interp_ratio(
    const std::vector<std::pair<double, Field>>& u_snapshots,
    const std::vector<std::pair<double, Field>>& g_snapshots, double p,
    double t);

namespace detail {
/// Adaptive Cash-Karp RK45 for a scalar ODE f' = rhs(t, f); integrates from
/// (t0, f0) to t1 and returns f(t1). Relative tolerance rtol, absolute atol.
double integrate_scalar_ode(double (*)(double, double, const void*),
                            const void* ctx, double t0, double f0, double t1,
                            double rtol, double atol);

/// Adaptive Simpson quadrature of a smooth integrand to relative tol.
double adaptive_simpson(double (*)(double, const void*), const void* ctx,
                        double a, double b, double rel_tol);
}  // namespace detail

}  // namespace hallmhd
