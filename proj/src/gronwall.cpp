#include "hallmhd/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hallmhd/diagnostics.hpp"

namespace hallmhd {

void GronwallParams::validate() const {
  if (!(alpha0 > 1.0)) {
    throw std::invalid_argument("gronwall: alpha0 must exceed 1");
  }
  if (!(alpha1 < 1.0 && alpha2 < 1.0)) {
    throw std::invalid_argument("gronwall: alpha1, alpha2 must be below 1");
  }
  if (!(beta1 < 1.0 && beta2 < 1.0)) {
    throw std::invalid_argument("gronwall: beta1, beta2 must be below 1");
  }
  if (!(C0 >= 0.0 && C1 >= 0.0 && C2 >= 0.0 && C3 >= 0.0 && K0 >= 0.0)) {
    throw std::invalid_argument("gronwall: constants must be nonnegative");
  }
  if (!(gamma1() >= gamma2())) {
    throw std::invalid_argument("gronwall: requires gamma1 >= gamma2");
  }
}

std::pair<double, double> gronwall_exponents(const GronwallParams& p) {
  p.validate();
  return {p.gamma1(), p.gamma2()};
}

namespace detail {

double integrate_scalar_ode(double (*rhs)(double, double, const void*),
                            const void* ctx, double t0, double f0, double t1,
                            double rtol, double atol) {
  // Cash-Karp 4(5) pair.
  static constexpr double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
  static constexpr double b21 = 0.2;
  static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
  static constexpr double b41 = 0.3, b42 = -0.9, b43 = 1.2;
  static constexpr double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0,
                          b54 = 35.0 / 27.0;
  static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0,
                          b63 = 575.0 / 13824.0, b64 = 44275.0 / 110592.0,
                          b65 = 253.0 / 4096.0;
  static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0,
                          c4 = 125.0 / 594.0, c6 = 512.0 / 1771.0;
  static constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                          d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                          d6 = c6 - 0.25;

  double t = t0, f = f0;
  double dt = std::min(1e-3 * std::max(std::abs(t1 - t0), 1.0), t1 - t0);
  if (!(dt > 0.0)) return f;

  long steps = 0;
  while (t < t1) {
    if (++steps > 50'000'000) {
      throw std::runtime_error("scalar ODE: step budget exhausted");
    }
    dt = std::min(dt, t1 - t);

    const double k1 = rhs(t, f, ctx);
    const double k2 = rhs(t + a2 * dt, f + dt * b21 * k1, ctx);
    const double k3 = rhs(t + a3 * dt, f + dt * (b31 * k1 + b32 * k2), ctx);
    const double k4 =
        rhs(t + a4 * dt, f + dt * (b41 * k1 + b42 * k2 + b43 * k3), ctx);
    const double k5 = rhs(
        t + a5 * dt, f + dt * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4), ctx);
    const double k6 =
        rhs(t + a6 * dt,
            f + dt * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5),
            ctx);

    const double df = dt * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
    const double err =
        std::abs(dt * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6));
    const double f_new = f + df;
    const double scale =
        atol + rtol * std::max(std::abs(f), std::abs(f_new));
    const double ratio = err / scale;

    if (!std::isfinite(f_new)) {
      throw std::runtime_error("scalar ODE: trajectory blow-up");
    }
    if (ratio <= 1.0) {
      t += dt;
      f = f_new;
      dt *= std::clamp(
          0.9 * (ratio > 0.0 ? std::pow(ratio, -0.2) : 5.0), 0.2, 5.0);
    } else {
      dt *= std::max(0.9 * std::pow(ratio, -0.25), 0.1);
      if (!(dt > std::abs(t) * 1e-15 + 1e-300)) {
        throw std::runtime_error("scalar ODE: step size underflow");
      }
    }
  }
  return f;
}

namespace {

double simpson(double (*f)(double, const void*), const void* ctx, double a,
               double fa, double b, double fb, double m, double fm, double whole,
               double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm, ctx), frm = f(rm, ctx);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth > 60) {
    throw std::runtime_error("adaptive quadrature failed to converge");
  }
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, ctx, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
         simpson(f, ctx, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_simpson(double (*f)(double, const void*), const void* ctx,
                        double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  const double fa = f(a, ctx), fb = f(b, ctx);
  const double m = 0.5 * (a + b), fm = f(m, ctx);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol =
      rel_tol * std::max(std::abs(whole), 1e-300);
  return simpson(f, ctx, a, fa, b, fb, m, fm, whole, tol, 0);
}

}  // namespace detail

namespace {

double pow_clamped(double f, double beta) {
  if (beta == 0.0) return 1.0;
  if (f <= 0.0) return beta > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::pow(f, beta);
}

struct WorstCaseCtx {
  GronwallParams p;
};

double worst_case_rhs(double t, double f, const void* vctx) {
  const auto& p = static_cast<const WorstCaseCtx*>(vctx)->p;
  const double fc = std::max(f, 0.0);
  double r = 0.0;
  if (p.C0 > 0.0) r += p.C0 * std::pow(t, -p.alpha0) * fc;
  if (p.C1 > 0.0) r += p.C1 * std::pow(t, -p.alpha1) * pow_clamped(fc, p.beta1);
  if (p.C2 > 0.0) r += p.C2 * std::pow(t, -p.alpha2) * pow_clamped(fc, p.beta2);
  if (p.C3 > 0.0) r += p.C3 * std::pow(t, p.gamma2() - 1.0);
  return r;
}

struct MajorantCtx {
  double lam, C1, e1, C2, e2, C3, e3, t0;
};

// e^{lam (t0 - s)} * forcing(s): the variation-of-constants integrand.
double majorant_integrand(double s, const void* vctx) {
  const auto& c = *static_cast<const MajorantCtx*>(vctx);
  double g = 0.0;
  if (c.C1 > 0.0) g += c.C1 * std::pow(s, c.e1);
  if (c.C2 > 0.0) g += c.C2 * std::pow(s, c.e2);
  if (c.C3 > 0.0) g += c.C3 * std::pow(s, c.e3);
  return std::exp(c.lam * (c.t0 - s)) * g;
}

}  // namespace

BoundCertificate gronwall_certificate(const GronwallParams& p) {
  p.validate();
  BoundCertificate cert;
  const double g1 = p.gamma1();
  cert.gamma1 = g1;

  cert.t0 = 1.0;
  if (p.C0 > 0.0) {
    cert.t0 = std::max(1.0, std::pow(2.0 * p.C0 / g1, 1.0 / (p.alpha0 - 1.0)));
  }

  // Linear majorant F' <= lam F + C1 t^{-a1/(1-b1)} + C2 t^{-a2/(1-b2)}
  // + C3 t^{g1-1}. The Young absorption leaves C_i beta_i F behind, so the
  // sound coefficient is lam = max(2 C0, C0 + C1 b1+ + C2 b2+); the two
  // agree whenever the absorbed terms fit under C0.
  const double lam =
      std::max(2.0 * p.C0, p.C0 + p.C1 * std::max(p.beta1, 0.0) +
                               p.C2 * std::max(p.beta2, 0.0));
  if (cert.t0 > 1.0) {
    if (lam * (cert.t0 - 1.0) > 690.0) {
      throw std::runtime_error(
          "gronwall_certificate: majorant growth overflows double range");
    }
    MajorantCtx ctx{lam,
                    p.C1,
                    -p.alpha1 / (1.0 - p.beta1),
                    p.C2,
                    -p.alpha2 / (1.0 - p.beta2),
                    p.C3,
                    g1 - 1.0,
                    cert.t0};
    const double forced =
        detail::adaptive_simpson(majorant_integrand, &ctx, 1.0, cert.t0, 1e-10);
    cert.K1 = std::exp(lam * (cert.t0 - 1.0)) * p.K0 + forced;
  } else {
    cert.K1 = p.K0;
  }

  auto barrier = [&](double c, double beta) {
    return c > 0.0
               ? std::pow(c * std::pow(2.0, 3.0 + beta) / g1, 1.0 / (1.0 - beta))
               : 0.0;
  };
  // The C3 barrier constant is required for soundness of the C3 forcing
  // term even though the source construction omits it.
  cert.K = std::max({barrier(p.C1, p.beta1), barrier(p.C2, p.beta2), cert.K1,
                     8.0 * p.C0 / g1, 8.0 * p.C3 / g1});
  cert.C_star = 2.0 * cert.K;
  return cert;
}

std::vector<OdeSample> gronwall_worst_case(const GronwallParams& p,
                                           double t_max) {
  p.validate();
  if (!(t_max > 1.0)) {
    throw std::invalid_argument("gronwall_worst_case: t_max must exceed 1");
  }

  WorstCaseCtx ctx{p};
  double f = p.K0;
  // The maximal solution leaves F = 0 immediately when a sublinear term
  // forces it; a vanishing seed selects that branch for the integrator.
  if (f == 0.0 && (p.C1 > 0.0 || p.C2 > 0.0)) f = 1e-30;

  const double ratio = std::pow(2.0, 0.25);
  std::vector<OdeSample> samples;
  double t = 1.0;
  samples.push_back({t, f});
  // Absolute-tolerance error committed while F is tiny is amplified by the
  // sublinear F^beta dynamics (delta F -> sqrt(delta) in the closed-form
  // case), so atol sits far below the 1e-10 relative target.
  const double atol = 1e-18 * std::max(p.K0, 1.0);
  while (t < t_max) {
    double t_next = std::min(t * ratio, t_max);
    f = detail::integrate_scalar_ode(worst_case_rhs, &ctx, t, f, t_next, 1e-10,
                                     atol);
    if (!std::isfinite(f)) {
      throw std::runtime_error("gronwall_worst_case: blow-up in finite time");
    }
    t = t_next;
    samples.push_back({t, f});
  }
  return samples;
}

bool gronwall_verify(const GronwallParams& p, double t_max) {
  const BoundCertificate cert = gronwall_certificate(p);
  for (const auto& s : gronwall_worst_case(p, t_max)) {
    if (s.f > cert.C_star * std::pow(s.t, cert.gamma1)) return false;
  }
  return true;
}

double parabolic_interp_ratio(
    const std::vector<std::pair<double, Field>>& u_snapshots,
    const std::vector<std::pair<double, Field>>& g_snapshots, double p,
    double t) {
  if (u_snapshots.size() != g_snapshots.size()) {
    throw std::invalid_argument(
        "parabolic_interp_ratio: snapshot lists differ in length");
  }
  if (!(t > 0.0)) {
    throw std::invalid_argument("parabolic_interp_ratio: t must be positive");
  }

  WeightedNormSpec n0{FieldKind::custom, 0.0, 0, p, WeightKind::centered};
  WeightedNormSpec n1{FieldKind::custom, 0.0, 1, p, WeightKind::centered};

  double sup_grad2 = 0.0;  // over [t/2, t]
  double sup_u = 0.0, sup_g = 0.0;  // over [t/4, t]
  int count_half = 0, count_quarter = 0;
  for (std::size_t i = 0; i < u_snapshots.size(); ++i) {
    const double tau = u_snapshots[i].first;
    if (g_snapshots[i].first != tau) {
      throw std::invalid_argument(
          "parabolic_interp_ratio: snapshot times do not match");
    }
    if (tau < 0.25 * t || tau > t) continue;
    ++count_quarter;
    sup_u = std::max(sup_u, weighted_norm(u_snapshots[i].second, n0, tau));
    sup_g = std::max(sup_g, weighted_norm(g_snapshots[i].second, n0, tau));
    if (tau >= 0.5 * t) {
      ++count_half;
      const double gn = weighted_norm(u_snapshots[i].second, n1, tau);
      sup_grad2 = std::max(sup_grad2, gn * gn);
    }
  }
  if (count_quarter < 3 || count_half < 3) {
    throw std::invalid_argument(
        "parabolic_interp_ratio: fewer than 3 snapshots in a dyadic window");
  }
  if (sup_grad2 == 0.0) return 0.0;
  const double rhs = sup_u * sup_g + sup_u * sup_u / t;
  return sup_grad2 / rhs;
}

}  // namespace hallmhd
