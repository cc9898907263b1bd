#include "hallmhd/decay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hallmhd {

void ExponentQuery::validate() const {
  if (field == FieldKind::custom) {
    throw std::invalid_argument("exponent query: field must be u, B, or omega");
  }
  if (!(a >= 0.0)) throw std::invalid_argument("exponent query: a must be >= 0");
  if (b < 0) throw std::invalid_argument("exponent query: b must be >= 0");
  if (!(p >= 2.0)) {
    throw std::invalid_argument("exponent query: p must be >= 2 (or inf)");
  }
}

std::optional<double> predicted_exponent(const ExponentQuery& q) {
  q.validate();
  // 2/p -> 0 for p = inf under IEEE semantics.
  const double base =
      -kGamma0 + 0.5 * q.a - 0.5 * q.b - 0.75 * (1.0 - 2.0 / q.p);
  switch (q.field) {
    case FieldKind::u:
      if (!(q.a < q.b + 2.5)) return std::nullopt;  // strict validity strip
      return base;
    case FieldKind::B:
      return base;
    case FieldKind::omega:
      return base - 0.5;
    default:
      return std::nullopt;
  }
}

DecayFit fit_decay(const NormSeries& series, double t_lo, double t_hi,
                   double shift) {
  if (!(t_lo < t_hi)) {
    throw std::invalid_argument("fit_decay: window must satisfy t_lo < t_hi");
  }
  std::vector<double> xs, ys;
  for (const auto& s : series.samples) {
    if (s.t < t_lo || s.t > t_hi) continue;
    if (!(s.value > 0.0)) {
      throw std::invalid_argument(
          "fit_decay: nonpositive series value inside the window");
    }
    if (!(s.t + shift > 0.0)) {
      throw std::invalid_argument("fit_decay: t + shift must be positive");
    }
    xs.push_back(std::log(s.t + shift));
    ys.push_back(std::log(s.value));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 5) {
    throw std::invalid_argument("fit_decay: fewer than 5 samples in window");
  }

  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("fit_decay: degenerate abscissa");
  }

  DecayFit fit;
  fit.slope = sxy / sxx;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.shift = shift;
  fit.n_points = n;

  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ys[i] - my - fit.slope * (xs[i] - mx);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : std::max(0.0, 1.0 - ss_res / syy);
  fit.stderr_slope =
      n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
  return fit;
}

std::optional<FitWindow> auto_window(const NormSeries& series,
                                     const NormSeries& boundary,
                                     double threshold, double t_min_factor,
                                     double init_width) {
  if (series.samples.empty()) {
    throw std::invalid_argument("auto_window: empty series");
  }
  const double t_lo = t_min_factor * init_width * init_width;
  double t_hi = -1.0;
  for (const auto& s : boundary.samples) {
    if (s.value <= threshold && s.t > t_hi) t_hi = s.t;
  }
  if (t_hi <= t_lo) return std::nullopt;
  return FitWindow{t_lo, t_hi};
}

SupRecursionResult check_sup_recursion(const NormSeries& series, double gamma,
                                       double c0, double t_floor) {
  const auto& s = series.samples;
  auto sup_in = [&](double lo, double hi, int* count) {
    double m = 0.0;
    int n = 0;
    for (const auto& q : s) {
      if (q.t >= lo && q.t <= hi) {
        m = std::max(m, q.value);
        ++n;
      }
    }
    if (count) *count = n;
    return m;
  };

  SupRecursionResult res;
  res.vacuous = true;
  for (const auto& q : s) {
    const double t = q.t;
    if (t < 4.0 * t_floor) continue;
    res.vacuous = false;
    int n4 = 0;
    const double sup4 = sup_in(0.25 * t, t, &n4);
    if (n4 < 3) {
      throw std::invalid_argument(
          "check_sup_recursion: window [t/4, t] holds fewer than 3 samples");
    }
    const double sup2 = sup_in(0.5 * t, t, nullptr);
    const double lhs = sup2 * sup2;
    const double rhs =
        c0 * std::pow(t, -2.0 * gamma) + c0 * std::pow(t, -gamma) * sup4;
    if (lhs > rhs) {
      res.holds = false;
      return res;
    }
  }
  return res;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::out_of_validity: return "out-of-validity";
    case Verdict::no_valid_window: return "no-valid-window";
  }
  return "?";
}

Verdict verdict(const ExponentQuery& q, const DecayFit& fit, double tol) {
  const auto predicted = predicted_exponent(q);
  if (!predicted) return Verdict::out_of_validity;
  const bool ok =
      std::abs(fit.slope - *predicted) <= tol && fit.r_squared >= 0.95;
  return ok ? Verdict::pass : Verdict::fail;
}

}  // namespace hallmhd
