#include "hallmhd/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hallmhd {

using cd = std::complex<double>;

namespace {

std::string trim_number(double v) {
  if (std::isinf(v)) return "inf";
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

/// All 3-d multi-indices of total order b.
std::vector<std::array<int, 3>> multi_indices(int b) {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i <= b; ++i) {
    for (int j = 0; j <= b - i; ++j) out.push_back({i, j, b - i - j});
  }
  return out;
}

}  // namespace

void WeightedNormSpec::validate() const {
  if (!(a >= 0.0)) throw std::invalid_argument("norm spec: a must be >= 0");
  if (b < 0) throw std::invalid_argument("norm spec: b must be >= 0");
  if (!(p >= 2.0)) {
    throw std::invalid_argument("norm spec: p must be >= 2 (or inf)");
  }
}

std::string WeightedNormSpec::label() const {
  std::string f;
  switch (field_kind) {
    case FieldKind::u: f = "u"; break;
    case FieldKind::B: f = "B"; break;
    case FieldKind::omega: f = "omega"; break;
    case FieldKind::custom: f = "custom"; break;
  }
  std::string s = f + "_a" + trim_number(a) + "_b" + std::to_string(b) + "_p" +
                  trim_number(p);
  if (weight_kind == WeightKind::shifted) s += "_shifted";
  return s;
}

double weighted_norm(const Field& f, const WeightedNormSpec& spec, double t) {
  spec.validate();
  const Grid& g = f.grid();

  // Pointwise squared magnitude of the order-b derivative stack.
  Eigen::ArrayXd mag2 = Eigen::ArrayXd::Zero(g.size());
  if (spec.b == 0) {
    Field p = as_physical(f);
    for (int c = 0; c < 3; ++c) mag2 += p.phys(c).square();
  } else {
    Field s = as_spectral(f);
    for (const auto& alpha : multi_indices(spec.b)) {
      Field d = to_physical(derivative(s, alpha));
      for (int c = 0; c < 3; ++c) mag2 += d.phys(c).square();
    }
  }

  // Squared weight per point; |x| is measured from the box center.
  const int n = g.n();
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = g.coord(j);
  // Squared weight: w = base^(a/2) with base = |x|^2 (or |x|^2 + t), so
  // w^2 = base^a.
  auto w2 = [&](double r2) {
    if (spec.a == 0.0) return 1.0;
    const double base = spec.weight_kind == WeightKind::centered ? r2 : r2 + t;
    return std::pow(base, spec.a);
  };

  const bool inf_norm = std::isinf(spec.p);
  const double half_p = 0.5 * spec.p;
  double acc = 0.0;
  std::int64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double x2 = x[i] * x[i];
    for (int j = 0; j < n; ++j) {
      const double xy2 = x2 + x[j] * x[j];
      for (int kk = 0; kk < n; ++kk, ++idx) {
        const double q = w2(xy2 + x[kk] * x[kk]) * mag2[idx];
        if (inf_norm) {
          if (q > acc) acc = q;
        } else {
          acc += std::pow(q, half_p);
        }
      }
    }
  }
  if (inf_norm) return std::sqrt(acc);
  const double dx3 = g.dx() * g.dx() * g.dx();
  return std::pow(acc * dx3, 1.0 / spec.p);
}

Field vorticity(const SimState& s) { return curl(as_spectral(s.u)); }

Eigen::ArrayXd pressure_diagnostic(const SimState& s) {
  const Grid& g = s.u.grid();
  const Field up = to_physical(s.u);
  const Field bp = to_physical(s.B);

  const int pairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
  std::array<Eigen::ArrayXcd, 6> t;
  for (int e = 0; e < 6; ++e) {
    const int a = pairs[e][0], b = pairs[e][1];
    t[e] = (up.phys(a) * up.phys(b) - bp.phys(a) * bp.phys(b)).cast<cd>();
    detail::fft3(g, t[e], -1);
  }

  const int n = g.n();
  std::vector<double> k(n);
  std::vector<bool> keep(n);
  for (int j = 0; j < n; ++j) {
    k[j] = g.wavenumber(j);
    keep[j] = 3 * std::abs(g.mode(j)) <= n;
  }
  Eigen::ArrayXcd pi(g.size());
  std::int64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool kij = keep[i] && keep[j];
      for (int kk = 0; kk < n; ++kk, ++idx) {
        const double kx = k[i], ky = k[j], kz = k[kk];
        const double k2 = kx * kx + ky * ky + kz * kz;
        if (k2 == 0.0 || !(kij && keep[kk])) {
          pi[idx] = cd(0.0, 0.0);
          continue;
        }
        // pi = k_i k_j T_ij / |k|^2 with symmetric T.
        const cd q = kx * kx * t[0][idx] + ky * ky * t[1][idx] +
                     kz * kz * t[2][idx] +
                     2.0 * (kx * ky * t[3][idx] + kx * kz * t[4][idx] +
                            ky * kz * t[5][idx]);
        pi[idx] = q / k2;
      }
    }
  }
  detail::fft3(g, pi, +1);
  return pi.real();
}

double boundary_fraction(const Field& f, double shell) {
  if (!(shell > 0.0 && shell < 1.0)) {
    throw std::invalid_argument("boundary_fraction: shell must be in (0,1)");
  }
  Field p = as_physical(f);
  const Grid& g = p.grid();
  const int n = g.n();
  const double cut = (1.0 - shell) * 0.5 * g.box();
  std::vector<bool> outer(n);
  for (int j = 0; j < n; ++j) outer[j] = std::abs(g.coord(j)) > cut;

  double total = 0.0, in_shell = 0.0;
  std::int64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool oij = outer[i] || outer[j];
      for (int kk = 0; kk < n; ++kk, ++idx) {
        const double m2 = p.phys(0)[idx] * p.phys(0)[idx] +
                          p.phys(1)[idx] * p.phys(1)[idx] +
                          p.phys(2)[idx] * p.phys(2)[idx];
        total += m2;
        if (oij || outer[kk]) in_shell += m2;
      }
    }
  }
  return total == 0.0 ? 0.0 : in_shell / total;
}

void record_norms(const SimState& s, const std::vector<WeightedNormSpec>& specs,
                  NormSeriesSet& sink) {
  // Lazily resolved so omega is computed once and only when referenced.
  Field omega;
  bool have_omega = false;

  if (sink.series.size() != specs.size()) {
    sink.series.resize(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
      sink.series[i].spec = specs[i];
      sink.series[i].label = specs[i].label();
    }
  }

  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Field* f = nullptr;
    switch (specs[i].field_kind) {
      case FieldKind::u: f = &s.u; break;
      case FieldKind::B: f = &s.B; break;
      case FieldKind::omega:
        if (!have_omega) {
          omega = vorticity(s);
          have_omega = true;
        }
        f = &omega;
        break;
      case FieldKind::custom:
        throw std::invalid_argument(
            "record_norms: custom field kind cannot be resolved from a state");
    }
    sink.series[i].samples.push_back({s.t, weighted_norm(*f, specs[i], s.t)});
  }

  sink.boundary_u.label = "boundary_u";
  sink.boundary_B.label = "boundary_B";
  sink.boundary_u.samples.push_back({s.t, boundary_fraction(to_physical(s.u))});
  sink.boundary_B.samples.push_back({s.t, boundary_fraction(to_physical(s.B))});
}

}  // namespace hallmhd
