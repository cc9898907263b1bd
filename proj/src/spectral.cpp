#include "hallmhd/spectral.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace hallmhd {

using cd = std::complex<double>;

namespace {

std::vector<double> wavenumbers(const Grid& g) {
  std::vector<double> k(g.n());
  for (int j = 0; j < g.n(); ++j) k[j] = g.wavenumber(j);
  return k;
}

}  // namespace

Field to_spectral(const Field& f) {
  if (f.rep() != Rep::physical) {
    throw std::invalid_argument("to_spectral: field already spectral");
  }
  Field out = Field::spectral(f.grid());
  for (int c = 0; c < 3; ++c) {
    out.spec(c) = f.phys(c).cast<cd>();
    detail::fft3(f.grid(), out.spec(c), -1);
  }
  return out;
}

Field to_physical(const Field& f) {
  if (f.rep() != Rep::spectral) {
    throw std::invalid_argument("to_physical: field already physical");
  }
  Field out = Field::physical(f.grid());
  Eigen::ArrayXcd buf;
  for (int c = 0; c < 3; ++c) {
    buf = f.spec(c);
    detail::fft3(f.grid(), buf, +1);
    out.phys(c) = buf.real();
  }
  return out;
}

Field as_spectral(const Field& f) {
  return f.rep() == Rep::spectral ? f : to_spectral(f);
}

Field as_physical(const Field& f) {
  return f.rep() == Rep::physical ? f : to_physical(f);
}

Field derivative(const Field& f, const std::array<int, 3>& alpha) {
  for (int d : alpha) {
    if (d < 0) throw std::invalid_argument("derivative: negative multi-index");
  }
  Field s = as_spectral(f);
  const Grid& g = s.grid();
  const int n = g.n();
  auto k = wavenumbers(g);

  // (i k)^alpha = i^|alpha| * k1^a1 k2^a2 k3^a3: an exact quadrant rotation
  // times a real magnitude, so the multiplier depends only on the
  // multi-index, not on any application order.
  std::array<std::vector<double>, 3> mag;
  for (int ax = 0; ax < 3; ++ax) {
    mag[ax].resize(n);
    for (int j = 0; j < n; ++j) {
      double m = 1.0;
      for (int e = 0; e < alpha[ax]; ++e) m *= k[j];
      mag[ax][j] = m;
    }
  }
  const int quadrant = (alpha[0] + alpha[1] + alpha[2]) % 4;

  Field out = Field::spectral(g);
  for (int c = 0; c < 3; ++c) {
    const auto& in = s.spec(c);
    auto& o = out.spec(c);
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double mij = mag[0][i] * mag[1][j];
        for (int kk = 0; kk < n; ++kk, ++idx) {
          const double r = mij * mag[2][kk];
          const cd v = in[idx];
          switch (quadrant) {
            case 0: o[idx] = cd(r * v.real(), r * v.imag()); break;
            case 1: o[idx] = cd(-r * v.imag(), r * v.real()); break;
            case 2: o[idx] = cd(-r * v.real(), -r * v.imag()); break;
            default: o[idx] = cd(r * v.imag(), -r * v.real()); break;
          }
        }
      }
    }
  }
  return out;
}

Field laplacian(const Field& f) {
  Field s = as_spectral(f);
  const Grid& g = s.grid();
  const int n = g.n();
  auto k = wavenumbers(g);
  Field out = Field::spectral(g);
  for (int c = 0; c < 3; ++c) {
    const auto& in = s.spec(c);
    auto& o = out.spec(c);
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i) {
      const double k1 = k[i] * k[i];
      for (int j = 0; j < n; ++j) {
        const double k12 = k1 + k[j] * k[j];
        for (int kk = 0; kk < n; ++kk, ++idx) {
          o[idx] = -(k12 + k[kk] * k[kk]) * in[idx];
        }
      }
    }
  }
  return out;
}

Field leray_project(const Field& f) {
  Field s = as_spectral(f);
  const Grid& g = s.grid();
  const int n = g.n();
  auto k = wavenumbers(g);
  Field out = Field::spectral(g);
  std::int64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int kk = 0; kk < n; ++kk, ++idx) {
        const double kx = k[i], ky = k[j], kz = k[kk];
        const double k2 = kx * kx + ky * ky + kz * kz;
        const cd v0 = s.spec(0)[idx];
        const cd v1 = s.spec(1)[idx];
        const cd v2 = s.spec(2)[idx];
        if (k2 == 0.0) {
          out.spec(0)[idx] = v0;
          out.spec(1)[idx] = v1;
          out.spec(2)[idx] = v2;
          continue;
        }
        const cd kv = (kx * v0 + ky * v1 + kz * v2) / k2;
        out.spec(0)[idx] = v0 - kx * kv;
        out.spec(1)[idx] = v1 - ky * kv;
        out.spec(2)[idx] = v2 - kz * kv;
      }
    }
  }
  return out;
}

Field dealias(const Field& f) {
  Field s = as_spectral(f);
  const Grid& g = s.grid();
  const int n = g.n();
  // |m| > N/3 is cut; decided in exact integer arithmetic as 3|m| > N.
  std::vector<bool> keep(n);
  for (int j = 0; j < n; ++j) keep[j] = 3 * std::abs(g.mode(j)) <= n;

  Field out = Field::spectral(g);
  for (int c = 0; c < 3; ++c) {
    const auto& in = s.spec(c);
    auto& o = out.spec(c);
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const bool kij = keep[i] && keep[j];
        for (int kk = 0; kk < n; ++kk, ++idx) {
          o[idx] = (kij && keep[kk]) ? in[idx] : cd(0.0, 0.0);
        }
      }
    }
  }
  return out;
}

Field curl(const Field& f) {
  Field s = as_spectral(f);
  const Grid& g = s.grid();
  const int n = g.n();
  auto k = wavenumbers(g);
  Field out = Field::spectral(g);
  const cd I(0.0, 1.0);
  std::int64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int kk = 0; kk < n; ++kk, ++idx) {
        const double kx = k[i], ky = k[j], kz = k[kk];
        const cd v0 = s.spec(0)[idx];
        const cd v1 = s.spec(1)[idx];
        const cd v2 = s.spec(2)[idx];
        out.spec(0)[idx] = I * (ky * v2 - kz * v1);
        out.spec(1)[idx] = I * (kz * v0 - kx * v2);
        out.spec(2)[idx] = I * (kx * v1 - ky * v0);
      }
    }
  }
  return out;
}

Eigen::ArrayXcd divergence(const Field& f) {
  Field s = as_spectral(f);
  const Grid& g = s.grid();
  const int n = g.n();
  auto k = wavenumbers(g);
  Eigen::ArrayXcd out(g.size());
  const cd I(0.0, 1.0);
  std::int64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int kk = 0; kk < n; ++kk, ++idx) {
        out[idx] = I * (k[i] * s.spec(0)[idx] + k[j] * s.spec(1)[idx] +
                        k[kk] * s.spec(2)[idx]);
      }
    }
  }
  return out;
}

Field cross(const Field& f, const Field& g) {
  if (f.rep() != Rep::physical || g.rep() != Rep::physical) {
    throw std::invalid_argument("cross: operands must be physical");
  }
  if (!(f.grid() == g.grid())) {
    throw std::invalid_argument("cross: grids differ");
  }
  Field out = Field::physical(f.grid());
  out.phys(0) = f.phys(1) * g.phys(2) - f.phys(2) * g.phys(1);
  out.phys(1) = f.phys(2) * g.phys(0) - f.phys(0) * g.phys(2);
  out.phys(2) = f.phys(0) * g.phys(1) - f.phys(1) * g.phys(0);
  return out;
}

double l2_norm(const Field& f) {
  const Grid& g = f.grid();
  double s = 0.0;
  if (f.rep() == Rep::physical) {
    for (int c = 0; c < 3; ++c) s += f.phys(c).square().sum();
    return std::sqrt(s * g.dx() * g.dx() * g.dx());
  }
  for (int c = 0; c < 3; ++c) s += f.spec(c).abs2().sum();
  return std::sqrt(s * g.box() * g.box() * g.box());
}

double l2_inner(const Field& f, const Field& g) {
  if (!(f.grid() == g.grid())) {
    throw std::invalid_argument("l2_inner: grids differ");
  }
  if (f.rep() != g.rep()) {
    throw std::invalid_argument("l2_inner: representations differ");
  }
  const Grid& gr = f.grid();
  double s = 0.0;
  if (f.rep() == Rep::physical) {
    for (int c = 0; c < 3; ++c) s += (f.phys(c) * g.phys(c)).sum();
    return s * gr.dx() * gr.dx() * gr.dx();
  }
  for (int c = 0; c < 3; ++c) {
    s += (f.spec(c) * g.spec(c).conjugate()).real().sum();
  }
  return s * gr.box() * gr.box() * gr.box();
}

double grad_sq_norm(const Field& f) {
  Field s = as_spectral(f);
  const Grid& g = s.grid();
  const int n = g.n();
  auto k = wavenumbers(g);
  double acc = 0.0;
  std::int64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const double k1 = k[i] * k[i];
    for (int j = 0; j < n; ++j) {
      const double k12 = k1 + k[j] * k[j];
      for (int kk = 0; kk < n; ++kk, ++idx) {
        const double k2 = k12 + k[kk] * k[kk];
        acc += k2 * (std::norm(s.spec(0)[idx]) + std::norm(s.spec(1)[idx]) +
                     std::norm(s.spec(2)[idx]));
      }
    }
  }
  return acc * g.box() * g.box() * g.box();
}

double max_abs(const Field& f) {
  Field p = as_physical(f);
  Eigen::ArrayXd m2 = p.phys(0).square() + p.phys(1).square() +
                      p.phys(2).square();
  return m2.size() == 0 ? 0.0 : std::sqrt(m2.maxCoeff());
}

double divergence_l2(const Field& f) {
  Eigen::ArrayXcd d = divergence(f);
  const double l = f.grid().box();
  return std::sqrt(d.abs2().sum() * l * l * l);
}

}  // namespace hallmhd
