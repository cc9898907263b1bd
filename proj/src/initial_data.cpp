#include "hallmhd/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace hallmhd {

double uniform01(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

void InitialDataSpec::validate(const Grid& g) const {
  if (kind == InitKind::gaussian_scalar) {
    if (!(sigma > 0.0)) {
      throw std::invalid_argument("initial data: sigma must be positive");
    }
    return;
  }
  auto check_blob = [&](const BlobSpec& b) {
    // Resolvability: the blob diameter 2 sigma must span >= 4 cells.
    if (!(b.sigma > 0.0) || 2.0 * b.sigma < 4.0 * g.dx()) {
      throw std::invalid_argument(
          "initial data: blob width unresolvable (need 2*sigma >= 4*dx)");
    }
    for (double c : b.center) {
      if (std::abs(c) > 0.25 * g.box()) {
        throw std::invalid_argument(
            "initial data: blob center outside the central half-box");
      }
      if (std::abs(c) > 0.5 * g.box() - 3.0 * b.sigma) {
        throw std::invalid_argument(
            "initial data: blob center closer than 3*sigma to the boundary");
      }
    }
  };
  for (const auto& b : blobs) check_blob(b);
  if (blobs.empty()) {
    if (random_blobs <= 0) {
      throw std::invalid_argument("initial data: no blobs specified");
    }
    check_blob(BlobSpec{{center_spread, center_spread, center_spread}, sigma,
                        {1.0, 0.0, 0.0}});
  }
}

namespace {

std::vector<BlobSpec> resolve_blobs(const InitialDataSpec& spec,
                                    std::mt19937_64& rng) {
  if (!spec.blobs.empty()) return spec.blobs;
  std::vector<BlobSpec> out;
  for (int i = 0; i < spec.random_blobs; ++i) {
    BlobSpec b;
    b.sigma = spec.sigma;
    for (int d = 0; d < 3; ++d) {
      b.center[d] = spec.center_spread * (2.0 * uniform01(rng()) - 1.0);
    }
    // Unit-sphere amplitude direction.
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (int d = 0; d < 3; ++d) {
        b.amplitude[d] = 2.0 * uniform01(rng()) - 1.0;
        n2 += b.amplitude[d] * b.amplitude[d];
      }
    } while (n2 < 1e-12 || n2 > 1.0);
    const double inv = 1.0 / std::sqrt(n2);
    for (double& a : b.amplitude) a *= inv;
    out.push_back(b);
  }
  return out;
}

// curl of the summed Gaussian vector potentials, sampled on the grid,
// truncated and projection-cleaned. Spectral output.
Field curl_of_potential(const Grid& g, const std::vector<BlobSpec>& blobs) {
  Field psi = Field::physical(g);
  const int n = g.n();
  for (const auto& b : blobs) {
    const double inv2s2 = 1.0 / (2.0 * b.sigma * b.sigma);
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i) {
      const double dx0 = g.coord(i) - b.center[0];
      for (int j = 0; j < n; ++j) {
        const double dx1 = g.coord(j) - b.center[1];
        const double r01 = dx0 * dx0 + dx1 * dx1;
        for (int kk = 0; kk < n; ++kk, ++idx) {
          const double dx2 = g.coord(kk) - b.center[2];
          const double env = std::exp(-(r01 + dx2 * dx2) * inv2s2);
          psi.phys(0)[idx] += b.amplitude[0] * env;
          psi.phys(1)[idx] += b.amplitude[1] * env;
          psi.phys(2)[idx] += b.amplitude[2] * env;
        }
      }
    }
  }
  return leray_project(dealias(curl(to_spectral(psi))));
}

}  // namespace

double h3_norm(const Field& f) {
  Field s = as_spectral(f);
  const Grid& g = s.grid();
  const int n = g.n();
  std::vector<double> k(n);
  for (int j = 0; j < n; ++j) k[j] = g.wavenumber(j);

  // sum over all multi-indices |alpha| <= 3 of prod k_i^(2 alpha_i).
  auto weight = [](double k1, double k2, double k3) {
    const double q1 = k1 * k1, q2 = k2 * k2, q3 = k3 * k3;
    double w = 1.0;            // b = 0
    w += q1 + q2 + q3;         // b = 1
    w += q1 * q1 + q2 * q2 + q3 * q3 + q1 * q2 + q1 * q3 + q2 * q3;  // b = 2
    w += q1 * q1 * q1 + q2 * q2 * q2 + q3 * q3 * q3 +                // b = 3
         q1 * q1 * q2 + q1 * q1 * q3 + q2 * q2 * q1 + q2 * q2 * q3 +
         q3 * q3 * q1 + q3 * q3 * q2 + q1 * q2 * q3;
    return w;
  };

  double acc = 0.0;
  std::int64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int kk = 0; kk < n; ++kk, ++idx) {
        const double w = weight(k[i], k[j], k[kk]);
        acc += w * (std::norm(s.spec(0)[idx]) + std::norm(s.spec(1)[idx]) +
                    std::norm(s.spec(2)[idx]));
      }
    }
  }
  const double l = g.box();
  return std::sqrt(acc * l * l * l);
}

std::pair<Field, Field> generate_initial_data(const InitialDataSpec& spec,
                                              const Grid& g) {
  spec.validate(g);

  if (spec.kind == InitKind::gaussian_scalar) {
    // Heat-oracle data: exp(-|x|^2 / (2 sigma^2)) in the first component.
    Field u = Field::physical(g);
    const int n = g.n();
    const double inv2s2 = 1.0 / (2.0 * spec.sigma * spec.sigma);
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i) {
      const double x2 = g.coord(i) * g.coord(i);
      for (int j = 0; j < n; ++j) {
        const double xy2 = x2 + g.coord(j) * g.coord(j);
        for (int kk = 0; kk < n; ++kk, ++idx) {
          u.phys(0)[idx] =
              std::exp(-(xy2 + g.coord(kk) * g.coord(kk)) * inv2s2);
        }
      }
    }
    return {to_spectral(u), Field::spectral(g)};
  }

  std::mt19937_64 rng(spec.seed);
  const bool want_u =
      spec.which == WhichFields::u_only || spec.which == WhichFields::both;
  const bool want_b =
      spec.which == WhichFields::b_only || spec.which == WhichFields::both;

  // Independent blob draws per field, in a fixed order for determinism.
  Field u = Field::spectral(g), b = Field::spectral(g);
  if (want_u) u = curl_of_potential(g, resolve_blobs(spec, rng));
  if (want_b) b = curl_of_potential(g, resolve_blobs(spec, rng));

  const double total = h3_norm(u) + h3_norm(b);
  if (total > 0.0 && spec.target_h3 > 0.0) {
    const double scale = spec.target_h3 / total;
    for (int c = 0; c < 3; ++c) {
      u.spec(c) *= scale;
      b.spec(c) *= scale;
    }
  }
  return {std::move(u), std::move(b)};
}

}  // namespace hallmhd
