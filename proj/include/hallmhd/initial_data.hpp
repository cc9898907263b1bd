#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "hallmhd/spectral.hpp"

namespace hallmhd {

struct BlobSpec {
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double sigma = 1.0;
  std::array<double, 3> amplitude{0.0, 0.0, 0.0};
};

enum class WhichFields { u_only, b_only, both };
enum class InitKind {
  potential_curl,   // u = curl(Psi), Psi a sum of Gaussian vector potentials
  gaussian_scalar,  // scalar Gaussian in the first component (heat oracle)
};

struct InitialDataSpec {
  std::vector<BlobSpec> blobs;  // explicit; drawn from seed when empty
  int random_blobs = 2;
  double sigma = 1.0;          // width of drawn blobs
  double center_spread = 2.0;  // drawn centers uniform in [-spread, spread]^3
  double target_h3 = 1e-2;
  std::uint64_t seed = 1;
  WhichFields which = WhichFields::both;
  InitKind kind = InitKind::potential_curl;

  void validate(const Grid& g) const;
};

/// Divergence-free initial data: each requested field is curl(Psi) with Psi
/// a sum of Gaussian-enveloped vector potentials, truncated, projected, and
/// rescaled so the combined discrete H^3 norm equals target_h3.
/// Deterministic in the seed. Fields returned spectrally.
std::pair<Field, Field> generate_initial_data(const InitialDataSpec& spec,
                                              const Grid& g);

/// Discrete H^3 norm with the same stacked-derivative convention as the
/// weighted norms: sqrt( sum_{b<=3} ||D^b f||_{L^2}^2 ).
double h3_norm(const Field& f);

/// Deterministic uniform double in [0, 1) from a 64-bit generator word.
double uniform01(std::uint64_t word);

}  // namespace hallmhd
