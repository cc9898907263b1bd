#pragma once

#include <cstdint>

#include "json.hpp"

#include "hallmhd/gronwall.hpp"

namespace hallmhd {

struct LemmaSuiteResult {
  bool pass = false;
  nlohmann::ordered_json report;
};

/// The executable Lemma 2.1 / 2.2 battery:
///  - named certificate instances (constant, vorticity-proof, magnetic-proof,
///    generic) verified against the worst-case trajectory;
///  - the separable closed-form extremal case to 1e-8;
///  - worst-case growth exponent fitted against gamma1 (within 0.02);
///  - a seeded randomized sweep of admissible parameter draws;
///  - a corrupted-certificate negative control;
///  - parabolic interpolation ratios on heat evolutions (bounded by 10,
///    resolution-stable within 20%).
LemmaSuiteResult verify_lemmas(int sweep, std::uint64_t seed,
                               double t_max = 1e3);

/// One admissible, certificate-computable parameter draw.
GronwallParams draw_gronwall_params(std::uint64_t draw_seed);

}  // namespace hallmhd
