#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "test_util.hpp"

using namespace hallmhd;
using namespace hallmhd::testing;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("make_grid basics") {
  const Grid g = make_grid(8, kTwoPi);
  CHECK(g.dx() == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-15));
  CHECK(g.coord(0) == doctest::Approx(-std::numbers::pi).epsilon(1e-15));

  // DFT frequency set {-4,...,3} in standard ordering.
  CHECK(g.mode(0) == 0);
  CHECK(g.mode(3) == 3);
  CHECK(g.mode(4) == -4);
  CHECK(g.mode(7) == -1);
  CHECK(g.wavenumber(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.wavenumber(7) == doctest::Approx(-1.0).epsilon(1e-15));

  CHECK_THROWS_AS(make_grid(7, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(6, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, -2.0), std::invalid_argument);
}

TEST_CASE("transforms: zero, single mode, round trip") {
  const Grid g = make_grid(16, 4.0);

  SUBCASE("zero field stays zero") {
    Field z = Field::physical(g);
    Field zs = to_spectral(z);
    CHECK(max_coef_abs(zs) == 0.0);
  }

  SUBCASE("sin(2 pi x1 / L) has exactly two nonzero coefficients") {
    Field f = Field::physical(g);
    std::int64_t idx = 0;
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        for (int k = 0; k < g.n(); ++k, ++idx) {
          f.phys(0)[idx] = std::sin(kTwoPi * g.coord(i) / g.box());
        }
      }
    }
    Field s = to_spectral(f);
    int nonzero = 0;
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        for (int k = 0; k < g.n(); ++k) {
          const double mag = std::abs(s.spec(0)[g.index(i, j, k)]);
          if (mag > 1e-13) {
            ++nonzero;
            CHECK(std::abs(g.mode(i)) == 1);
            CHECK(g.mode(j) == 0);
            CHECK(g.mode(k) == 0);
            CHECK(mag == doctest::Approx(0.5).epsilon(1e-12));
          }
        }
      }
    }
    CHECK(nonzero == 2);
    CHECK(max_coef_abs(Field::spectral(g)) == 0.0);
  }

  SUBCASE("random round trip to 1e-12 relative") {
    Field f = random_field(g, 42);
    Field back = to_physical(to_spectral(f));
    double max_err = 0.0, max_val = 0.0;
    for (int c = 0; c < 3; ++c) {
      max_err = std::max(max_err, (back.phys(c) - f.phys(c)).abs().maxCoeff());
      max_val = std::max(max_val, f.phys(c).abs().maxCoeff());
    }
    CHECK(max_err <= 1e-12 * max_val);
  }

  SUBCASE("representation tag is enforced") {
    Field p = Field::physical(g);
    Field s = Field::spectral(g);
    CHECK_THROWS_AS(to_spectral(s), std::invalid_argument);
    CHECK_THROWS_AS(to_physical(p), std::invalid_argument);
  }
}

TEST_CASE("derivative") {
  const Grid g = make_grid(16, kTwoPi);

  SUBCASE("constant field differentiates to zero") {
    Field f = Field::physical(g);
    for (int c = 0; c < 3; ++c) f.phys(c).setConstant(3.5);
    Field d = derivative(f, {1, 0, 0});
    CHECK(max_coef_abs(d) <= 1e-13);
  }

  SUBCASE("d1 sin(k x1) = k cos(k x1)") {
    const double k = 3.0 * kTwoPi / g.box();
    Field f = Field::physical(g);
    Field want = Field::physical(g);
    std::int64_t idx = 0;
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        for (int kk = 0; kk < g.n(); ++kk, ++idx) {
          f.phys(0)[idx] = std::sin(k * g.coord(i));
          want.phys(0)[idx] = k * std::cos(k * g.coord(i));
        }
      }
    }
    Field d = to_physical(derivative(f, {1, 0, 0}));
    CHECK((d.phys(0) - want.phys(0)).abs().maxCoeff() <= 1e-12 * k);
  }

  SUBCASE("mixed partials commute coefficientwise") {
    Field f = random_field(g, 7);
    // The multiplier of the multi-index (1,1,0) is a single exact product,
    // so the two derivative orders name the same operation.
    Field both = derivative(f, {1, 1, 0});
    Field d12 = derivative(derivative(f, {1, 0, 0}), {0, 1, 0});
    Field d21 = derivative(derivative(f, {0, 1, 0}), {1, 0, 0});
    const double scale = max_coef_abs(both);
    CHECK(max_coef_diff(derivative(f, {1, 1, 0}), both) == 0.0);
    CHECK(max_coef_diff(d12, both) <= 1e-15 * scale);
    CHECK(max_coef_diff(d21, both) <= 1e-15 * scale);
  }
}

TEST_CASE("leray projection") {
  const Grid g = make_grid(16, kTwoPi);

  SUBCASE("divergence-free single mode is fixed") {
    Field b = to_spectral(beltrami(g, {1, 2, 0}));
    Field pb = leray_project(b);
    CHECK(max_coef_diff(b, pb) <= 1e-14 * max_coef_abs(b));
  }

  SUBCASE("pure gradient maps to zero, mean mode passes through") {
    Field grad = gradient_mode(g, {2, 1, 1});
    Field pg = leray_project(grad);
    CHECK(max_coef_abs(pg) <= 1e-13 * max_coef_abs(grad));

    Field with_mean = grad;
    with_mean.spec(1)[0] = 2.5;  // constant offset in component 1
    Field pm = leray_project(with_mean);
    CHECK(std::abs(pm.spec(1)[0] - std::complex<double>(2.5, 0.0)) == 0.0);
  }

  SUBCASE("random field projects to relative divergence <= 1e-12") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      Field f = to_spectral(random_field(g, seed));
      Field pf = leray_project(f);
      CHECK(divergence_l2(pf) <= 1e-12 * std::sqrt(grad_sq_norm(f)));
    }
  }
}

TEST_CASE("dealias") {
  SUBCASE("field inside the 2/3 ball is unchanged") {
    const Grid g = make_grid(12, 1.0);
    Field f = random_truncated(g, 5);
    CHECK(max_coef_diff(f, dealias(f)) == 0.0);
  }

  SUBCASE("N=8 content at |m1| = 3 is removed") {
    const Grid g = make_grid(8, kTwoPi);
    Field f = Field::physical(g);
    std::int64_t idx = 0;
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        for (int k = 0; k < g.n(); ++k, ++idx) {
          f.phys(0)[idx] = std::cos(3.0 * g.coord(i));
        }
      }
    }
    CHECK(max_coef_abs(dealias(to_spectral(f))) <= 1e-14);
  }

  SUBCASE("idempotent") {
    const Grid g = make_grid(16, 1.0);
    Field f = to_spectral(random_field(g, 9));
    Field once = dealias(f);
    CHECK(max_coef_diff(once, dealias(once)) == 0.0);
  }
}

TEST_CASE("curl, divergence, cross") {
  const Grid g = make_grid(16, kTwoPi);

  SUBCASE("curl of a gradient vanishes") {
    Field grad = gradient_mode(g, {1, 2, 2});
    CHECK(max_coef_abs(curl(grad)) <= 1e-13 * max_coef_abs(grad));
  }

  SUBCASE("cross(f, f) = 0 pointwise") {
    Field f = random_field(g, 11);
    Field c = cross(f, f);
    for (int comp = 0; comp < 3; ++comp) {
      CHECK(c.phys(comp).abs().maxCoeff() == 0.0);
    }
  }

  SUBCASE("Beltrami eigenfield: curl f = |k| f") {
    const std::array<int, 3> m = {2, 1, 2};
    const double lambda = std::sqrt(4.0 + 1.0 + 4.0) * kTwoPi / g.box();
    Field f = to_spectral(beltrami(g, m));
    Field cf = curl(f);
    Field want = f;
    for (int c = 0; c < 3; ++c) want.spec(c) *= lambda;
    CHECK(max_coef_diff(cf, want) <= 1e-12 * lambda * max_coef_abs(f));
  }

  SUBCASE("div(curl f) vanishes") {
    Field f = to_spectral(random_field(g, 21));
    Field cf = curl(f);
    CHECK(divergence_l2(cf) <= 1e-12 * std::sqrt(grad_sq_norm(cf)));
  }
}

TEST_CASE("spectral invariants on random fields") {
  const Grid g = make_grid(16, 3.0);
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    Field fp = random_field(g, seed);
    Field gp = random_field(g, seed + 1000);
    Field fs = to_spectral(fp);
    Field gs = to_spectral(gp);

    // Parseval: grid inner product equals spectral inner product.
    const double ip_phys = l2_inner(fp, gp);
    const double ip_spec = l2_inner(fs, gs);
    CHECK(rel_err(ip_spec, ip_phys) <= 1e-12);

    // Periodic integration by parts: <curl f, g> = <f, curl g>.
    const double lhs = l2_inner(curl(fs), gs);
    const double rhs = l2_inner(fs, curl(gs));
    CHECK(std::abs(lhs - rhs) <=
          1e-12 * std::sqrt(grad_sq_norm(fs)) * l2_norm(gs));

    // Leray projector: idempotent and self-adjoint.
    Field pf = leray_project(fs);
    CHECK(max_coef_diff(leray_project(pf), pf) <=
          1e-12 * max_coef_abs(fs));
    const double pa = l2_inner(pf, gs);
    const double pb = l2_inner(fs, leray_project(gs));
    CHECK(std::abs(pa - pb) <= 1e-12 * l2_norm(fs) * l2_norm(gs));

    // Differentiation commutes with dealiasing, exactly.
    Field a = dealias(derivative(fs, {0, 1, 1}));
    Field b = derivative(dealias(fs), {0, 1, 1});
    CHECK(max_coef_diff(a, b) == 0.0);
  }
}
