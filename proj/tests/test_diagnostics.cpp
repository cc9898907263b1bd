#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hallmhd/diagnostics.hpp"
#include "hallmhd/heat_oracle.hpp"
#include "hallmhd/integrator.hpp"
#include "test_util.hpp"

using namespace hallmhd;
using namespace hallmhd::testing;

namespace {

Field gaussian_scalar(const Grid& g, double sigma) {
  InitialDataSpec spec;
  spec.kind = InitKind::gaussian_scalar;
  spec.sigma = sigma;
  return generate_initial_data(spec, g).first;
}

const double kPi34 = std::pow(std::numbers::pi, 0.75);  // ~2.3597

}  // namespace

TEST_CASE("weighted_norm: zero field and validation") {
  const Grid g = make_grid(16, 8.0);
  Field z = Field::physical(g);
  for (double a : {0.0, 1.0, 2.5}) {
    for (double p : {2.0, 4.0, std::numeric_limits<double>::infinity()}) {
      WeightedNormSpec spec{FieldKind::custom, a, 0, p, WeightKind::centered};
      CHECK(weighted_norm(z, spec, 0.0) == 0.0);
    }
  }
  WeightedNormSpec bad_a{FieldKind::custom, -0.5, 0, 2.0, WeightKind::centered};
  WeightedNormSpec bad_p{FieldKind::custom, 0.0, 0, 1.5, WeightKind::centered};
  CHECK_THROWS_AS(weighted_norm(z, bad_a, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(weighted_norm(z, bad_p, 0.0), std::invalid_argument);
}

TEST_CASE("weighted_norm: Gaussian closed forms") {
  const Grid g = make_grid(64, 16.0);
  Field f = to_physical(gaussian_scalar(g, 1.0));

  SUBCASE("a = 0: ||g||_2 = pi^(3/4)") {
    WeightedNormSpec spec{FieldKind::custom, 0.0, 0, 2.0, WeightKind::centered};
    CHECK(rel_err(weighted_norm(f, spec, 0.0), kPi34) <= 1e-8);
  }

  SUBCASE("a = 1: |||x| g||_2 = sqrt(3/2) pi^(3/4)") {
    WeightedNormSpec spec{FieldKind::custom, 1.0, 0, 2.0, WeightKind::centered};
    CHECK(rel_err(weighted_norm(f, spec, 0.0), std::sqrt(1.5) * kPi34) <=
          1e-6);
  }

  SUBCASE("p = inf equals the direct grid max") {
    WeightedNormSpec spec{FieldKind::custom, 1.0, 0,
                          std::numeric_limits<double>::infinity(),
                          WeightKind::centered};
    double want = 0.0;
    std::int64_t idx = 0;
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        for (int k = 0; k < g.n(); ++k, ++idx) {
          const double r = std::sqrt(g.coord(i) * g.coord(i) +
                                     g.coord(j) * g.coord(j) +
                                     g.coord(k) * g.coord(k));
          want = std::max(want, r * std::abs(f.phys(0)[idx]));
        }
      }
    }
    CHECK(rel_err(weighted_norm(f, spec, 0.0), want) <= 1e-13);
  }
}

TEST_CASE("vorticity") {
  const Grid g = make_grid(16, 2.0 * std::numbers::pi);

  SUBCASE("irrotational field has no vorticity") {
    SimState s;
    s.u = dealias(gradient_mode(g, {1, 2, 0}));
    s.B = Field::spectral(g);
    CHECK(max_coef_abs(vorticity(s)) <= 1e-12 * max_coef_abs(s.u));
  }

  SUBCASE("single-mode shear: u = (sin(k x2), 0, 0)") {
    const double k = 2.0;
    Field u = Field::physical(g);
    Field want = Field::physical(g);
    std::int64_t idx = 0;
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        for (int kk = 0; kk < g.n(); ++kk, ++idx) {
          u.phys(0)[idx] = std::sin(k * g.coord(j));
          want.phys(2)[idx] = -k * std::cos(k * g.coord(j));
        }
      }
    }
    SimState s;
    s.u = to_spectral(u);
    s.B = Field::spectral(g);
    Field w = to_physical(vorticity(s));
    double err = 0.0;
    for (int c = 0; c < 3; ++c) {
      err = std::max(err, (w.phys(c) - want.phys(c)).abs().maxCoeff());
    }
    CHECK(err <= 1e-12 * k);
  }

  SUBCASE("vorticity is divergence-free") {
    SimState s;
    s.u = to_spectral(random_field(g, 3));
    s.B = Field::spectral(g);
    Field w = vorticity(s);
    CHECK(divergence_l2(w) <= 1e-12 * std::sqrt(grad_sq_norm(w)));
  }
}

TEST_CASE("pressure diagnostic") {
  const Grid g = make_grid(16, 2.0 * std::numbers::pi);

  SUBCASE("u = B gives zero head") {
    Field f = random_solenoidal(g, 17);
    SimState s;
    s.u = f;
    s.B = f;
    CHECK(pressure_diagnostic(s).abs().maxCoeff() == 0.0);
  }

  SUBCASE("single-mode u against a Poisson-solve oracle") {
    SimState s;
    s.u = dealias(to_spectral(beltrami(g, {1, 1, 0})));
    s.B = Field::spectral(g);
    Eigen::ArrayXd got = pressure_diagnostic(s);

    // Independent route: pi = (-Laplacian)^-1 div(u.grad u), with the
    // advection formed convectively in physical space.
    Field up = to_physical(s.u);
    Field adv = Field::physical(g);
    const std::array<std::array<int, 3>, 3> dirs = {
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int c = 0; c < 3; ++c) {
      adv.phys(c).setZero();
      for (int j = 0; j < 3; ++j) {
        Field dj = to_physical(derivative(s.u, dirs[j]));
        adv.phys(c) += up.phys(j) * dj.phys(c);
      }
    }
    Eigen::ArrayXcd div_adv = divergence(dealias(to_spectral(adv)));
    Eigen::ArrayXcd pi_hat(g.size());
    std::int64_t idx = 0;
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        for (int kk = 0; kk < g.n(); ++kk, ++idx) {
          const double kx = g.wavenumber(i), ky = g.wavenumber(j),
                       kz = g.wavenumber(kk);
          const double k2 = kx * kx + ky * ky + kz * kz;
          pi_hat[idx] = k2 == 0.0 ? 0.0 : div_adv[idx] / k2;
        }
      }
    }
    detail::fft3(g, pi_hat, +1);
    Eigen::ArrayXd want = pi_hat.real();
    const double scale = want.abs().maxCoeff();
    CHECK((got - want).abs().maxCoeff() <= 1e-12 * std::max(scale, 1.0));
  }

  SUBCASE("zero-mean normalization is exact") {
    SimState s;
    s.u = random_solenoidal(g, 23);
    s.B = random_solenoidal(g, 24);
    Eigen::ArrayXd pi = pressure_diagnostic(s);
    CHECK(std::abs(pi.sum()) <= 1e-12 * pi.abs().maxCoeff() * g.size());
  }
}

TEST_CASE("boundary_fraction") {
  const Grid g = make_grid(20, 10.0);

  SUBCASE("central support gives zero") {
    Field f = Field::physical(g);
    std::int64_t idx = 0;
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        for (int k = 0; k < g.n(); ++k, ++idx) {
          const bool central = std::abs(g.coord(i)) < 2.5 &&
                               std::abs(g.coord(j)) < 2.5 &&
                               std::abs(g.coord(k)) < 2.5;
          f.phys(1)[idx] = central ? 1.0 : 0.0;
        }
      }
    }
    CHECK(boundary_fraction(f) == 0.0);
  }

  SUBCASE("uniform field matches the counted shell fraction") {
    Field f = Field::physical(g);
    for (int c = 0; c < 3; ++c) f.phys(c).setConstant(0.7);
    // Independent count of lattice sites in the shell.
    std::int64_t outer = 0;
    const double cut = 0.9 * 0.5 * g.box();
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        for (int k = 0; k < g.n(); ++k) {
          if (std::abs(g.coord(i)) > cut || std::abs(g.coord(j)) > cut ||
              std::abs(g.coord(k)) > cut) {
            ++outer;
          }
        }
      }
    }
    const double want = static_cast<double>(outer) / g.size();
    CHECK(rel_err(boundary_fraction(f, 0.1), want) <= 1e-12);
  }

  SUBCASE("zero field gives zero") {
    CHECK(boundary_fraction(Field::physical(g)) == 0.0);
  }
}

TEST_CASE("record_norms") {
  const Grid g = make_grid(16, 8.0);
  SimState s;
  s.u = random_solenoidal(g, 31);
  s.B = random_solenoidal(g, 32);
  s.t = 1.5;

  SUBCASE("empty spec list appends only boundary series") {
    NormSeriesSet sink;
    record_norms(s, {}, sink);
    CHECK(sink.series.empty());
    CHECK(sink.boundary_u.samples.size() == 1);
    CHECK(sink.boundary_B.samples.size() == 1);
  }

  SUBCASE("values agree with direct weighted_norm calls") {
    std::vector<WeightedNormSpec> specs = {
        {FieldKind::u, 0.0, 0, 2.0, WeightKind::centered},
        {FieldKind::B, 1.0, 0, 2.0, WeightKind::centered},
        {FieldKind::omega, 0.0, 1, 2.0, WeightKind::centered},
    };
    NormSeriesSet sink;
    record_norms(s, specs, sink);
    REQUIRE(sink.series.size() == 3);
    for (const auto& series : sink.series) {
      CHECK(series.samples.size() == 1);
      CHECK(series.samples[0].t == 1.5);
    }
    CHECK(sink.series[0].samples[0].value ==
          weighted_norm(s.u, specs[0], s.t));
    CHECK(sink.series[1].samples[0].value ==
          weighted_norm(s.B, specs[1], s.t));
    CHECK(sink.series[2].samples[0].value ==
          weighted_norm(vorticity(s), specs[2], s.t));
  }

  SUBCASE("custom kind is rejected") {
    NormSeriesSet sink;
    std::vector<WeightedNormSpec> specs = {
        {FieldKind::custom, 0.0, 0, 2.0, WeightKind::centered}};
    CHECK_THROWS_AS(record_norms(s, specs, sink), std::invalid_argument);
  }
}

TEST_CASE("norm inequalities and weight structure") {
  const Grid g = make_grid(24, 12.0);

  SUBCASE("discrete L-inf vs L2: max|f| <= dx^(-3/2) ||f||") {
    for (std::uint64_t seed : {3u, 4u, 5u}) {
      Field f = random_field(g, seed);
      WeightedNormSpec n2{FieldKind::custom, 0.0, 0, 2.0,
                          WeightKind::centered};
      WeightedNormSpec ninf{FieldKind::custom, 0.0, 0,
                            std::numeric_limits<double>::infinity(),
                            WeightKind::centered};
      const double l2 = weighted_norm(f, n2, 0.0);
      const double linf = weighted_norm(f, ninf, 0.0);
      CHECK(linf <= std::pow(g.dx(), -1.5) * l2 * (1.0 + 1e-12));
    }
  }

  SUBCASE("weight nesting on a shell-supported field") {
    Field f = Field::physical(g);
    std::int64_t idx = 0;
    for (int i = 0; i < g.n(); ++i) {
      for (int j = 0; j < g.n(); ++j) {
        for (int k = 0; k < g.n(); ++k, ++idx) {
          const double r = std::sqrt(g.coord(i) * g.coord(i) +
                                     g.coord(j) * g.coord(j) +
                                     g.coord(k) * g.coord(k));
          f.phys(0)[idx] = r >= 1.0 ? std::exp(-(r - 2.0) * (r - 2.0)) : 0.0;
        }
      }
    }
    WeightedNormSpec lo{FieldKind::custom, 0.5, 0, 2.0, WeightKind::centered};
    WeightedNormSpec hi{FieldKind::custom, 1.7, 0, 2.0, WeightKind::centered};
    CHECK(weighted_norm(f, lo, 0.0) <= weighted_norm(f, hi, 0.0));
  }

  SUBCASE("shifted weight at t = 0 equals the centered weight") {
    Field f = random_field(g, 8);
    for (double a : {0.0, 2.0, 4.0}) {
      WeightedNormSpec c{FieldKind::custom, a, 0, 2.0, WeightKind::centered};
      WeightedNormSpec s{FieldKind::custom, a, 0, 2.0, WeightKind::shifted};
      CHECK(weighted_norm(f, c, 0.0) == weighted_norm(f, s, 0.0));
    }
  }
}

TEST_CASE("heat evolution matches the analytic weighted norms") {
  const Grid g = make_grid(32, 16.0);
  InitialDataSpec init;
  init.kind = InitKind::gaussian_scalar;
  init.sigma = 1.0;
  auto [u0, b0] = generate_initial_data(init, g);
  SimState s;
  s.u = std::move(u0);
  s.B = std::move(b0);
  s.params = HallMhdParams{1.0, 1.0, 0.0};

  const HeatOracle oracle(g, 1.0);
  StepControl ctrl;
  double max_err[3] = {0.0, 0.0, 0.0};
  Observer obs = [&](const SimState& st) {
    for (int a = 0; a < 3; ++a) {
      WeightedNormSpec spec{FieldKind::custom, static_cast<double>(a), 0, 2.0,
                            WeightKind::centered};
      max_err[a] = std::max(max_err[a],
                            rel_err(weighted_norm(st.u, spec, st.t),
                                    oracle.weighted_l2(a, st.t)));
    }
  };
  integrate(std::move(s), 4.0, ctrl, {obs}, /*linear_only=*/true);
  CHECK(max_err[0] <= 1e-4);
  CHECK(max_err[1] <= 1e-4);
  CHECK(max_err[2] <= 1e-4);
}
