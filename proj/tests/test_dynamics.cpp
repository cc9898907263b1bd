#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "conv_oracle.hpp"
#include "test_util.hpp"

using namespace hallmhd;
using namespace hallmhd::testing;

namespace {

SimState make_state(Field u, Field b, double eps_hall = 1.0) {
  SimState s;
  s.u = std::move(u);
  s.B = std::move(b);
  s.params = HallMhdParams{1.0, 1.0, eps_hall};
  return s;
}

double rel_field_err(const Field& got, const Field& want) {
  double num = 0.0, den = 0.0;
  for (int c = 0; c < 3; ++c) {
    num = std::max(num, (got.spec(c) - want.spec(c)).abs().maxCoeff());
    den = std::max(den, want.spec(c).abs().maxCoeff());
  }
  return den == 0.0 ? num : num / den;
}

}  // namespace

TEST_CASE("params validation") {
  auto bad_nu = HallMhdParams{0.0, 1.0, 1.0};
  auto bad_eta = HallMhdParams{1.0, -1.0, 1.0};
  auto bad_eps = HallMhdParams{1.0, 1.0, -0.1};
  auto ok = HallMhdParams{1.0, 1.0, 0.0};
  CHECK_THROWS_AS(bad_nu.validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad_eta.validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad_eps.validate(), std::invalid_argument);
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("zero state gives zero tendencies and budget") {
  const Grid g = make_grid(16, 2.0 * std::numbers::pi);
  SimState s = make_state(Field::spectral(g), Field::spectral(g));
  CHECK(max_coef_abs(velocity_rhs(s)) == 0.0);
  CHECK(max_coef_abs(magnetic_rhs(s)) == 0.0);
  const EnergyBudget e = energy_budget(s);
  CHECK(e.kinetic == 0.0);
  CHECK(e.magnetic == 0.0);
  CHECK(e.visc_dissipation == 0.0);
  CHECK(e.ohmic_dissipation == 0.0);
  CHECK(e.cross_transfer == 0.0);
  CHECK(e.hall_work == 0.0);
}

TEST_CASE("Beltrami magnetic field exerts no projected force") {
  // For curl B = lambda B the Lorentz force B.grad B is a pure gradient
  // (|B| is constant), so the projected nonlinear tendency vanishes.
  const Grid g = make_grid(16, 2.0 * std::numbers::pi);
  Field b = dealias(to_spectral(beltrami(g, {2, 1, 2})));
  SimState s = make_state(Field::spectral(g), b);
  Field rhs = velocity_rhs(s);  // Laplacian(u) = 0 here
  const double scale = max_abs(s.B) * std::sqrt(grad_sq_norm(s.B));
  CHECK(l2_norm(rhs) <= 1e-11 * scale);
}

TEST_CASE("hall term") {
  const Grid g = make_grid(16, 2.0 * std::numbers::pi);

  SUBCASE("Beltrami field: J x B = 0") {
    Field b = dealias(to_spectral(beltrami(g, {1, 2, 0})));
    Field h = hall_term(b);
    const double scale = max_abs(b) * std::sqrt(grad_sq_norm(b));
    CHECK(l2_norm(h) <= 1e-11 * scale);
  }

  SUBCASE("uniform field: J = 0") {
    Field b = Field::spectral(g);
    b.spec(0)[0] = 1.5;
    b.spec(2)[0] = -0.5;
    CHECK(max_coef_abs(hall_term(b)) == 0.0);
  }

  SUBCASE("magnetic-energy neutrality on random truncated fields") {
    for (std::uint64_t seed : {31u, 32u, 33u, 34u}) {
      Field b = random_solenoidal(g, seed);
      const double work = l2_inner(b, hall_term(b));
      const double scale =
          l2_norm(b) * std::sqrt(grad_sq_norm(b)) * max_abs(b);
      CHECK(std::abs(work) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("hall switch") {
  const Grid g = make_grid(16, 2.0 * std::numbers::pi);

  SUBCASE("curl-free B: eps_hall is irrelevant") {
    Field b = dealias(gradient_mode(g, {1, 1, 0}));
    Field u = random_solenoidal(g, 77);
    Field r0 = magnetic_rhs(make_state(u, b, 0.0));
    Field r1 = magnetic_rhs(make_state(u, b, 1.0));
    CHECK(max_coef_diff(r0, r1) <= 1e-13 * max_coef_abs(r0));
  }

  SUBCASE("tendencies are affine in eps_hall") {
    Field u = random_solenoidal(g, 41);
    Field b = random_solenoidal(g, 42);
    Field r0 = magnetic_rhs(make_state(u, b, 0.0));
    Field r1 = magnetic_rhs(make_state(u, b, 1.0));
    Field rh = magnetic_rhs(make_state(u, b, 0.5));
    Field avg = Field::spectral(g);
    for (int c = 0; c < 3; ++c) avg.spec(c) = 0.5 * (r0.spec(c) + r1.spec(c));
    CHECK(max_coef_diff(rh, avg) <= 1e-14 * max_coef_abs(r1));
  }
}

TEST_CASE("tendencies preserve the divergence constraint") {
  const Grid g = make_grid(16, 4.0);
  for (std::uint64_t seed : {51u, 52u}) {
    SimState s = make_state(random_solenoidal(g, seed),
                            random_solenoidal(g, seed + 100));
    Field ru = velocity_rhs(s);
    Field rb = magnetic_rhs(s);
    CHECK(divergence_l2(ru) <= 1e-12 * std::sqrt(grad_sq_norm(ru)));
    CHECK(divergence_l2(rb) <= 1e-12 * std::sqrt(grad_sq_norm(rb)));
  }
}

TEST_CASE("energy budget identities") {
  const Grid g = make_grid(16, 2.0 * std::numbers::pi);
  for (std::uint64_t seed : {61u, 62u, 63u}) {
    SimState s = make_state(random_solenoidal(g, seed),
                            random_solenoidal(g, seed + 500));
    const EnergyBudget e = energy_budget(s);
    const double dissipation = e.visc_dissipation + e.ohmic_dissipation;
    CHECK(std::abs(e.cross_transfer) <= 1e-10 * dissipation);
    CHECK(std::abs(e.hall_work) <=
          1e-10 * l2_norm(s.B) * std::sqrt(grad_sq_norm(s.B)) * max_abs(s.B));

    // Discrete energy law: d/dt (kinetic + magnetic) from the tendencies
    // equals -dissipation + cross_transfer + eps_hall * hall_work.
    const double dE =
        l2_inner(s.u, velocity_rhs(s)) + l2_inner(s.B, magnetic_rhs(s));
    const double want = -dissipation + e.cross_transfer +
                        s.params.eps_hall * e.hall_work;
    CHECK(std::abs(dE - want) <= 1e-10 * dissipation);
  }
}

TEST_CASE("brute-force convolution equivalence on N = 8") {
  const Grid g = make_grid(8, 2.0 * std::numbers::pi);
  for (std::uint64_t seed : {71u, 72u, 73u}) {
    SimState s = make_state(random_solenoidal(g, seed),
                            random_solenoidal(g, seed + 900));
    CHECK(rel_field_err(velocity_rhs(s), oracle_velocity_rhs(s)) <= 1e-11);
    CHECK(rel_field_err(magnetic_rhs(s), oracle_magnetic_rhs(s)) <= 1e-11);
  }

  SUBCASE("single-mode states against the oracle") {
    Field u = dealias(to_spectral(beltrami(g, {1, 0, 1})));
    Field b = dealias(to_spectral(beltrami(g, {0, 1, 1}, 0.7)));
    SimState s = make_state(u, b);
    CHECK(rel_field_err(velocity_rhs(s), oracle_velocity_rhs(s)) <= 1e-11);
    CHECK(rel_field_err(magnetic_rhs(s), oracle_magnetic_rhs(s)) <= 1e-11);
  }
}

TEST_CASE("NaN detection aborts with a diagnostic") {
  const Grid g = make_grid(8, 1.0);
  Field u = Field::spectral(g);
  u.spec(0)[3] = std::numeric_limits<double>::quiet_NaN();
  SimState s = make_state(u, Field::spectral(g));
  CHECK_THROWS_AS(velocity_rhs(s), std::runtime_error);
}
