#include "hallmhd/dynamics.hpp"

#include <stdexcept>
#include <vector>

namespace hallmhd {

using cd = std::complex<double>;

void HallMhdParams::validate() const {
  if (!(nu > 0.0)) throw std::invalid_argument("params: nu must be positive");
  if (!(eta > 0.0)) throw std::invalid_argument("params: eta must be positive");
  if (!(eps_hall >= 0.0)) {
    throw std::invalid_argument("params: eps_hall must be nonnegative");
  }
}

namespace {

void check_finite(const Field& f, const char* what) {
  if (!f.all_finite()) {
    throw std::runtime_error(std::string("non-finite values in ") + what);
  }
}

// Spectral divergence of a symmetric rank-2 product tensor, dealiased:
// out_i = dealias( i k_j T_ij ).
Field tensor_divergence_dealiased(const Grid& g,
                                  const std::array<Eigen::ArrayXcd, 6>& t) {
  // Symmetric storage order: 00, 11, 22, 01, 02, 12.
  const int n = g.n();
  std::vector<double> k(n);
  std::vector<bool> keep(n);
  for (int j = 0; j < n; ++j) {
    k[j] = g.wavenumber(j);
    keep[j] = 3 * std::abs(g.mode(j)) <= n;
  }
  Field out = Field::spectral(g);
  const cd I(0.0, 1.0);
  std::int64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool kij = keep[i] && keep[j];
      for (int kk = 0; kk < n; ++kk, ++idx) {
        if (!(kij && keep[kk])) continue;
        const double kx = k[i], ky = k[j], kz = k[kk];
        out.spec(0)[idx] = I * (kx * t[0][idx] + ky * t[3][idx] + kz * t[4][idx]);
        out.spec(1)[idx] = I * (kx * t[3][idx] + ky * t[1][idx] + kz * t[5][idx]);
        out.spec(2)[idx] = I * (kx * t[4][idx] + ky * t[5][idx] + kz * t[2][idx]);
      }
    }
  }
  return out;
}

// B.grad B - u.grad u in divergence form, dealiased (not yet projected).
Field momentum_flux_divergence(const Field& up, const Field& bp) {
  const Grid& g = up.grid();
  std::array<Eigen::ArrayXcd, 6> t;
  const int pairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
  for (int e = 0; e < 6; ++e) {
    const int a = pairs[e][0], b = pairs[e][1];
    Eigen::ArrayXd prod =
        bp.phys(a) * bp.phys(b) - up.phys(a) * up.phys(b);
    t[e] = prod.cast<cd>();
    detail::fft3(g, t[e], -1);
  }
  return tensor_divergence_dealiased(g, t);
}

}  // namespace

Field hall_term(const Field& B) {
  Field j = curl(as_spectral(B));
  Field jb = cross(to_physical(j), as_physical(B));
  return curl(dealias(to_spectral(jb)));
}

std::pair<Field, Field> nonlinear_rhs(const SimState& s) {
  const Field up = to_physical(s.u);
  const Field bp = to_physical(s.B);

  Field nu_t = leray_project(momentum_flux_divergence(up, bp));

  Field nb_t = curl(dealias(to_spectral(cross(up, bp))));
  if (s.params.eps_hall != 0.0) {
    Field h = hall_term(s.B);
    for (int c = 0; c < 3; ++c) {
      nb_t.spec(c) -= s.params.eps_hall * h.spec(c);
    }
  }

  check_finite(nu_t, "velocity tendency");
  check_finite(nb_t, "induction tendency");
  return {std::move(nu_t), std::move(nb_t)};
}

Field velocity_rhs(const SimState& s) {
  auto [nu_t, nb_t] = nonlinear_rhs(s);
  Field diff = laplacian(s.u);
  for (int c = 0; c < 3; ++c) nu_t.spec(c) += s.params.nu * diff.spec(c);
  check_finite(nu_t, "velocity tendency");
  return nu_t;
}

Field magnetic_rhs(const SimState& s) {
  auto [nu_t, nb_t] = nonlinear_rhs(s);
  Field diff = laplacian(s.B);
  for (int c = 0; c < 3; ++c) nb_t.spec(c) += s.params.eta * diff.spec(c);
  check_finite(nb_t, "induction tendency");
  return nb_t;
}

EnergyBudget energy_budget(const SimState& s) {
  EnergyBudget e;
  const double nu = l2_norm(s.u), nb = l2_norm(s.B);
  e.kinetic = 0.5 * nu * nu;
  e.magnetic = 0.5 * nb * nb;
  e.visc_dissipation = s.params.nu * grad_sq_norm(s.u);
  e.ohmic_dissipation = s.params.eta * grad_sq_norm(s.B);

  const Field up = to_physical(s.u);
  const Field bp = to_physical(s.B);

  // <u, B.grad B>: magnetic part of the flux divergence only.
  std::array<Eigen::ArrayXcd, 6> t;
  const int pairs[6][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}};
  for (int i = 0; i < 6; ++i) {
    t[i] = (bp.phys(pairs[i][0]) * bp.phys(pairs[i][1])).cast<cd>();
    detail::fft3(s.u.grid(), t[i], -1);
  }
  Field bgb = tensor_divergence_dealiased(s.u.grid(), t);
  Field ind = curl(dealias(to_spectral(cross(up, bp))));
  e.cross_transfer = l2_inner(s.u, bgb) + l2_inner(s.B, ind);
  e.hall_work = l2_inner(s.B, hall_term(s.B));
  return e;
}

}  // namespace hallmhd
