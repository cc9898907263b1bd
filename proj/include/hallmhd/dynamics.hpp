#pragma once

#include <utility>

#include "hallmhd/spectral.hpp"

namespace hallmhd {

/// Solver coefficients: viscosity, resistivity, and the Hall switch
/// (eps_hall = 1 is Hall-MHD, eps_hall = 0 plain resistive MHD).
struct HallMhdParams {
  double nu = 1.0;
  double eta = 1.0;
  double eps_hall = 1.0;

  void validate() const;
};

/// Immutable solver snapshot. u and B are held spectrally, divergence-free
/// and 2/3-truncated, with zero mean mode.
struct SimState {
  Field u;
  Field B;
  double t = 0.0;
  HallMhdParams params;
};

/// Hall tendency -curl((curl B) x B), unsigned: returns curl(dealias(J x B))
/// with J = curl B, in spectral representation.
Field hall_term(const Field& B);

/// Projected, dealiased nonlinear tendencies with diffusion excluded:
///   first:  P[dealias(B.grad B - u.grad u)]
///   second: curl(dealias(u x B)) - eps_hall * hall_term(B)
/// Both in spectral representation. Throws on non-finite output.
std::pair<Field, Field> nonlinear_rhs(const SimState& s);

/// Full velocity tendency: nonlinear part + nu * Laplacian(u).
Field velocity_rhs(const SimState& s);

/// Full induction tendency: nonlinear part + eta * Laplacian(B).
Field magnetic_rhs(const SimState& s);

struct EnergyBudget {
  double kinetic = 0.0;            // 0.5 ||u||^2
  double magnetic = 0.0;           // 0.5 ||B||^2
  double visc_dissipation = 0.0;   // nu ||grad u||^2
  double ohmic_dissipation = 0.0;  // eta ||grad B||^2
  double cross_transfer = 0.0;     // <u, B.grad B> + <B, curl(u x B)>
  double hall_work = 0.0;          // <B, hall_term(B)>
};

/// Energy identity bookkeeping; cross_transfer and hall_work vanish to
/// round-off for truncated divergence-free states.
EnergyBudget energy_budget(const SimState& s);

}  // namespace hallmhd
