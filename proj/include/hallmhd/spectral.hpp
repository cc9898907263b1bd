#pragma once

#include <array>

#include "hallmhd/field.hpp"

namespace hallmhd {

/// Forward DFT of a physical field (coefficients normalized as mode
/// amplitudes). Throws if the field is already spectral.
Field to_spectral(const Field& f);

/// Inverse DFT of a spectral field; imaginary residue of the Hermitian
/// synthesis is dropped. Throws if the field is already physical.
Field to_physical(const Field& f);

/// Returns a spectral copy, transforming only when needed.
Field as_spectral(const Field& f);
/// Returns a physical copy, transforming only when needed.
Field as_physical(const Field& f);

/// Mixed partial derivative d^alpha applied componentwise: multiplication by
/// (i k)^alpha in spectral space. Accepts either representation.
Field derivative(const Field& f, const std::array<int, 3>& alpha);

/// Componentwise Laplacian: multiplication by -|k|^2.
Field laplacian(const Field& f);

/// Leray projection onto divergence-free fields: v -> v - k (k.v)/|k|^2,
/// with the k = 0 mode passed through unchanged.
Field leray_project(const Field& f);

/// 2/3-rule truncation: zeroes every coefficient with any |m_i| > N/3.
Field dealias(const Field& f);

/// Spectral curl.
Field curl(const Field& f);

/// Spectral divergence, returned as a scalar coefficient lattice.
Eigen::ArrayXcd divergence(const Field& f);

/// Pointwise cross product of two physical fields.
Field cross(const Field& f, const Field& g);

/// L^2 norm over the box: sqrt(dx^3 sum |f|^2) = sqrt(L^3 sum |c|^2).
double l2_norm(const Field& f);

/// L^2 inner product <f, g> over the box (componentwise sum).
double l2_inner(const Field& f, const Field& g);

/// ||grad f||_{L^2}^2 = L^3 sum |k|^2 |c_k|^2 over components.
double grad_sq_norm(const Field& f);

/// Maximum pointwise vector magnitude (physical representation).
double max_abs(const Field& f);

/// ||div f||_{L^2}, for divergence-cleanliness checks.
double divergence_l2(const Field& f);

namespace detail {
/// In-place complex 3-d DFT on a flattened n^3 lattice. sign = -1 forward
/// (with 1/n^3 normalization), +1 backward (unnormalized synthesis).
void fft3(const Grid& g, Eigen::ArrayXcd& data, int sign);
}  // namespace detail

}  // namespace hallmhd
