#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "hallmhd/grid.hpp"

namespace hallmhd {

enum class Rep { physical, spectral };

/// A 3-component vector field on a Grid, in one of two representations:
/// real point values (physical) or complex Fourier coefficients (spectral).
///
/// The spectral coefficients are mode amplitudes: f(x_j) = sum_m c_m
/// exp(2*pi*i*m.j/N), i.e. the forward transform carries the 1/N^3 factor.
/// Real physical data therefore maps to Hermitian-symmetric coefficients.
class Field {
 public:
  Field() = default;

  static Field physical(const Grid& g) {
    Field f;
    f.grid_ = g;
    f.rep_ = Rep::physical;
    for (auto& c : f.vals_) c = Eigen::ArrayXd::Zero(g.size());
    return f;
  }

  static Field spectral(const Grid& g) {
    Field f;
    f.grid_ = g;
    f.rep_ = Rep::spectral;
    for (auto& c : f.coefs_) c = Eigen::ArrayXcd::Zero(g.size());
    return f;
  }

  const Grid& grid() const { return grid_; }
  Rep rep() const { return rep_; }

  Eigen::ArrayXd& phys(int c) {
    require(Rep::physical);
    return vals_[c];
  }
  const Eigen::ArrayXd& phys(int c) const {
    require(Rep::physical);
    return vals_[c];
  }

  Eigen::ArrayXcd& spec(int c) {
    require(Rep::spectral);
    return coefs_[c];
  }
  const Eigen::ArrayXcd& spec(int c) const {
    require(Rep::spectral);
    return coefs_[c];
  }

  /// True when every stored value is finite.
  bool all_finite() const;

 private:
  void require(Rep r) const;

  Grid grid_;
  Rep rep_ = Rep::physical;
  std::array<Eigen::ArrayXd, 3> vals_;
  std::array<Eigen::ArrayXcd, 3> coefs_;
};

}  // namespace hallmhd
