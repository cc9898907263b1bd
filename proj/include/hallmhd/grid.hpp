#pragma once

#include <cstdint>
#include <numbers>

namespace hallmhd {

/// Uniform periodic box [-L/2, L/2)^3 with N points per dimension.
///
/// Physical coordinates are centered on the box center, so index 0 sits at
/// exactly -L/2. Spectral indices follow the standard DFT ordering: index j
/// carries integer frequency m = j for j < N/2 and m = j - N otherwise, with
/// wavenumber k = 2*pi*m/L.
class Grid {
 public:
  Grid() = default;

  int n() const { return n_; }
  double box() const { return box_; }
  double dx() const { return dx_; }
  std::int64_t size() const {
    return static_cast<std::int64_t>(n_) * n_ * n_;
  }

  /// Flattened index with the last axis fastest (matches FFTW row-major).
  std::int64_t index(int i, int j, int k) const {
    return (static_cast<std::int64_t>(i) * n_ + j) * n_ + k;
  }

  /// Centered physical coordinate of a 1-d index: -L/2 + j*dx.
  double coord(int j) const { return -0.5 * box_ + j * dx_; }

  /// Signed integer DFT frequency of a 1-d index.
  int mode(int j) const { return j < n_ / 2 ? j : j - n_; }

  /// Angular wavenumber 2*pi*mode/L of a 1-d index.
  double wavenumber(int j) const {
    return 2.0 * std::numbers::pi * mode(j) / box_;
  }

  bool operator==(const Grid& o) const {
    return n_ == o.n_ && box_ == o.box_;
  }

  friend Grid make_grid(int n, double box_length);

 private:
  Grid(int n, double box);

  int n_ = 0;
  double box_ = 0.0;
  double dx_ = 0.0;
};

/// Builds a grid. Rejects odd n, n < 8, and non-positive box lengths.
Grid make_grid(int n, double box_length);

}  // namespace hallmhd
