#include "hallmhd/grid.hpp"

#include <stdexcept>
#include <string>

namespace hallmhd {

Grid::Grid(int n, double box) : n_(n), box_(box), dx_(box / n) {}

Grid make_grid(int n, double box_length) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("make_grid: n must be even and >= 8, got " +
                                std::to_string(n));
  }
  if (!(box_length > 0.0)) {
    throw std::invalid_argument("make_grid: box length must be positive");
  }
  return Grid(n, box_length);
}

}  // namespace hallmhd
