#include "hallmhd/field.hpp"

#include <stdexcept>

namespace hallmhd {

void Field::require(Rep r) const {
  if (rep_ != r) {
    throw std::logic_error(
        rep_ == Rep::physical
            ? "field is in physical representation, spectral access requested"
            : "field is in spectral representation, physical access requested");
  }
}

bool Field::all_finite() const {
  for (int c = 0; c < 3; ++c) {
    if (rep_ == Rep::physical) {
      if (!vals_[c].isFinite().all()) return false;
    } else {
      if (!coefs_[c].real().isFinite().all() ||
          !coefs_[c].imag().isFinite().all())
        return false;
    }
  }
  return true;
}

}  // namespace hallmhd
