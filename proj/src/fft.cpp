#include <fftw3.h>

#include <map>
#include <mutex>

#include "hallmhd/spectral.hpp"

namespace hallmhd::detail {
namespace {

// Plans are created with FFTW_ESTIMATE (deterministic, input-independent)
// and FFTW_UNALIGNED so new-array execution is valid on any buffer.
class PlanCache {
 public:
  fftw_plan get(int n, int sign) {
    std::scoped_lock lock(mu_);
    auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    Eigen::ArrayXcd scratch(static_cast<std::int64_t>(n) * n * n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan =
        fftw_plan_dft_3d(n, n, n, p, p,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                         FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_[key] = plan;
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft3(const Grid& g, Eigen::ArrayXcd& data, int sign) {
  fftw_plan plan = cache().get(g.n(), sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
  if (sign < 0) data /= static_cast<double>(g.size());
}

}  // namespace hallmhd::detail
