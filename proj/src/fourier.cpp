#include "fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace diraclab::detail {
namespace {

// FFTW planning is not thread safe; execution of an existing plan on new
// arrays is. Plans are created once per (dim, n, sign) and kept for the
// lifetime of the process. FFTW_UNALIGNED keeps the chosen codelets (and
// hence the rounding) independent of buffer alignment.
class PlanCache {
 public:
  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(dim, n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<int> dims(dim, n);
    Eigen::Index total = 1;
    for (int i = 0; i < dim; ++i) total *= n;
    auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
    fftw_plan plan = fftw_plan_dft(dim, dims.data(), scratch, scratch,
                                   sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void dft_columns(Eigen::MatrixXcd& data, int dim, int n, int sign) {
  fftw_plan plan = cache().get(dim, n, sign);
  for (Eigen::Index c = 0; c < data.cols(); ++c) {
    auto* ptr = reinterpret_cast<fftw_complex*>(data.col(c).data());
    fftw_execute_dft(plan, ptr, ptr);
  }
}

}  // namespace diraclab::detail
