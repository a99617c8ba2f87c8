#include "strichartz/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "strichartz/error.hpp"

namespace strichartz {

namespace {

using PlanKey = std::tuple<std::vector<int>, std::vector<int>, int>;

struct PlanCache {
  std::mutex mutex;
  std::map<PlanKey, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

fftw_plan make_plan(const std::vector<int>& shape, const std::vector<int>& axes, int sign) {
  const int rank = static_cast<int>(shape.size());
  std::vector<long> strides(shape.size(), 1);
  for (int a = rank - 2; a >= 0; --a) strides[a] = strides[a + 1] * shape[a + 1];

  std::vector<bool> selected(shape.size(), axes.empty());
  for (const int a : axes) selected[static_cast<std::size_t>(a)] = true;

  std::vector<fftw_iodim64> dims, loops;
  for (int a = 0; a < rank; ++a) {
    fftw_iodim64 d{shape[a], strides[a], strides[a]};
    (selected[a] ? dims : loops).push_back(d);
  }
  const long total = std::accumulate(shape.begin(), shape.end(), 1L, std::multiplies<>());
  // FFTW_ESTIMATE never touches the arrays during planning, so a small dummy
  // buffer is enough; FFTW_UNALIGNED lets the plan run on any array.
  fftw_complex* buffer = fftw_alloc_complex(static_cast<std::size_t>(total));
  fftw_plan plan = fftw_plan_guru64_dft(static_cast<int>(dims.size()), dims.data(),
                                        static_cast<int>(loops.size()), loops.data(), buffer,
                                        buffer, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buffer);
  require(plan != nullptr, ErrorKind::InvalidArgument, "FFTW could not create a plan");
  return plan;
}

}  // namespace

void fft_inplace(std::complex<double>* data, const std::vector<int>& shape,
                 const std::vector<int>& axes, FftDirection direction) {
  const int sign = direction == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  PlanKey key{shape, axes, sign};
  fftw_plan plan;
  {
    auto& c = cache();
    std::lock_guard lock(c.mutex);
    auto it = c.plans.find(key);
    if (it == c.plans.end()) it = c.plans.emplace(key, make_plan(shape, axes, sign)).first;
    plan = it->second;
  }
  auto* ptr = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace strichartz
