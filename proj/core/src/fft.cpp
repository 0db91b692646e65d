#include "fracwave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "fracwave/error.hpp"

namespace fracwave {
namespace {

// FFTW's planner is not thread-safe; execution of an existing plan on new
// arrays is. Plans are made once per (shape, sign) with FFTW_ESTIMATE, which
// keeps results independent of timing measurements and therefore reproducible.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const std::vector<int>& shape, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(shape, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::size_t total = 1;
    for (int n : shape) total *= static_cast<std::size_t>(n);
    auto* buf = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (plan == nullptr) throw Error(ErrorCode::InvalidArgument, "FFTW could not create a plan");
    plans_.emplace(std::move(key), plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

 private:
  PlanCache() = default;
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<std::pair<std::vector<int>, int>, fftw_plan> plans_;
};

// (-1)^(sum of indices) for every node. With n/2 even on each axis this sign
// pattern moves the origin to the centre of both the x and the xi arrays.
std::vector<double> checkerboard(const Grid& g) {
  std::vector<double> s(g.size());
  int idx[3] = {0, 0, 0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    g.unflatten(i, idx);
    int parity = 0;
    for (int a = 0; a < g.dim(); ++a) parity += idx[a];
    s[i] = (parity & 1) ? -1.0 : 1.0;
  }
  return s;
}

Field run(const Field& f, Domain expected, int sign, double scale) {
  if (f.domain() != expected) {
    throw Error(ErrorCode::ShapeMismatch, sign == FFTW_FORWARD
                                              ? "transform expects a space-domain field"
                                              : "inverse_transform expects a frequency-domain field");
  }
  const Grid& g = f.grid();
  const std::vector<double> cb = checkerboard(g);
  std::vector<cplx> data(f.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = f[i] * cb[i];
  fftw_plan plan = PlanCache::instance().get(g.points(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= cb[i] * scale;
  return Field(g, expected == Domain::Space ? Domain::Frequency : Domain::Space, std::move(data));
}

}  // namespace

Field transform(const Field& f) {
  return run(f, Domain::Space, FFTW_FORWARD, f.grid().cell_volume());
}

Field inverse_transform(const Field& f) {
  double scale = 1.0;
  for (int a = 0; a < f.grid().dim(); ++a) scale /= f.grid().extent(a);
  return run(f, Domain::Frequency, FFTW_BACKWARD, scale);
}

}  // namespace fracwave
