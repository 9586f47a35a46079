#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace snlw::detail {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~PlanPair() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

const PlanPair& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<PlanPair>();
    const std::size_t half = static_cast<std::size_t>(n) * (n / 2 + 1);
    double* r = fftw_alloc_real(static_cast<std::size_t>(n) * n);
    fftw_complex* c = fftw_alloc_complex(half);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    slot->r2c = fftw_plan_dft_r2c_2d(n, n, r, c, flags);
    slot->c2r = fftw_plan_dft_c2r_2d(n, n, c, r, flags | FFTW_DESTROY_INPUT);
    fftw_free(r);
    fftw_free(c);
  }
  return *slot;
}

}  // namespace

void forward_full(const double* in, std::complex<double>* out, int n) {
  const auto& p = plans_for(n);
  const int h = n / 2 + 1;
  std::vector<double> input(in, in + static_cast<std::size_t>(n) * n);
  std::vector<std::complex<double>> half(static_cast<std::size_t>(n) * h);
  fftw_execute_dft_r2c(p.r2c, input.data(), reinterpret_cast<fftw_complex*>(half.data()));

  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::complex<double> c;
      if (j < h) {
        c = half[static_cast<std::size_t>(i) * h + j];
      } else {
        const int mi = (n - i) % n;
        const int mj = n - j;
        c = std::conj(half[static_cast<std::size_t>(mi) * h + mj]);
      }
      out[static_cast<std::size_t>(i) * n + j] = c * scale;
    }
  }
}

void inverse_full(const std::complex<double>* in, double* out, int n) {
  const auto& p = plans_for(n);
  const int h = n / 2 + 1;
  std::vector<std::complex<double>> half(static_cast<std::size_t>(n) * h);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < h; ++j)
      half[static_cast<std::size_t>(i) * h + j] = in[static_cast<std::size_t>(i) * n + j];
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(half.data()), out);
}

}  // namespace snlw::detail
