#include "lpflow/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace lpflow::fft {
namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const std::size_t real_size = static_cast<std::size_t>(n) * n;
  const std::size_t cplx_size = static_cast<std::size_t>(n) * (n / 2 + 1);
  double* r = fftw_alloc_real(real_size);
  fftw_complex* c = fftw_alloc_complex(cplx_size);
  PlanPair p;
  // FFTW_UNALIGNED keeps results independent of the alignment of caller buffers.
  p.r2c = fftw_plan_dft_r2c_2d(n, n, r, c, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.c2r = fftw_plan_dft_c2r_2d(n, n, c, r, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(r);
  fftw_free(c);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void forward(int n, std::span<const double> physical, std::span<std::complex<double>> spectral) {
  const PlanPair& p = plans_for(n);
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(p.r2c, const_cast<double*>(physical.data()),
                       reinterpret_cast<fftw_complex*>(spectral.data()));
}

void inverse(int n, std::span<const std::complex<double>> spectral, std::span<double> physical) {
  const PlanPair& p = plans_for(n);
  std::vector<std::complex<double>> scratch(spectral.begin(), spectral.end());
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), physical.data());
}

}  // namespace lpflow::fft
