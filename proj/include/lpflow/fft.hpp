#pragma once

#include <complex>
#include <span>

namespace lpflow::fft {

// Unnormalized 2D real transforms of an n x n row-major array. Plans are cached
// per size behind a mutex; execution is thread safe.
void forward(int n, std::span<const double> physical, std::span<std::complex<double>> spectral);

// Destroys nothing: the input is copied to a scratch buffer before the c2r call.
void inverse(int n, std::span<const std::complex<double>> spectral, std::span<double> physical);

}  // namespace lpflow::fft
