#pragma once

#include <complex>

namespace koplab::fft {

/// In-place unnormalized forward DFT on a d-dimensional n^d complex array
/// (row-major). Thread-safe; FFTW plans are cached per (d, n, direction).
void forward(int d, int n, std::complex<double>* data);

/// In-place unnormalized inverse (backward) DFT.
void inverse(int d, int n, std::complex<double>* data);

} // namespace koplab::fft
