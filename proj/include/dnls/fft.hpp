#pragma once

#include <complex>
#include <vector>

namespace dnls {

using cplx = std::complex<double>;

// Unnormalised forward DFT, X[k] = sum_j x[j] exp(-2 pi i j k / n).
void fft_forward(std::vector<cplx>& data);

// Unnormalised inverse DFT (no 1/n); caller divides.
void fft_inverse(std::vector<cplx>& data);

// Linear correlation  out[j] = sum_k kernel[k - j] f[k]  for a kernel given
// as kernel_of(m), m in [-(n-1), n-1], computed by zero-padded FFT.
std::vector<cplx> fft_correlate(const std::vector<cplx>& f, const std::vector<double>& kernel_two_sided);

} // namespace dnls
