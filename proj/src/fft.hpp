#pragma once

#include <complex>

namespace snlw::detail {

// 2-D real transforms of size n x n backed by FFTW. Plans are cached per n and
// executed with the new-array interface, so these may be called concurrently.

/// out (n*n, full lattice) = n^{-2} * DFT(in).
void forward_full(const double* in, std::complex<double>* out, int n);
/// out = inverse DFT without scaling; only the half lattice j <= n/2 of `in`
/// is read, Hermitian symmetry is assumed.
void inverse_full(const std::complex<double>* in, double* out, int n);

}  // namespace snlw::detail
