// Discrete Fourier transform for the periodic model. Normalization contract:
// the forward transform is the plain sum fhat(k) = sum_j f_j e^{-2 pi i jk/N},
// the inverse carries the 1/N factor. Spectra are stored in bin order,
// bin = (k + N) mod N for the signed frequency k in [-N/2, N/2).
#pragma once

#include "varmult/signal.hpp"

#include <vector>

namespace varmult {

// In-place radix-2 FFT over a length-2^m interleaved complex buffer.
void fft_forward(std::vector<Complex>& a);
void fft_inverse(std::vector<Complex>& a);

inline int bin_for_freq(int k, int n) { return k >= 0 ? k : k + n; }
inline int freq_for_bin(int b, int n) { return b < n / 2 ? b : b - n; }

// Per-coordinate forward transform of a signal; the result uses the same
// sample-major layout (bin b, coordinate c at index b * dim + c).
std::vector<Complex> signal_spectrum(const Signal& f);

// Inverse: rebuild a signal from a bin-ordered spectrum.
Signal signal_from_spectrum(const std::vector<Complex>& spectrum,
                            const SpaceDescriptor& space, int n, double period);

} // namespace varmult
