// Gauss-Legendre rules (cached) and a tiny radix-2 FFT used by the spectral
// propagation code paths.
#pragma once

#include <vector>

#include "mott/common.hpp"

namespace mott {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]; cached, thread-safe.
const Rule1D& gauss_legendre(int n);

// Same rule mapped to [a, b].
Rule1D gauss_legendre_on(int n, double a, double b);

// In-place radix-2 FFT. size must be a power of two. inverse=true applies the
// unnormalized inverse followed by the 1/N factor.
void fft_pow2(std::vector<complexd>& a, bool inverse);

bool is_pow2(size_t n);

}  // namespace mott
