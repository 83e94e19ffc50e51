#pragma once

#include "framelet/lpoly.hpp"

namespace framelet::kernels {

// Reference convolution: hash-map accumulation of field products.
LPoly convolve_serial(const LPoly& a, const LPoly& b);

// Integer-lifted convolution: both operands are scaled to cyclotomic-integer
// numerators over a common denominator, products are accumulated unreduced in
// a dense box and reduced mod Phi_L once per output cell. Output slabs along
// the first coordinate are distributed over OpenMP threads.
LPoly convolve_parallel(const LPoly& a, const LPoly& b);

// Below this many pairwise products operator* uses the serial path.
inline constexpr size_t kParallelThreshold = 256;

// c(n) = sum_k a(k) b(M n - k); the downsampled convolution.
LPoly convolve_sample(const LPoly& a, const LPoly& b, const IntMatrix& m);
LPoly convolve_sample_serial(const LPoly& a, const LPoly& b, const IntMatrix& m);

}  // namespace framelet::kernels
