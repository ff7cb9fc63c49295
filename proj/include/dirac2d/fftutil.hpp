#pragma once

#include "dirac2d/common.hpp"

namespace dirac2d {

// Unnormalized forward DFT, X_j = sum_n x_n e^{-2 pi i j n / N}.
VectorXcd fft_forward(const VectorXcd& in);
// Inverse with 1/N, so fft_inverse(fft_forward(x)) == x.
VectorXcd fft_inverse(const VectorXcd& in);

int next_pow2(int n);
bool is_pow2(int n);

} // namespace dirac2d
