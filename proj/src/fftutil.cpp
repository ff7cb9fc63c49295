#include "dirac2d/fftutil.hpp"

#include <unsupported/Eigen/FFT>

namespace dirac2d {

VectorXcd fft_forward(const VectorXcd& in) {
  Eigen::FFT<double> fft;
  VectorXcd out(in.size());
  fft.fwd(out, in);
  return out;
}

VectorXcd fft_inverse(const VectorXcd& in) {
  Eigen::FFT<double> fft;
  VectorXcd out(in.size());
  fft.inv(out, in);
  return out;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

} // namespace dirac2d
