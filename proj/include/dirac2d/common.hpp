#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace dirac2d {

using cplx = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::Vector2cd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Configuration or input errors (bad keys, unphysical parameters, domains
// too small). CLI exit code 1.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failures (conservation drift, integrator breakdown). CLI exit
// code 2.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Matrix2cd sigma_x() {
  Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix2cd sigma_y() {
  Matrix2cd m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

inline Matrix2cd sigma_z() {
  Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

// Flat-space representation used throughout: gamma^0 = sigma_z,
// gamma^1 = i sigma_y, so gamma^0 gamma^1 = sigma_x.
inline Matrix2cd gamma0() { return sigma_z(); }

inline Matrix2cd gamma1() { return cplx(0, 1) * sigma_y(); }

} // namespace dirac2d
