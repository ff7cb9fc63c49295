#pragma once

#include "dirac2d/common.hpp"

#include <functional>

namespace dirac2d {

// Conformal factor Omega(t) entering m_eff(t) = Omega(t) m (spinor runs)
// and omega_k^2(t) = k^2 + Omega^2(t) m^2 (scalar runs).
//
//   Constant          Omega = omega0
//   InvertedGaussian  Omega = 1 - depth exp(-(t-center)^2 / (2 width^2)), 0 < depth < 1
//   SquareHat         Omega^2 = 1 outside [0, t0], sign inside (sign = -1 the
//                     standard hat; Omega itself is undefined for sign < 0)
//   Custom            user-supplied Omega(t)
struct ConformalProfile {
  enum class Kind { Constant, InvertedGaussian, SquareHat, Custom };

  Kind kind = Kind::Constant;
  double omega0 = 1.0;
  double depth = 0.0, center = 0.0, width = 1.0;
  double t0 = 1.0;
  double sign = -1.0;
  std::function<double(double)> custom;

  double omega(double t) const;
  double omega_sq(double t) const;
  // true when Omega(t) is real on the whole line (usable in spinor evolution)
  bool real_valued() const { return kind != Kind::SquareHat || sign >= 0; }
};

ConformalProfile constant_profile(double omega0 = 1.0);
ConformalProfile inverted_gaussian_profile(double depth, double center,
                                           double width);
ConformalProfile squarehat_profile(double t0, double sign = -1.0);
ConformalProfile custom_profile(std::function<double(double)> omega);

} // namespace dirac2d
