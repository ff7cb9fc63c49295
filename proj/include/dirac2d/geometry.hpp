#pragma once

#include "dirac2d/common.hpp"

#include <array>
#include <functional>
#include <vector>

namespace dirac2d::geometry {

// Coordinate pair. Reads as (t, x) for conformal / static / FRW charts,
// (v, u) for the Rindler polar chart, (eta, xi) for the Rindler conformal
// chart; index 0 is always the timelike coordinate.
struct Point {
  double t = 0.0;
  double x = 0.0;
};

double fd_step(double coord);

// Profile functions with optional analytic derivatives. When derivative
// slots are empty, d()/d2() fall back to central finite differences with
// step fd_step(coordinate).
struct ScalarFunction1D {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;

  double operator()(double x) const { return f(x); }
  double d(double x) const;
  double d2(double x) const;
};

struct ScalarFunction2D {
  std::function<double(double, double)> f;
  std::function<double(double, double)> df_dt;
  std::function<double(double, double)> df_dx;
  std::function<double(double, double)> d2f_dtt;
  std::function<double(double, double)> d2f_dxx;

  double operator()(double t, double x) const { return f(t, x); }
  double d(double t, double x, int nu) const;
  double d2(double t, double x, int nu) const;
};

// Supplied analytic derivatives must track finite differences; used by
// validation and tests.
bool derivatives_consistent(const ScalarFunction1D& fn,
                            const std::vector<double>& pts,
                            double rel_tol = 1e-6);
bool derivatives_consistent(const ScalarFunction2D& fn,
                            const std::vector<Point>& pts,
                            double rel_tol = 1e-6);

enum class MetricKind { Conformal, Static, FRW, RindlerPolar, RindlerConformal };

// Diagonal 1+1 metric, signature (+,-):
//   Conformal         ds^2 = Omega^2(t,x) (dt^2 - dx^2)
//   Static            ds^2 = e^{2 Phi(x)} dt^2 - e^{2 Psi(x)} dx^2
//   FRW               ds^2 = dt^2 - a^2(t) dx^2
//   RindlerPolar      ds^2 = u^2 dv^2 - du^2
//   RindlerConformal  ds^2 = e^{2 accel xi} (deta^2 - dxi^2)
struct Metric {
  MetricKind kind = MetricKind::Conformal;
  ScalarFunction2D omega;
  ScalarFunction1D phi, psi;
  ScalarFunction1D a;
  double accel = 1.0;
};

Metric conformal_metric(ScalarFunction2D omega);
Metric static_metric(ScalarFunction1D phi, ScalarFunction1D psi);
Metric frw_metric(ScalarFunction1D a);
Metric rindler_polar_metric();
Metric rindler_conformal_metric(double accel);

// (g00, g11); throws config_error on degenerate or wrongly signed metrics.
Eigen::Vector2d metric_diag(const Metric& m, Point p);
// d/dx^nu of (g00, g11).
Eigen::Vector2d metric_diag_deriv(const Metric& m, Point p, int nu);

using Christoffel = std::array<std::array<std::array<double, 2>, 2>, 2>;
using SpinConnection = std::array<std::array<std::array<double, 2>, 2>, 2>;
using SpinorConnection = std::array<Matrix2cd, 2>;

// e[a][mu] = e^a_mu (frame index up, coordinate down); e_inv[mu][a] = e_a^mu.
struct Vielbein {
  std::array<std::array<double, 2>, 2> e{};
  std::array<std::array<double, 2>, 2> e_inv{};
};

// Gamma^sigma_{mu nu}, indexed [sigma][mu][nu].
Christoffel christoffel(const Metric& m, Point p);
Vielbein vielbein(const Metric& m, Point p);
// omega^a_{b nu}, indexed [a][b][nu].
SpinConnection spin_connection(const Metric& m, Point p);
// Omega_nu = -(i/4) omega_{ab nu} sigma^{ab}, sigma^{ab} = (i/2)[gamma^a, gamma^b].
SpinorConnection spinor_connection(const Metric& m, Point p);
// R = g^{mu nu} R_{mu nu} with
// R_{mu nu} = d_lam Gamma^lam_{mu nu} - d_nu Gamma^lam_{mu lam}
//           + Gamma^lam_{mu nu} Gamma^sig_{lam sig}
//           - Gamma^lam_{mu sig} Gamma^sig_{nu lam};
// Gamma derivatives by central differences.
double ricci_scalar(const Metric& m, Point p);

// Hand-derived per-family expressions; oracle for tests and geometry-check.
namespace closed_form {
Christoffel christoffel(const Metric& m, Point p);
Vielbein vielbein(const Metric& m, Point p);
SpinConnection spin_connection(const Metric& m, Point p);
SpinorConnection spinor_connection(const Metric& m, Point p);
double ricci_scalar(const Metric& m, Point p);
}

} // namespace dirac2d::geometry
