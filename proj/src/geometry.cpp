#include "dirac2d/geometry.hpp"

#include <cmath>

namespace dirac2d::geometry {

double fd_step(double coord) { return 1e-5 * std::max(1.0, std::abs(coord)); }

double ScalarFunction1D::d(double x) const {
  if (df) return df(x);
  const double h = fd_step(x);
  return (f(x + h) - f(x - h)) / (2 * h);
}

double ScalarFunction1D::d2(double x) const {
  if (d2f) return d2f(x);
  // wider step than first derivatives: second differences lose ~eps/h^2
  const double h = 10 * fd_step(x);
  return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}

double ScalarFunction2D::d(double t, double x, int nu) const {
  if (nu == 0) {
    if (df_dt) return df_dt(t, x);
    const double h = fd_step(t);
    return (f(t + h, x) - f(t - h, x)) / (2 * h);
  }
  if (df_dx) return df_dx(t, x);
  const double h = fd_step(x);
  return (f(t, x + h) - f(t, x - h)) / (2 * h);
}

double ScalarFunction2D::d2(double t, double x, int nu) const {
  if (nu == 0) {
    if (d2f_dtt) return d2f_dtt(t, x);
    const double h = 10 * fd_step(t);
    return (f(t + h, x) - 2 * f(t, x) + f(t - h, x)) / (h * h);
  }
  if (d2f_dxx) return d2f_dxx(t, x);
  const double h = 10 * fd_step(x);
  return (f(t, x + h) - 2 * f(t, x) + f(t, x - h)) / (h * h);
}

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

bool derivatives_consistent(const ScalarFunction1D& fn,
                            const std::vector<double>& pts, double rel_tol) {
  for (double x : pts) {
    const double h = fd_step(x);
    if (fn.df && !close_rel(fn.df(x), (fn.f(x + h) - fn.f(x - h)) / (2 * h), rel_tol))
      return false;
    if (fn.d2f) {
      const double h2 = 10 * h;
      const double fd = (fn.f(x + h2) - 2 * fn.f(x) + fn.f(x - h2)) / (h2 * h2);
      if (!close_rel(fn.d2f(x), fd, rel_tol)) return false;
    }
  }
  return true;
}

bool derivatives_consistent(const ScalarFunction2D& fn,
                            const std::vector<Point>& pts, double rel_tol) {
  for (Point p : pts) {
    const double ht = fd_step(p.t), hx = fd_step(p.x);
    if (fn.df_dt &&
        !close_rel(fn.df_dt(p.t, p.x),
                   (fn.f(p.t + ht, p.x) - fn.f(p.t - ht, p.x)) / (2 * ht), rel_tol))
      return false;
    if (fn.df_dx &&
        !close_rel(fn.df_dx(p.t, p.x),
                   (fn.f(p.t, p.x + hx) - fn.f(p.t, p.x - hx)) / (2 * hx), rel_tol))
      return false;
    if (fn.d2f_dtt) {
      const double h = 10 * ht;
      const double fd = (fn.f(p.t + h, p.x) - 2 * fn.f(p.t, p.x) + fn.f(p.t - h, p.x)) / (h * h);
      if (!close_rel(fn.d2f_dtt(p.t, p.x), fd, rel_tol)) return false;
    }
    if (fn.d2f_dxx) {
      const double h = 10 * hx;
      const double fd = (fn.f(p.t, p.x + h) - 2 * fn.f(p.t, p.x) + fn.f(p.t, p.x - h)) / (h * h);
      if (!close_rel(fn.d2f_dxx(p.t, p.x), fd, rel_tol)) return false;
    }
  }
  return true;
}

Metric conformal_metric(ScalarFunction2D omega) {
  Metric m;
  m.kind = MetricKind::Conformal;
  m.omega = std::move(omega);
  return m;
}

Metric static_metric(ScalarFunction1D phi, ScalarFunction1D psi) {
  Metric m;
  m.kind = MetricKind::Static;
  m.phi = std::move(phi);
  m.psi = std::move(psi);
  return m;
}

Metric frw_metric(ScalarFunction1D a) {
  Metric m;
  m.kind = MetricKind::FRW;
  m.a = std::move(a);
  return m;
}

Metric rindler_polar_metric() {
  Metric m;
  m.kind = MetricKind::RindlerPolar;
  return m;
}

Metric rindler_conformal_metric(double accel) {
  Metric m;
  m.kind = MetricKind::RindlerConformal;
  m.accel = accel;
  return m;
}

Eigen::Vector2d metric_diag(const Metric& m, Point p) {
  switch (m.kind) {
    case MetricKind::Conformal: {
      const double w = m.omega(p.t, p.x);
      if (!(w > 0))
        throw config_error("conformal factor must be positive at queried point");
      return {w * w, -w * w};
    }
    case MetricKind::Static: {
      const double g00 = std::exp(2 * m.phi(p.x));
      const double g11 = -std::exp(2 * m.psi(p.x));
      return {g00, g11};
    }
    case MetricKind::FRW: {
      const double a = m.a(p.t);
      if (!(a > 0))
        throw config_error("FRW scale factor must be positive at queried point");
      return {1.0, -a * a};
    }
    case MetricKind::RindlerPolar: {
      if (p.x == 0.0)
        throw config_error("Rindler polar metric is degenerate at u = 0");
      return {p.x * p.x, -1.0};
    }
    case MetricKind::RindlerConformal: {
      const double w = std::exp(m.accel * p.x);
      return {w * w, -w * w};
    }
  }
  throw config_error("unknown metric family");
}

Eigen::Vector2d metric_diag_deriv(const Metric& m, Point p, int nu) {
  switch (m.kind) {
    case MetricKind::Conformal: {
      const double w = m.omega(p.t, p.x);
      const double dw = m.omega.d(p.t, p.x, nu);
      return {2 * w * dw, -2 * w * dw};
    }
    case MetricKind::Static: {
      if (nu == 0) return {0.0, 0.0};
      return {2 * m.phi.d(p.x) * std::exp(2 * m.phi(p.x)),
              -2 * m.psi.d(p.x) * std::exp(2 * m.psi(p.x))};
    }
    case MetricKind::FRW: {
      if (nu == 1) return {0.0, 0.0};
      return {0.0, -2 * m.a(p.t) * m.a.d(p.t)};
    }
    case MetricKind::RindlerPolar: {
      if (nu == 0) return {0.0, 0.0};
      return {2 * p.x, 0.0};
    }
    case MetricKind::RindlerConformal: {
      if (nu == 0) return {0.0, 0.0};
      const double w2 = std::exp(2 * m.accel * p.x);
      return {2 * m.accel * w2, -2 * m.accel * w2};
    }
  }
  throw config_error("unknown metric family");
}

Christoffel christoffel(const Metric& m, Point p) {
  const Eigen::Vector2d g = metric_diag(m, p);
  // dg[nu] = d_nu (g00, g11)
  const Eigen::Vector2d dg[2] = {metric_diag_deriv(m, p, 0),
                                 metric_diag_deriv(m, p, 1)};
  // Gamma^s_{mn} = 1/2 g^{ss} (d_m g_{ns} + d_n g_{sm} - d_s g_{mn}),
  // diagonal metric so only matching lower pairs contribute.
  Christoffel gam{};
  for (int s = 0; s < 2; ++s)
    for (int mu = 0; mu < 2; ++mu)
      for (int nu = 0; nu < 2; ++nu) {
        double val = 0.0;
        if (nu == s) val += dg[mu](s);
        if (s == mu) val += dg[nu](s);
        if (mu == nu) val -= dg[s](mu);
        gam[s][mu][nu] = 0.5 / g(s) * val;
      }
  return gam;
}

Vielbein vielbein(const Metric& m, Point p) {
  const Eigen::Vector2d g = metric_diag(m, p);
  if (!(g(0) > 0) || !(g(1) < 0))
    throw config_error("metric signature must be (+,-) for vielbein");
  Vielbein v;
  v.e[0][0] = std::sqrt(g(0));
  v.e[1][1] = std::sqrt(-g(1));
  v.e_inv[0][0] = 1.0 / v.e[0][0];
  v.e_inv[1][1] = 1.0 / v.e[1][1];
  return v;
}

SpinConnection spin_connection(const Metric& m, Point p) {
  const Eigen::Vector2d g = metric_diag(m, p);
  const Eigen::Vector2d dg[2] = {metric_diag_deriv(m, p, 0),
                                 metric_diag_deriv(m, p, 1)};
  const Vielbein v = vielbein(m, p);
  const Christoffel gam = christoffel(m, p);

  // d_nu e_a^mu for the diagonal frame: e_0^0 = g00^{-1/2}, e_1^1 = (-g11)^{-1/2}
  double de_inv[2][2][2] = {}; // [nu][mu][a]
  for (int nu = 0; nu < 2; ++nu) {
    de_inv[nu][0][0] = -0.5 * std::pow(g(0), -1.5) * dg[nu](0);
    de_inv[nu][1][1] = 0.5 * std::pow(-g(1), -1.5) * dg[nu](1);
  }

  // omega^a_{b nu} = e^a_mu d_nu e_b^mu + e^a_mu e_b^sigma Gamma^mu_{sigma nu}
  SpinConnection om{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int nu = 0; nu < 2; ++nu) {
        double val = 0.0;
        for (int mu = 0; mu < 2; ++mu) {
          val += v.e[a][mu] * de_inv[nu][mu][b];
          for (int s = 0; s < 2; ++s)
            val += v.e[a][mu] * v.e_inv[s][b] * gam[mu][s][nu];
        }
        om[a][b][nu] = val;
      }
  return om;
}

SpinorConnection spinor_connection(const Metric& m, Point p) {
  const SpinConnection om = spin_connection(m, p);
  const Matrix2cd gam[2] = {gamma0(), gamma1()};
  const double eta[2] = {1.0, -1.0};
  SpinorConnection out{Matrix2cd::Zero(), Matrix2cd::Zero()};
  for (int nu = 0; nu < 2; ++nu)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double om_low = eta[a] * om[a][b][nu];
        const Matrix2cd sig_ab =
            cplx(0, 0.5) * (gam[a] * gam[b] - gam[b] * gam[a]);
        out[nu] += cplx(0, -0.25) * om_low * sig_ab;
      }
  return out;
}

double ricci_scalar(const Metric& m, Point p) {
  const Eigen::Vector2d g = metric_diag(m, p);
  const Christoffel gam = christoffel(m, p);

  Christoffel dgam[2]; // [lam] -> d_lam Gamma
  for (int lam = 0; lam < 2; ++lam) {
    const double c = (lam == 0) ? p.t : p.x;
    const double h = fd_step(c);
    Point pp = p, pm = p;
    (lam == 0 ? pp.t : pp.x) += h;
    (lam == 0 ? pm.t : pm.x) -= h;
    const Christoffel gp = christoffel(m, pp);
    const Christoffel gm = christoffel(m, pm);
    for (int s = 0; s < 2; ++s)
      for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu)
          dgam[lam][s][mu][nu] = (gp[s][mu][nu] - gm[s][mu][nu]) / (2 * h);
  }

  double r = 0.0;
  for (int mu = 0; mu < 2; ++mu) {
    // diagonal inverse metric: only R_{mu mu} contributes
    double rmm = 0.0;
    for (int lam = 0; lam < 2; ++lam) {
      rmm += dgam[lam][lam][mu][mu] - dgam[mu][lam][mu][lam];
      for (int s = 0; s < 2; ++s)
        rmm += gam[lam][mu][mu] * gam[s][lam][s] - gam[lam][mu][s] * gam[s][mu][lam];
    }
    r += rmm / g(mu);
  }
  return r;
}

namespace closed_form {

Christoffel christoffel(const Metric& m, Point p) {
  Christoffel g{};
  switch (m.kind) {
    case MetricKind::Conformal: {
      const double w = m.omega(p.t, p.x);
      const double lt = m.omega.d(p.t, p.x, 0) / w;
      const double lx = m.omega.d(p.t, p.x, 1) / w;
      g[0][0][0] = lt;
      g[0][0][1] = g[0][1][0] = lx;
      g[0][1][1] = lt;
      g[1][0][0] = lx;
      g[1][0][1] = g[1][1][0] = lt;
      g[1][1][1] = lx;
      break;
    }
    case MetricKind::Static: {
      const double dphi = m.phi.d(p.x), dpsi = m.psi.d(p.x);
      g[0][0][1] = g[0][1][0] = dphi;
      g[1][0][0] = dphi * std::exp(2 * (m.phi(p.x) - m.psi(p.x)));
      g[1][1][1] = dpsi;
      break;
    }
    case MetricKind::FRW: {
      const double a = m.a(p.t), ad = m.a.d(p.t);
      g[0][1][1] = a * ad;
      g[1][0][1] = g[1][1][0] = ad / a;
      break;
    }
    case MetricKind::RindlerPolar: {
      g[0][0][1] = g[0][1][0] = 1.0 / p.x;
      g[1][0][0] = p.x;
      break;
    }
    case MetricKind::RindlerConformal: {
      const double a = m.accel;
      g[0][0][1] = g[0][1][0] = a;
      g[1][0][0] = a;
      g[1][1][1] = a;
      break;
    }
  }
  return g;
}

Vielbein vielbein(const Metric& m, Point p) {
  Vielbein v;
  double w0 = 1.0, w1 = 1.0;
  switch (m.kind) {
    case MetricKind::Conformal:
      w0 = w1 = m.omega(p.t, p.x);
      break;
    case MetricKind::Static:
      w0 = std::exp(m.phi(p.x));
      w1 = std::exp(m.psi(p.x));
      break;
    case MetricKind::FRW:
      w0 = 1.0;
      w1 = m.a(p.t);
      break;
    case MetricKind::RindlerPolar:
      w0 = std::abs(p.x);
      w1 = 1.0;
      break;
    case MetricKind::RindlerConformal:
      w0 = w1 = std::exp(m.accel * p.x);
      break;
  }
  v.e[0][0] = w0;
  v.e[1][1] = w1;
  v.e_inv[0][0] = 1.0 / w0;
  v.e_inv[1][1] = 1.0 / w1;
  return v;
}

SpinConnection spin_connection(const Metric& m, Point p) {
  SpinConnection om{};
  double c0 = 0.0, c1 = 0.0; // omega^0_{1 nu} = omega^1_{0 nu} for nu = 0, 1
  switch (m.kind) {
    case MetricKind::Conformal: {
      const double w = m.omega(p.t, p.x);
      c0 = m.omega.d(p.t, p.x, 1) / w;
      c1 = m.omega.d(p.t, p.x, 0) / w;
      break;
    }
    case MetricKind::Static:
      c0 = m.phi.d(p.x) * std::exp(m.phi(p.x) - m.psi(p.x));
      break;
    case MetricKind::FRW:
      c1 = m.a.d(p.t);
      break;
    case MetricKind::RindlerPolar:
      c0 = p.x > 0 ? 1.0 : -1.0;
      break;
    case MetricKind::RindlerConformal:
      c0 = m.accel;
      break;
  }
  om[0][1][0] = om[1][0][0] = c0;
  om[0][1][1] = om[1][0][1] = c1;
  return om;
}

SpinorConnection spinor_connection(const Metric& m, Point p) {
  const SpinConnection om = closed_form::spin_connection(m, p);
  // Omega_nu = (1/4) omega_{01 nu} [gamma^0, gamma^1] = (1/2) omega^0_{1 nu} sigma_x
  SpinorConnection out{Matrix2cd::Zero(), Matrix2cd::Zero()};
  out[0] = 0.5 * om[0][1][0] * sigma_x();
  out[1] = 0.5 * om[0][1][1] * sigma_x();
  return out;
}

double ricci_scalar(const Metric& m, Point p) {
  switch (m.kind) {
    case MetricKind::Conformal: {
      const double w = m.omega(p.t, p.x);
      const double lt = m.omega.d(p.t, p.x, 0) / w;
      const double lx = m.omega.d(p.t, p.x, 1) / w;
      const double wtt = m.omega.d2(p.t, p.x, 0) / w;
      const double wxx = m.omega.d2(p.t, p.x, 1) / w;
      return 2.0 * (lt * lt - wtt - lx * lx + wxx) / (w * w);
    }
    case MetricKind::Static: {
      const double dphi = m.phi.d(p.x), d2phi = m.phi.d2(p.x);
      const double dpsi = m.psi.d(p.x);
      return 2.0 * std::exp(-2 * m.psi(p.x)) *
             (d2phi + dphi * dphi - dphi * dpsi);
    }
    case MetricKind::FRW:
      return -2.0 * m.a.d2(p.t) / m.a(p.t);
    case MetricKind::RindlerPolar:
    case MetricKind::RindlerConformal:
      return 0.0;
  }
  return 0.0;
}

} // namespace closed_form

} // namespace dirac2d::geometry
