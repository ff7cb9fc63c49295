#include "dirac2d/dirac.hpp"

#include "dirac2d/fftutil.hpp"

#include <cmath>
#include <limits>

namespace dirac2d {

double ConformalProfile::omega_sq(double t) const {
  switch (kind) {
    case Kind::Constant:
      return omega0 * omega0;
    case Kind::InvertedGaussian: {
      const double w = 1.0 - depth * std::exp(-(t - center) * (t - center) /
                                              (2 * width * width));
      return w * w;
    }
    case Kind::SquareHat:
      return (t >= 0.0 && t <= t0) ? sign : 1.0;
    case Kind::Custom: {
      const double w = custom(t);
      return w * w;
    }
  }
  throw config_error("unknown profile kind");
}

double ConformalProfile::omega(double t) const {
  if (kind == Kind::SquareHat) {
    if (sign < 0 && t >= 0.0 && t <= t0)
      throw config_error("square-hat profile has imaginary Omega inside the hat");
    return std::sqrt(omega_sq(t));
  }
  if (kind == Kind::Constant) return omega0;
  if (kind == Kind::Custom) return custom(t);
  return 1.0 - depth * std::exp(-(t - center) * (t - center) / (2 * width * width));
}

ConformalProfile constant_profile(double omega0) {
  ConformalProfile p;
  p.kind = ConformalProfile::Kind::Constant;
  p.omega0 = omega0;
  return p;
}

ConformalProfile inverted_gaussian_profile(double depth, double center,
                                           double width) {
  if (!(depth > 0.0) || !(depth < 1.0))
    throw config_error("inverted-Gaussian depth must satisfy 0 < depth < 1");
  if (!(width > 0.0)) throw config_error("inverted-Gaussian width must be positive");
  ConformalProfile p;
  p.kind = ConformalProfile::Kind::InvertedGaussian;
  p.depth = depth;
  p.center = center;
  p.width = width;
  return p;
}

ConformalProfile squarehat_profile(double t0, double sign) {
  if (!(t0 > 0.0)) throw config_error("square-hat t0 must be positive");
  ConformalProfile p;
  p.kind = ConformalProfile::Kind::SquareHat;
  p.t0 = t0;
  p.sign = sign;
  return p;
}

ConformalProfile custom_profile(std::function<double(double)> omega) {
  ConformalProfile p;
  p.kind = ConformalProfile::Kind::Custom;
  p.custom = std::move(omega);
  return p;
}

double SpinorGrid::norm() const {
  return std::sqrt(dx() * (c1.squaredNorm() + c2.squaredNorm()));
}

SpinorGrid make_spinor_grid(double L, int N) {
  if (!(L > 0)) throw config_error("domain length L must be positive");
  if (N < 2) throw config_error("grid size N must be at least 2");
  SpinorGrid g;
  g.L = L;
  g.N = N;
  g.c1 = VectorXcd::Zero(N);
  g.c2 = VectorXcd::Zero(N);
  return g;
}

VectorXd wavenumbers(double L, int N) {
  VectorXd k(N);
  for (int j = 0; j < N; ++j) {
    const int jj = (j < (N + 1) / 2) ? j : j - N;
    k(j) = 2 * pi * jj / L;
  }
  return k;
}

namespace {

void require_pow2(const char* what, int N) {
  if (!is_pow2(N))
    throw config_error(std::string(what) + " requires a power-of-two grid size");
}

VectorXcd phase(const VectorXd& k, double arg_scale) {
  VectorXcd p(k.size());
  for (int j = 0; j < k.size(); ++j) {
    const double a = k(j) * arg_scale;
    p(j) = cplx(std::cos(a), std::sin(a));
  }
  return p;
}

} // namespace

ModeSpectrum to_modes(const SpinorGrid& g) {
  require_pow2("to_modes", g.N);
  ModeSpectrum s;
  s.L = g.L;
  s.N = g.N;
  s.k = wavenumbers(g.L, g.N);
  const VectorXcd ph = phase(s.k, g.L / 2); // e^{+i k L/2}
  s.a1 = (fft_forward(g.c1) / double(g.N)).cwiseProduct(ph);
  s.a2 = (fft_forward(g.c2) / double(g.N)).cwiseProduct(ph);
  return s;
}

SpinorGrid from_modes(const ModeSpectrum& s) {
  require_pow2("from_modes", s.N);
  SpinorGrid g = make_spinor_grid(s.L, s.N);
  const VectorXcd ph = phase(s.k, -s.L / 2); // e^{-i k L/2}
  g.c1 = fft_inverse(VectorXcd(s.a1.cwiseProduct(ph))) * double(s.N);
  g.c2 = fft_inverse(VectorXcd(s.a2.cwiseProduct(ph))) * double(s.N);
  return g;
}

double energy(double k, double mass) { return std::hypot(k, mass); }

Vector2cd branch_spinor(double k, double mass, int branch) {
  if (branch != 1 && branch != -1)
    throw config_error("branch must be +1 or -1");
  const double E = energy(k, mass);
  const double den = std::sqrt(2 * E * (E + mass));
  Vector2cd u;
  if (den <= 0.0) { // k = m = 0 degenerate point
    if (branch > 0)
      u << 1, 0;
    else
      u << 0, 1;
    return u;
  }
  if (branch > 0)
    u << (E + mass) / den, k / den;
  else
    u << -k / den, (E + mass) / den;
  return u;
}

SpinorGrid gaussian_position_packet(double L, int N, double sigma,
                                    Vector2cd components, double k0) {
  if (!(sigma > 0)) throw config_error("packet width sigma must be positive");
  const double cn = components.norm();
  if (!(cn > 0)) throw config_error("spinor components must not be all zero");
  components /= cn;

  const double edge = std::exp(-(L / 2) * (L / 2) / (2 * sigma * sigma));
  if (edge > 1e-8)
    throw config_error(
        "domain too small: packet envelope at the boundary is " +
        std::to_string(edge) + " of its peak (limit 1e-8); increase L");

  SpinorGrid g = make_spinor_grid(L, N);
  for (int j = 0; j < N; ++j) {
    const double x = g.x(j);
    const double env = std::exp(-x * x / (2 * sigma * sigma));
    const cplx ph(std::cos(k0 * x), std::sin(k0 * x));
    g.c1(j) = env * ph * components(0);
    g.c2(j) = env * ph * components(1);
  }
  const double n = g.norm();
  g.c1 /= n;
  g.c2 /= n;
  return g;
}

SpinorGrid branch_packet(double L, int N, double sigma_k, double k0, int branch,
                         double mass) {
  if (!(sigma_k > 0)) throw config_error("sigma_k must be positive");
  if (mass < 0) throw config_error("mass must be non-negative");
  require_pow2("branch_packet", N);

  ModeSpectrum s;
  s.L = L;
  s.N = N;
  s.k = wavenumbers(L, N);
  s.a1 = VectorXcd::Zero(N);
  s.a2 = VectorXcd::Zero(N);
  for (int j = 0; j < N; ++j) {
    const double w =
        std::exp(-(s.k(j) - k0) * (s.k(j) - k0) / (2 * sigma_k * sigma_k));
    const Vector2cd u = branch_spinor(s.k(j), mass, branch);
    s.a1(j) = w * u(0);
    s.a2(j) = w * u(1);
  }
  SpinorGrid g = from_modes(s);
  const double n = g.norm();
  if (!(n > 0)) throw config_error("branch packet has zero norm");
  g.c1 /= n;
  g.c2 /= n;
  return g;
}

double mean_position(const SpinorGrid& g, std::vector<std::string>* warnings) {
  double total = 0.0, mx = 0.0;
  for (int j = 0; j < g.N; ++j) {
    const double rho = std::norm(g.c1(j)) + std::norm(g.c2(j));
    total += rho;
    mx += g.x(j) * rho;
  }
  if (!(total > 0)) throw config_error("mean_position of a zero state");
  if (warnings) {
    const double p_lo = (std::norm(g.c1(0)) + std::norm(g.c2(0))) / total;
    const double p_hi =
        (std::norm(g.c1(g.N - 1)) + std::norm(g.c2(g.N - 1))) / total;
    if (p_lo > 1e-6 && p_hi > 1e-6)
      warnings->push_back(
          "mean_position: density exceeds 1e-6 at both domain edges; periodic "
          "wrap-around may bias <x>");
  }
  return mx / total;
}

EnergyFractions energy_fractions(const SpinorGrid& g, double m_ref) {
  const ModeSpectrum s = to_modes(g);
  EnergyFractions f;
  for (int j = 0; j < s.N; ++j) {
    const Vector2cd a(s.a1(j), s.a2(j));
    const Vector2cd up = branch_spinor(s.k(j), m_ref, +1);
    const Vector2cd um = branch_spinor(s.k(j), m_ref, -1);
    f.pos += std::norm(up.dot(a)); // dot conjugates its first argument
    f.neg += std::norm(um.dot(a));
  }
  f.pos *= g.L;
  f.neg *= g.L;
  return f;
}

namespace {

// one exact flat step: a <- exp(-i H(k) t) a with H = k sigma_x + m sigma_z
void apply_flat_U(VectorXcd& a1, VectorXcd& a2, const VectorXd& k, double mass,
                  double t) {
  const cplx I(0, 1);
  for (int j = 0; j < k.size(); ++j) {
    const double E = std::sqrt(k(j) * k(j) + mass * mass);
    const double co = std::cos(E * t);
    const double sE = (E > 0) ? std::sin(E * t) / E : t;
    const cplx b1 = (co - I * mass * sE) * a1(j) + (-I * k(j) * sE) * a2(j);
    const cplx b2 = (-I * k(j) * sE) * a1(j) + (co + I * mass * sE) * a2(j);
    a1(j) = b1;
    a2(j) = b2;
  }
}

} // namespace

SpinorGrid evolve_flat(const SpinorGrid& g0, const DiracParams& par, double t) {
  if (par.mass < 0) throw config_error("mass must be non-negative");
  ModeSpectrum s = to_modes(g0);
  apply_flat_U(s.a1, s.a2, s.k, par.mass, t);
  return from_modes(s);
}

namespace {

void record_sample(Trajectory& tr, int i, double t, const SpinorGrid& g,
                   double m_ref, const GridObserver& obs) {
  tr.t(i) = t;
  tr.mean_x(i) = mean_position(g, &tr.warnings);
  tr.norm(i) = g.norm();
  const EnergyFractions f = energy_fractions(g, m_ref);
  const double n2 = f.pos + f.neg;
  tr.pos_frac(i) = f.pos / n2;
  tr.neg_frac(i) = f.neg / n2;
  if (obs) obs(i, t, g);
}

Trajectory make_trajectory(int n, double m_ref) {
  Trajectory tr;
  tr.t.resize(n);
  tr.mean_x.resize(n);
  tr.norm.resize(n);
  tr.pos_frac.resize(n);
  tr.neg_frac.resize(n);
  tr.m_ref = m_ref;
  return tr;
}

} // namespace

Trajectory evolve_flat_sampled(const SpinorGrid& g0, const DiracParams& par,
                               const VectorXd& times, const GridObserver& obs) {
  if (times.size() < 1) throw config_error("empty sampling grid");
  const ModeSpectrum s0 = to_modes(g0);
  Trajectory tr = make_trajectory(int(times.size()), par.mass);
  for (int i = 0; i < times.size(); ++i) {
    ModeSpectrum s = s0;
    apply_flat_U(s.a1, s.a2, s.k, par.mass, times(i) - times(0));
    record_sample(tr, i, times(i), from_modes(s), par.mass, obs);
  }
  return tr;
}

Trajectory evolve_frw(const SpinorGrid& g0, const DiracParams& par,
                      const ConformalProfile& profile, const VectorXd& times,
                      double dt, const GridObserver& obs,
                      SpinorGrid* final_state) {
  if (times.size() < 1) throw config_error("empty sampling grid");
  for (int i = 1; i < times.size(); ++i)
    if (!(times(i) > times(i - 1)))
      throw config_error("sampling times must be strictly increasing");
  if (!profile.real_valued())
    throw config_error("conformal profile must be real-valued for spinor evolution");
  if (par.mass < 0) throw config_error("mass must be non-negative");

  ModeSpectrum s = to_modes(g0);
  if (dt <= 0.0) {
    const double om0 = profile.omega(times(0));
    double emax = 0.0;
    for (int j = 0; j < s.N; ++j)
      emax = std::max(emax,
                      std::sqrt(s.k(j) * s.k(j) + par.mass * par.mass * om0 * om0));
    dt = 0.01 / std::max(emax, 1e-12);
  }

  Trajectory tr = make_trajectory(int(times.size()), par.mass);
  record_sample(tr, 0, times(0), from_modes(s), par.mass, obs);

  for (int i = 1; i < times.size(); ++i) {
    const double t0 = times(i - 1), t1 = times(i);
    const int nsub = std::max(1, int(std::ceil((t1 - t0) / dt - 1e-12)));
    const double h = (t1 - t0) / nsub;
    const double p_before = s.a1.squaredNorm() + s.a2.squaredNorm();
    for (int sub = 0; sub < nsub; ++sub) {
      const double tm = t0 + (sub + 0.5) * h;
      const double om = profile.omega(tm);
      if (!(om > 0))
        throw config_error("conformal profile must be positive: m_eff <= 0 at t = " +
                           std::to_string(tm));
      apply_flat_U(s.a1, s.a2, s.k, par.mass * om, h);
    }
    const double p_after = s.a1.squaredNorm() + s.a2.squaredNorm();
    if (std::abs(p_after - p_before) > 1e-10 * nsub * std::max(1.0, p_before))
      throw numerical_error("unitarity drift per step exceeded 1e-10; step rejected");
    record_sample(tr, i, t1, from_modes(s), par.mass, obs);
  }
  if (final_state) *final_state = from_modes(s);
  return tr;
}

VectorXd detrend_linear(const VectorXd& t, const VectorXd& s) {
  const int n = int(t.size());
  if (n < 2) throw config_error("detrend needs at least two samples");
  // normal equations for s ~ a + b t
  const double st = t.sum(), stt = t.squaredNorm();
  const double ss = s.sum(), sts = t.dot(s);
  const double det = n * stt - st * st;
  const double b = (n * sts - st * ss) / det;
  const double a = (ss - b * st) / n;
  return s - (a + b * t.array()).matrix();
}

SpectralPeak spectral_peak(const VectorXd& t, const VectorXd& s, int pad) {
  const int M = int(s.size());
  if (M < 8) throw config_error("spectral_peak needs at least 8 samples");
  const double dt = t(1) - t(0);

  VectorXd w(M);
  double wsum = 0.0;
  for (int i = 0; i < M; ++i) {
    w(i) = 0.5 * (1.0 - std::cos(2 * pi * i / (M - 1)));
    wsum += w(i);
  }

  const int Np = next_pow2(pad * M);
  VectorXcd buf = VectorXcd::Zero(Np);
  for (int i = 0; i < M; ++i) buf(i) = s(i) * w(i);
  const VectorXcd S = fft_forward(buf);

  const int half = Np / 2;
  const int lo = int(std::ceil(4.0 * Np / M));
  if (lo >= half - 1) throw config_error("series too short for peak search");
  int p = lo;
  double best = -1.0;
  for (int i = lo; i < half; ++i) {
    const double m = std::abs(S(i));
    if (m > best) {
      best = m;
      p = i;
    }
  }
  SpectralPeak out;
  if (best <= 0.0) {
    out.frequency = 2 * pi * p / (Np * dt);
    out.amplitude = 0.0;
    return out;
  }
  const double lm = std::log(std::abs(S(p - 1)) + 1e-300);
  const double l0 = std::log(std::abs(S(p)) + 1e-300);
  const double lp = std::log(std::abs(S(p + 1)) + 1e-300);
  const double denom = lm - 2 * l0 + lp;
  const double delta = (denom != 0.0) ? 0.5 * (lm - lp) / denom : 0.0;
  out.frequency = 2 * pi * (p + delta) / (Np * dt);
  out.amplitude = 2 * std::exp(l0 - 0.25 * (lm - lp) * delta) / wsum;
  return out;
}

double demod_amplitude(const VectorXd& t, const VectorXd& s, double omega,
                       double n_cycles) {
  if (!(omega > 0)) throw config_error("demodulation frequency must be positive");
  const double dt = t(1) - t(0);
  int M = int(std::llround(n_cycles * 2 * pi / omega / dt));
  M = std::min<int>(std::max(M, 1), int(s.size()));
  cplx z = 0.0;
  for (int i = 0; i < M; ++i) {
    const double a = omega * t(i);
    z += s(i) * cplx(std::cos(a), -std::sin(a));
  }
  return 2.0 * std::abs(z) / M;
}

ZbResult zb_analysis(const VectorXd& t, const VectorXd& mean_x, double m_ref) {
  const int n = int(t.size());
  if (n < 8) throw config_error("zb_analysis needs at least 8 samples");
  const double dt = t(1) - t(0);
  for (int i = 1; i < n; ++i)
    if (std::abs((t(i) - t(i - 1)) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
      throw config_error("zb_analysis requires uniform sampling");
  if (m_ref > 0) {
    const double span = t(n - 1) - t(0);
    const double need = 8 * pi / m_ref; // 8 periods of frequency 2 m_ref
    if (span < need - 1e-12)
      throw config_error("trajectory spans fewer than 8 periods of 2 m_ref");
  }

  const VectorXd d = detrend_linear(t, mean_x);
  const SpectralPeak pk = spectral_peak(t, d);
  ZbResult r;
  if (pk.amplitude < 1e-9) {
    r.frequency = std::numeric_limits<double>::quiet_NaN();
    r.amplitude = 0.0;
    r.no_zb = true;
    return r;
  }
  r.frequency = pk.frequency;
  r.amplitude = demod_amplitude(t, d, pk.frequency, 2.0);
  return r;
}

ZbResult zb_analysis(const Trajectory& traj) {
  return zb_analysis(traj.t, traj.mean_x, traj.m_ref);
}

} // namespace dirac2d
