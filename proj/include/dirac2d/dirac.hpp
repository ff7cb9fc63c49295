#pragma once

#include "dirac2d/common.hpp"
#include "dirac2d/profile.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dirac2d {

// Two-component spinor sampled on x_j = -L/2 + j L/N, j = 0..N-1, periodic.
// N must be a power of two for the FFT-based operations below.
struct SpinorGrid {
  double L = 200.0;
  int N = 1024;
  VectorXcd c1, c2;

  double dx() const { return L / N; }
  double x(int j) const { return -L / 2 + j * dx(); }
  // L2 norm, dx-weighted
  double norm() const;
};

SpinorGrid make_spinor_grid(double L = 200.0, int N = 1024);

// Mode coefficients a_j with psi(x_n) = sum_j a_j(k_j) e^{i k_j x_n},
// k_j = 2 pi j / L for j in [-N/2, N/2), stored in FFT order.
struct ModeSpectrum {
  double L = 0.0;
  int N = 0;
  VectorXd k;
  VectorXcd a1, a2;
};

ModeSpectrum to_modes(const SpinorGrid& g);
SpinorGrid from_modes(const ModeSpectrum& s);

// FFT-ordered wavenumber grid 2 pi j / L, j in [-N/2, N/2).
VectorXd wavenumbers(double L, int N);

struct DiracParams {
  double mass = 1.0; // asymptotic mass m >= 0, also the reference for branch projections
};

// Flat dispersion E = sqrt(k^2 + m^2).
double energy(double k, double mass);

// Flat positive/negative branch eigenspinors of H(k) = k sigma_x + m sigma_z,
// E = sqrt(k^2 + m^2); at k = m = 0 the convention is u+ = (1,0), u- = (0,1).
Vector2cd branch_spinor(double k, double mass, int branch);

// Normalized Gaussian packet exp(-x^2/(2 sigma^2) + i k0 x) times a fixed
// spinor. Throws config_error when the envelope at the domain boundary
// exceeds 1e-8 of its peak.
SpinorGrid gaussian_position_packet(double L, int N, double sigma,
                                    Vector2cd components, double k0 = 0.0);

// Normalized packet built in mode space from a single branch with amplitude
// weight exp(-(k-k0)^2/(2 sigma_k^2)).
SpinorGrid branch_packet(double L, int N, double sigma_k, double k0,
                         int branch, double mass);

// <x> of |psi|^2; appends a wrap warning when the edge-cell probabilities on
// both boundaries exceed 1e-6 of the total.
double mean_position(const SpinorGrid& g,
                     std::vector<std::string>* warnings = nullptr);

// Probability shares carried by the positive/negative branches of the flat
// Hamiltonian at the reference mass; pos + neg equals the squared norm.
struct EnergyFractions {
  double pos = 0.0, neg = 0.0;
};
EnergyFractions energy_fractions(const SpinorGrid& g, double m_ref);

// Exact flat propagation by time t: per-mode U = cos(E t) - i sin(E t)/E H(k).
SpinorGrid evolve_flat(const SpinorGrid& g0, const DiracParams& par, double t);

struct Trajectory {
  VectorXd t;
  VectorXd mean_x, norm, pos_frac, neg_frac;
  double m_ref = 0.0;
  std::vector<std::string> warnings;
};

using GridObserver = std::function<void(int idx, double t, const SpinorGrid&)>;

// Observables of the exactly propagated flat state at the given times.
Trajectory evolve_flat_sampled(const SpinorGrid& g0, const DiracParams& par,
                               const VectorXd& times,
                               const GridObserver& obs = {});

// FRW evolution with m_eff(t) = Omega(t) m: midpoint-exponential stepping
// u <- exp(-i H_k(t + h/2) h) u per mode, internal step <= dt (default
// 0.01 / max_k E_k(0)). The profile must be real and positive on the run.
Trajectory evolve_frw(const SpinorGrid& g0, const DiracParams& par,
                      const ConformalProfile& profile, const VectorXd& times,
                      double dt = 0.0, const GridObserver& obs = {},
                      SpinorGrid* final_state = nullptr);

// --- zitterbewegung extraction ---

// Least-squares removal of a + b t.
VectorXd detrend_linear(const VectorXd& t, const VectorXd& s);

struct SpectralPeak {
  double frequency = 0.0; // angular
  double amplitude = 0.0;
};

// Hann window + (>= pad x) zero-padded DFT + parabolic interpolation of the
// log magnitude; bins inside the DC mainlobe are skipped.
SpectralPeak spectral_peak(const VectorXd& t, const VectorXd& s, int pad = 8);

// 2|<s e^{-i omega t}>| over the first n_cycles full periods of omega.
double demod_amplitude(const VectorXd& t, const VectorXd& s, double omega,
                       double n_cycles);

struct ZbResult {
  double frequency = 0.0; // NaN when flagged
  double amplitude = 0.0;
  bool no_zb = false;
};

// Detrends <x>(t), locates the spectral peak, and measures the amplitude by
// demodulating at the peak frequency over its first two cycles. Requires a
// uniformly sampled trajectory spanning >= 8 periods of 2 m_ref; a peak below
// 1e-9 is reported as "no ZB" with zero amplitude and NaN frequency.
ZbResult zb_analysis(const VectorXd& t, const VectorXd& mean_x, double m_ref);
ZbResult zb_analysis(const Trajectory& traj);

} // namespace dirac2d
