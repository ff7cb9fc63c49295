#pragma once

#include <vector>

#include "dirac2d/common.hpp"
#include "dirac2d/profile.hpp"

namespace dirac2d::scalar {

// Mode frequency omega_k^2(t) = k^2 + Omega^2(t) m^2 for the conformally
// coupled scalar field; Omega^2 may be negative (square hat interior).
struct FrequencyProfile {
    double k = 0.0;
    double m = 0.0;
    ConformalProfile profile;

    double omega_sq(double t) const { return k * k + profile.omega_sq(t) * m * m; }
};

// Samples of a mode function v_k(t) and its derivative along a time grid.
struct ModeFunction {
    double k = 0.0;
    std::vector<double> t;
    std::vector<cplx> v;
    std::vector<cplx> vdot;
};

struct BogolyubovPair {
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};
    double k = 0.0;
};

// Normalized Wronskian -i(vdot v* - v vdot*)/2; real by construction, the
// imaginary residue is asserted below 1e-12 and discarded.
double wronskian(cplx v, cplx vdot);

// Closed-form coefficients for the square-hat excursion Omega^2 = -1 on
// (0, t0): alpha/beta from matching plane waves across the two interfaces,
// with Omega_k = sqrt(k^2 - m^2) taken as a principal complex root.
BogolyubovPair analytic_squarehat(double k, double m, double t0);

// Integrates v'' + omega_k^2(t) v = 0 from the in-mode e^{i omega t}/sqrt(omega)
// and projects onto the out-basis at t_out. Square-hat profiles use exact
// piecewise matching; smooth profiles use the adaptive integrator.
BogolyubovPair numeric_bogolyubov(const FrequencyProfile& profile, double t_in,
                                  double t_out, double rtol = 1e-11);

// Mode function sampled on a strictly increasing grid, starting from the
// in-mode at t.front(); Wronskian conservation is checked at every sample.
ModeFunction integrate_mode(const FrequencyProfile& profile,
                            const std::vector<double>& t_grid, double rtol = 1e-11);

inline double particle_number(const BogolyubovPair& pair) { return std::norm(pair.beta); }

}  // namespace dirac2d::scalar
