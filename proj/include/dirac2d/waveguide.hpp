#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "dirac2d/common.hpp"
#include "dirac2d/dirac.hpp"
#include "dirac2d/profile.hpp"

namespace dirac2d::waveguide {

// Amplitudes c_l for waveguides l = 1..N_wg (stored 0-based: c(l-1)), with
// lattice constant d and coupling kappa = 1/d. Two waveguides per spatial
// site: site n hosts l = 2n (psi_1) and l = 2n-1 (psi_2).
struct WaveguideState {
    Eigen::VectorXcd c;
    double d = 1.0;

    int n_waveguides() const { return static_cast<int>(c.size()); }
    int n_sites() const { return n_waveguides() / 2; }
    double kappa() const { return 1.0 / d; }
    double power() const { return c.squaredNorm(); }
};

// Detuning magnitude sigma_l(z); the explicit (-1)^l sign of the coupled-mode
// equation is applied by the propagator, not stored here. The Dirac dictionary
// uses the uniform value sigma_l(z) = m_eff(z) = mass * Omega(z).
struct DetuningProfile {
    double mass = 0.0;
    ConformalProfile profile = constant_profile(1.0);
    std::function<double(int l, double z)> site_override;

    double value(int l, double z) const {
        return site_override ? site_override(l, z) : mass * profile.omega(z);
    }
};

struct LatticeTrajectory {
    std::vector<double> z;
    std::vector<Eigen::VectorXcd> snapshots;
    std::vector<double> mean_x;
    std::vector<double> power;
    std::vector<std::string> warnings;
};

struct PropagateOptions {
    double dz = 0.0;  // 0 -> 0.0025 / kappa
    bool periodic = false;
};

// Physical coordinate of waveguide l on the centered array of N_wg guides.
double site_position(int l, int n_waveguides, double d);

// Alternating phase map between spinor samples and waveguide amplitudes:
// c_{2n} = (-1)^n psi_1(n), c_{2n-1} = -i (-1)^n psi_2(n), sites n = 1..N.
WaveguideState discretize(const SpinorGrid& state, double d);
SpinorGrid reconstruct(const WaveguideState& state, double d);

// Integrates i dc_l/dz = -kappa (c_{l-1} + c_{l+1}) + (-1)^l sigma_l(z) c_l
// with RK4 over the sample grid; power drift beyond 1e-8 aborts the run.
LatticeTrajectory propagate(const WaveguideState& state, const DetuningProfile& detuning,
                            const std::vector<double>& z_grid,
                            const PropagateOptions& opt = {});

double lattice_mean_position(const WaveguideState& state);

// |c_l| over (z, l): rows follow the z samples, columns the waveguides.
Eigen::MatrixXd intensity_map(const LatticeTrajectory& traj);

// Gaussian envelope exp(-(x-0)^2/(2 sigma^2)) e^{i k0 x} times a constant
// spinor, sampled on the lattice sites and normalized to unit optical power
// times 1/d (so the reconstructed spinor has unit norm).
WaveguideState lattice_gaussian_packet(int n_waveguides, double d, double sigma,
                                       cplx comp1, cplx comp2, double k0 = 0.0);

// Branch packet built from the eigenvectors of the lattice Bloch Hamiltonian
// h = (sin(kd)/d, -(1-cos(kd))/d, m) so the opposite-branch content vanishes
// on the lattice itself, not just in the continuum limit.
WaveguideState lattice_branch_packet(int n_waveguides, double d, double sigma_k,
                                     double k0, int branch, double mass);

// Single excited waveguide (unit amplitude), for discrete-diffraction tests.
WaveguideState single_site_state(int n_waveguides, double d, int l);

}  // namespace dirac2d::waveguide
