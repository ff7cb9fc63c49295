#include "dirac2d/waveguide.hpp"

#include <cmath>
#include <sstream>

namespace dirac2d::waveguide {

namespace {

constexpr cplx I{0.0, 1.0};

void require_even(int n_wg, const char* where) {
    if (n_wg < 2 || n_wg % 2 != 0) {
        std::ostringstream msg;
        msg << where << " requires an even number of waveguides >= 2, got " << n_wg;
        throw config_error(msg.str());
    }
}

}  // namespace

double site_position(int l, int n_waveguides, double d) {
    const int site = (l + 1) / 2;  // ceil(l/2) for l >= 1
    const double lattice_length = 0.5 * n_waveguides * d;
    return (site - 1) * d - 0.5 * lattice_length;
}

WaveguideState discretize(const SpinorGrid& state, double d) {
    WaveguideState wg;
    wg.d = d;
    const int ns = state.N;
    wg.c.resize(2 * ns);
    for (int n = 1; n <= ns; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
        wg.c(2 * n - 1) = sgn * state.c1(n - 1);       // l = 2n
        wg.c(2 * n - 2) = -I * sgn * state.c2(n - 1);  // l = 2n - 1
    }
    return wg;
}

SpinorGrid reconstruct(const WaveguideState& state, double d) {
    const int n_wg = state.n_waveguides();
    require_even(n_wg, "reconstruct");
    SpinorGrid grid;
    grid.N = n_wg / 2;
    grid.L = grid.N * d;
    grid.c1.resize(grid.N);
    grid.c2.resize(grid.N);
    for (int n = 1; n <= grid.N; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        grid.c1(n - 1) = sgn * state.c(2 * n - 1);
        grid.c2(n - 1) = I * sgn * state.c(2 * n - 2);
    }
    return grid;
}

namespace {

// RHS of i dc/dz = -kappa (c_{l-1} + c_{l+1}) + (-1)^l sigma_l(z) c_l.
Eigen::VectorXcd coupled_mode_rhs(const Eigen::VectorXcd& c, double z, double kappa,
                                  const DetuningProfile& det, bool periodic) {
    const int n = static_cast<int>(c.size());
    Eigen::VectorXcd dc(n);
    for (int i = 0; i < n; ++i) {
        cplx nb{0.0, 0.0};
        if (i > 0)
            nb += c(i - 1);
        else if (periodic)
            nb += c(n - 1);
        if (i < n - 1)
            nb += c(i + 1);
        else if (periodic)
            nb += c(0);
        const int l = i + 1;
        const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
        dc(i) = -I * (-kappa * nb + sgn * det.value(l, z) * c(i));
    }
    return dc;
}

}  // namespace

LatticeTrajectory propagate(const WaveguideState& state, const DetuningProfile& detuning,
                            const std::vector<double>& z_grid,
                            const PropagateOptions& opt) {
    require_even(state.n_waveguides(), "propagate");
    if (z_grid.empty()) throw config_error("propagate needs a non-empty z grid");
    for (std::size_t i = 0; i + 1 < z_grid.size(); ++i)
        if (!(z_grid[i + 1] > z_grid[i]))
            throw config_error("propagate z grid must be strictly increasing");

    const double kappa = state.kappa();
    const double dz = opt.dz > 0.0 ? opt.dz : 0.0025 / kappa;
    const int n = state.n_waveguides();

    LatticeTrajectory traj;
    Eigen::VectorXcd c = state.c;
    const double p0 = c.squaredNorm();
    bool edge_warned = false;

    auto record = [&](double z) {
        traj.z.push_back(z);
        traj.snapshots.push_back(c);
        WaveguideState snap{c, state.d};
        traj.mean_x.push_back(lattice_mean_position(snap));
        const double p = c.squaredNorm();
        traj.power.push_back(p);
        if (std::abs(p - p0) > 1e-8 * std::max(1.0, p0)) {
            std::ostringstream msg;
            msg << "power drift " << std::abs(p - p0) << " at z = " << z
                << " exceeds 1e-8; reduce dz";
            throw numerical_error(msg.str());
        }
        if (!edge_warned && !opt.periodic) {
            const double edge = std::norm(c(0)) + std::norm(c(n - 1));
            if (edge > 1e-6 * p) {
                std::ostringstream msg;
                msg << "edge reflection: boundary power fraction " << edge / p
                    << " at z = " << z << " exceeds 1e-6";
                traj.warnings.push_back(msg.str());
                edge_warned = true;
            }
        }
    };

    record(z_grid.front());
    for (std::size_t i = 0; i + 1 < z_grid.size(); ++i) {
        const double z0 = z_grid[i], z1 = z_grid[i + 1];
        const int nsub = std::max(1, static_cast<int>(std::ceil((z1 - z0) / dz)));
        const double h = (z1 - z0) / nsub;
        for (int s = 0; s < nsub; ++s) {
            const double z = z0 + s * h;
            const Eigen::VectorXcd k1 = coupled_mode_rhs(c, z, kappa, detuning, opt.periodic);
            const Eigen::VectorXcd k2 =
                coupled_mode_rhs(c + 0.5 * h * k1, z + 0.5 * h, kappa, detuning, opt.periodic);
            const Eigen::VectorXcd k3 =
                coupled_mode_rhs(c + 0.5 * h * k2, z + 0.5 * h, kappa, detuning, opt.periodic);
            const Eigen::VectorXcd k4 =
                coupled_mode_rhs(c + h * k3, z + h, kappa, detuning, opt.periodic);
            c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        record(z1);
    }
    return traj;
}

double lattice_mean_position(const WaveguideState& state) {
    const int n = state.n_waveguides();
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        const double w = std::norm(state.c(i));
        num += w * site_position(i + 1, n, state.d);
        den += w;
    }
    if (den <= 0.0) throw config_error("lattice_mean_position needs nonzero power");
    return num / den;
}

Eigen::MatrixXd intensity_map(const LatticeTrajectory& traj) {
    const int rows = static_cast<int>(traj.snapshots.size());
    const int cols = rows > 0 ? static_cast<int>(traj.snapshots.front().size()) : 0;
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = std::abs(traj.snapshots[r](c));
    return m;
}

namespace {

WaveguideState from_site_spinors(const Eigen::VectorXcd& s1, const Eigen::VectorXcd& s2,
                                 double d) {
    const int ns = static_cast<int>(s1.size());
    WaveguideState wg;
    wg.d = d;
    wg.c.resize(2 * ns);
    for (int n = 1; n <= ns; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        wg.c(2 * n - 1) = sgn * s1(n - 1);
        wg.c(2 * n - 2) = -I * sgn * s2(n - 1);
    }
    const double p = wg.c.squaredNorm();
    if (p <= 0.0) throw config_error("lattice packet has zero power");
    wg.c *= 1.0 / std::sqrt(p * d);  // unit spinor norm: power * d = 1
    return wg;
}

}  // namespace

WaveguideState lattice_gaussian_packet(int n_waveguides, double d, double sigma,
                                       cplx comp1, cplx comp2, double k0) {
    require_even(n_waveguides, "lattice_gaussian_packet");
    if (!(sigma > 0.0)) throw config_error("lattice_gaussian_packet requires sigma > 0");
    const int ns = n_waveguides / 2;
    const double half = 0.25 * n_waveguides * d;
    const double boundary = std::exp(-half * half / (2.0 * sigma * sigma));
    if (boundary > 1e-8)
        throw config_error("domain too small: gaussian envelope exceeds 1e-8 at the array edge");
    Eigen::VectorXcd s1(ns), s2(ns);
    for (int n = 1; n <= ns; ++n) {
        const double x = site_position(2 * n, n_waveguides, d);
        const cplx env = std::exp(-x * x / (2.0 * sigma * sigma)) * std::exp(I * k0 * x);
        s1(n - 1) = comp1 * env;
        s2(n - 1) = comp2 * env;
    }
    return from_site_spinors(s1, s2, d);
}

WaveguideState lattice_branch_packet(int n_waveguides, double d, double sigma_k,
                                     double k0, int branch, double mass) {
    require_even(n_waveguides, "lattice_branch_packet");
    if (!(sigma_k > 0.0)) throw config_error("lattice_branch_packet requires sigma_k > 0");
    if (branch != +1 && branch != -1)
        throw config_error("lattice_branch_packet branch must be +1 or -1");
    const int ns = n_waveguides / 2;
    Eigen::VectorXcd s1 = Eigen::VectorXcd::Zero(ns), s2 = Eigen::VectorXcd::Zero(ns);
    for (int j = 0; j < ns; ++j) {
        const int jj = j < (ns + 1) / 2 ? j : j - ns;  // DFT index in [-ns/2, ns/2)
        const double k = 2.0 * pi * jj / (ns * d);
        const double w = std::exp(-(k - k0) * (k - k0) / (2.0 * sigma_k * sigma_k));
        if (w < 1e-14) continue;
        // Bloch Hamiltonian of the forward/backward difference Dirac system.
        const double hx = std::sin(k * d) / d;
        const double hy = -(1.0 - std::cos(k * d)) / d;
        const double hz = mass;
        const double E = std::sqrt(hx * hx + hy * hy + hz * hz);
        cplx u1, u2;
        if (E + hz < 1e-300) {
            u1 = 0.0;
            u2 = 1.0;
        } else {
            const double nrm = std::sqrt(2.0 * E * (E + hz));
            if (branch > 0) {
                u1 = (E + hz) / nrm;
                u2 = cplx(hx, hy) / nrm;
            } else {
                u1 = -cplx(hx, -hy) / nrm;
                u2 = (E + hz) / nrm;
            }
        }
        for (int n = 1; n <= ns; ++n) {
            const double x = site_position(2 * n, n_waveguides, d);
            const cplx phase = std::exp(I * k * x);
            s1(n - 1) += w * u1 * phase;
            s2(n - 1) += w * u2 * phase;
        }
    }
    return from_site_spinors(s1, s2, d);
}

WaveguideState single_site_state(int n_waveguides, double d, int l) {
    require_even(n_waveguides, "single_site_state");
    if (l < 1 || l > n_waveguides)
        throw config_error("single_site_state waveguide index out of range");
    WaveguideState wg;
    wg.d = d;
    wg.c = Eigen::VectorXcd::Zero(n_waveguides);
    wg.c(l - 1) = 1.0;
    return wg;
}

}  // namespace dirac2d::waveguide
