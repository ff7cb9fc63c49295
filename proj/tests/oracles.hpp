#pragma once

// Independent reference implementations used only by the test suite.
// These deliberately avoid the library's own integrators so that
// agreement is a genuine cross-check, not a tautology.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "dirac2d/common.hpp"
#include "dirac2d/dirac.hpp"
#include "dirac2d/profile.hpp"

namespace oracles {

using dirac2d::cplx;
using dirac2d::Matrix2cd;
using dirac2d::Vector2cd;
using dirac2d::VectorXcd;

// Fixed-step RK4 on a single momentum mode of the conformally rescaled flat
// Hamiltonian H_k(t) = sigma_x k + sigma_z m Omega(t).
inline Vector2cd rk4_mode(Vector2cd a, double k, double mass,
                          const std::function<double(double)>& omega,
                          double t0, double t1, double dt) {
    const Matrix2cd sx = dirac2d::sigma_x();
    const Matrix2cd sz = dirac2d::sigma_z();
    auto rhs = [&](double t, const Vector2cd& y) -> Vector2cd {
        const Matrix2cd h = sx * k + sz * (mass * omega(t));
        return cplx(0.0, -1.0) * (h * y);
    };
    const long n = std::lround(std::ceil((t1 - t0) / dt));
    const double h = (t1 - t0) / static_cast<double>(n);
    double t = t0;
    for (long i = 0; i < n; ++i) {
        const Vector2cd k1 = rhs(t, a);
        const Vector2cd k2 = rhs(t + 0.5 * h, a + 0.5 * h * k1);
        const Vector2cd k3 = rhs(t + 0.5 * h, a + 0.5 * h * k2);
        const Vector2cd k4 = rhs(t + h, a + h * k3);
        a += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return a;
}

// Mode-by-mode RK4 evolution of a whole grid state under a conformal factor.
inline dirac2d::SpinorGrid rk4_frw(const dirac2d::SpinorGrid& g0, double mass,
                                   const dirac2d::ConformalProfile& prof,
                                   double t1, double dt) {
    auto modes = dirac2d::to_modes(g0);
    auto omega = [&](double t) { return prof.omega(t); };
    for (int j = 0; j < modes.k.size(); ++j) {
        Vector2cd a(modes.a1(j), modes.a2(j));
        a = rk4_mode(a, modes.k(j), mass, omega, 0.0, t1, dt);
        modes.a1(j) = a(0);
        modes.a2(j) = a(1);
    }
    return dirac2d::from_modes(modes);
}

// Positive-branch fraction of a grid state, mode by mode, with the same RK4
// reference propagation. Used as the particle-production oracle.
inline double rk4_frw_pos_fraction(const dirac2d::SpinorGrid& g0, double mass,
                                   const dirac2d::ConformalProfile& prof,
                                   double t1, double dt) {
    const dirac2d::SpinorGrid gf = rk4_frw(g0, mass, prof, t1, dt);
    const auto frac = dirac2d::energy_fractions(gf, mass);
    return frac.pos;
}

// Direct RK4 integration of the staggered-site Dirac form
//   i d/dz psi1(n) = -i [psi2(n+1) - psi2(n)] / d + sigma(z) psi1(n)
//   i d/dz psi2(n) = -i [psi1(n) - psi1(n-1)] / d - sigma(z) psi2(n)
// with open ends, bypassing the coupled-mode variables entirely.
struct SitePair {
    VectorXcd psi1;
    VectorXcd psi2;
};

inline SitePair rk4_site_dirac(SitePair y, double d,
                               const std::function<double(double)>& sigma,
                               double z1, double dz) {
    const int ns = static_cast<int>(y.psi1.size());
    auto rhs = [&](double z, const SitePair& s) -> SitePair {
        SitePair out{VectorXcd(ns), VectorXcd(ns)};
        const double sg = sigma(z);
        const cplx mi(0.0, -1.0);
        for (int n = 0; n < ns; ++n) {
            const cplx p2r = (n + 1 < ns) ? s.psi2(n + 1) : cplx(0.0);
            const cplx p1l = (n > 0) ? s.psi1(n - 1) : cplx(0.0);
            const cplx r1 = mi * (p2r - s.psi2(n)) / d + sg * s.psi1(n);
            const cplx r2 = mi * (s.psi1(n) - p1l) / d - sg * s.psi2(n);
            out.psi1(n) = mi * r1;
            out.psi2(n) = mi * r2;
        }
        return out;
    };
    auto axpy = [&](const SitePair& a, double c, const SitePair& b) -> SitePair {
        return SitePair{a.psi1 + c * b.psi1, a.psi2 + c * b.psi2};
    };
    const long n = std::lround(std::ceil(z1 / dz));
    const double h = z1 / static_cast<double>(n);
    double z = 0.0;
    for (long i = 0; i < n; ++i) {
        const SitePair k1 = rhs(z, y);
        const SitePair k2 = rhs(z + 0.5 * h, axpy(y, 0.5 * h, k1));
        const SitePair k3 = rhs(z + 0.5 * h, axpy(y, 0.5 * h, k2));
        const SitePair k4 = rhs(z + h, axpy(y, h, k3));
        y.psi1 += (h / 6.0) * (k1.psi1 + 2.0 * k2.psi1 + 2.0 * k3.psi1 + k4.psi1);
        y.psi2 += (h / 6.0) * (k1.psi2 + 2.0 * k2.psi2 + 2.0 * k3.psi2 + k4.psi2);
        z += h;
    }
    return y;
}

}  // namespace oracles
