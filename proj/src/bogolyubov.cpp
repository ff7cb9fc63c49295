#include "dirac2d/bogolyubov.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "dirac2d/ode.hpp"

namespace dirac2d::scalar {

namespace {

constexpr cplx I{0.0, 1.0};

// v(t) = v0 cos(w t) + vdot0 sin(w t)/w for v'' + w^2 v = 0 with complex w;
// the w -> 0 limit is handled by the series of sin(wt)/w.
void propagate_const(cplx w, double dt, cplx& v, cplx& vdot) {
    cplx c, s_over_w;
    if (std::abs(w) * std::abs(dt) < 1e-8) {
        const cplx w2 = w * w;
        c = 1.0 - 0.5 * w2 * dt * dt;
        s_over_w = dt * (1.0 - w2 * dt * dt / 6.0);
    } else {
        c = std::cos(w * dt);
        s_over_w = std::sin(w * dt) / w;
    }
    const cplx v1 = v * c + vdot * s_over_w;
    const cplx vd1 = -v * w * w * s_over_w + vdot * c;
    v = v1;
    vdot = vd1;
}

// Decomposes (v, vdot) at time t onto {e^{+i w (t - t_ref)}, e^{-i w (t - t_ref)}}/sqrt(w)
// and returns (alpha, beta) = conj of the two projection coefficients.
BogolyubovPair project_out(double k, double w, double t, double t_ref, cplx v, cplx vdot) {
    const double sw = std::sqrt(w);
    const cplx phase = std::exp(-I * w * (t - t_ref));
    const cplx a_star = 0.5 * sw * (v + vdot / (I * w)) * phase;
    const cplx b_star = 0.5 * sw * (v - vdot / (I * w)) / phase;
    BogolyubovPair pair;
    pair.k = k;
    pair.alpha = std::conj(a_star);
    pair.beta = std::conj(b_star);
    return pair;
}

}  // namespace

double wronskian(cplx v, cplx vdot) {
    const cplx w = -I * (vdot * std::conj(v) - v * std::conj(vdot)) * 0.5;
    if (std::abs(w.imag()) >= 1e-12) {
        std::ostringstream msg;
        msg << "wronskian has imaginary residue " << w.imag();
        throw numerical_error(msg.str());
    }
    return w.real();
}

BogolyubovPair analytic_squarehat(double k, double m, double t0) {
    if (std::abs(k - m) < 1e-9)
        throw config_error("analytic_squarehat degenerates at the resonance k = m");
    if (t0 < 0.0) throw config_error("analytic_squarehat requires t0 >= 0");
    const double w = std::sqrt(k * k + m * m);
    const cplx Om = std::sqrt(cplx(k * k - m * m, 0.0));
    const cplx c = std::cos(Om * t0);
    const cplx s = std::sin(Om * t0);
    const cplx a_star = c + 0.5 * I * (w / Om + Om / w) * s;
    const cplx b_star = 0.5 * I * (w / Om - Om / w) * s;
    BogolyubovPair pair;
    pair.k = k;
    pair.alpha = std::conj(a_star);
    pair.beta = std::conj(b_star);
    return pair;
}

namespace {

BogolyubovPair squarehat_numeric(const FrequencyProfile& fp) {
    const double t0 = fp.profile.t0;
    const double w = std::sqrt(fp.k * fp.k + fp.m * fp.m);
    // Region I in-mode evaluated at the first interface t = 0.
    cplx v = 1.0 / std::sqrt(w);
    cplx vdot = I * w * v;
    // Region II: constant omega^2 = k^2 - m^2 across (0, t0).
    const cplx w2 = std::sqrt(cplx(fp.k * fp.k - fp.m * fp.m, 0.0));
    propagate_const(w2, t0, v, vdot);
    return project_out(fp.k, w, t0, t0, v, vdot);
}

void check_asymptotically_flat(const FrequencyProfile& fp, double t, const char* which) {
    const double dev = std::abs(fp.profile.omega_sq(t) - 1.0);
    if (dev > 1e-6) {
        std::ostringstream msg;
        msg << "profile is not asymptotically flat at " << which << " = " << t
            << " (|Omega^2 - 1| = " << dev << ")";
        throw config_error(msg.str());
    }
}

}  // namespace

BogolyubovPair numeric_bogolyubov(const FrequencyProfile& profile, double t_in,
                                  double t_out, double rtol) {
    if (!(t_out > t_in)) throw config_error("numeric_bogolyubov requires t_out > t_in");
    if (profile.profile.kind == ConformalProfile::Kind::SquareHat)
        return squarehat_numeric(profile);

    check_asymptotically_flat(profile, t_in, "t_in");
    check_asymptotically_flat(profile, t_out, "t_out");

    const double w = std::sqrt(profile.k * profile.k + profile.m * profile.m);
    Eigen::Vector2cd y;
    y(0) = std::exp(I * w * t_in) / std::sqrt(w);
    y(1) = I * w * y(0);

    auto rhs = [&profile](double t, const Eigen::Vector2cd& s) {
        Eigen::Vector2cd d;
        d(0) = s(1);
        d(1) = -profile.omega_sq(t) * s(0);
        return d;
    };
    ode::DP54Options opt;
    opt.rtol = rtol;
    opt.atol = 1e-14;
    const std::function<void(double, const Eigen::Vector2cd&)> monitor =
        [](double, const Eigen::Vector2cd& s) {
            if (std::abs(wronskian(s(0), s(1)) - 1.0) > 1e-8)
                throw numerical_error("Wronskian drift exceeded 1e-8 during mode integration");
        };
    y = ode::integrate(rhs, y, t_in, t_out, opt, monitor);
    // Smooth profiles use the globally referenced out basis {e^{+-i w t}}/sqrt(w),
    // so a trivial background Omega^2 = 1 yields alpha = 1 exactly.
    return project_out(profile.k, w, t_out, 0.0, y(0), y(1));
}

ModeFunction integrate_mode(const FrequencyProfile& profile,
                            const std::vector<double>& t_grid, double rtol) {
    if (t_grid.size() < 2) throw config_error("integrate_mode needs at least two times");
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i + 1] > t_grid[i]))
            throw config_error("integrate_mode time grid must be strictly increasing");

    ModeFunction mf;
    mf.k = profile.k;
    const double w = std::sqrt(profile.k * profile.k + profile.m * profile.m);

    if (profile.profile.kind == ConformalProfile::Kind::SquareHat) {
        const double t0 = profile.profile.t0;
        const cplx w2 = std::sqrt(cplx(profile.k * profile.k - profile.m * profile.m, 0.0));
        // Boundary data at the end of the hat define region III exactly.
        cplx v_end = 1.0 / std::sqrt(w), vd_end = I * w * v_end;
        propagate_const(w2, t0, v_end, vd_end);
        for (double t : t_grid) {
            cplx v, vd;
            if (t <= 0.0) {
                v = std::exp(I * w * t) / std::sqrt(w);
                vd = I * w * v;
            } else if (t < t0) {
                v = 1.0 / std::sqrt(w);
                vd = I * w * v;
                propagate_const(w2, t, v, vd);
            } else {
                v = v_end;
                vd = vd_end;
                propagate_const(cplx(w, 0.0), t - t0, v, vd);
            }
            mf.t.push_back(t);
            mf.v.push_back(v);
            mf.vdot.push_back(vd);
        }
    } else {
        Eigen::Vector2cd y;
        y(0) = std::exp(I * w * t_grid.front()) / std::sqrt(w);
        y(1) = I * w * y(0);
        auto rhs = [&profile](double t, const Eigen::Vector2cd& s) {
            Eigen::Vector2cd d;
            d(0) = s(1);
            d(1) = -profile.omega_sq(t) * s(0);
            return d;
        };
        ode::DP54Options opt;
        opt.rtol = rtol;
        opt.atol = 1e-14;
        const std::function<void(double, const Eigen::Vector2cd&)> record =
            [&mf](double t, const Eigen::Vector2cd& s) {
                mf.t.push_back(t);
                mf.v.push_back(s(0));
                mf.vdot.push_back(s(1));
            };
        ode::integrate_to_times(rhs, y, t_grid, opt, record);
    }

    for (std::size_t i = 0; i < mf.t.size(); ++i)
        if (std::abs(wronskian(mf.v[i], mf.vdot[i]) - 1.0) > 1e-8)
            throw numerical_error("mode function lost Wronskian normalization");
    return mf;
}

}  // namespace dirac2d::scalar
