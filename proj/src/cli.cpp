#include "dirac2d/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "dirac2d/bogolyubov.hpp"
#include "dirac2d/dirac.hpp"
#include "dirac2d/fftutil.hpp"
#include "dirac2d/geometry.hpp"
#include "dirac2d/io.hpp"
#include "dirac2d/version.hpp"
#include "dirac2d/waveguide.hpp"

namespace dirac2d::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// config plumbing

json load_config(const std::string& source) {
    if (source.empty()) return json::object();
    try {
        if (source == "-") return json::parse(std::cin);
        std::ifstream in(source);
        if (!in) throw config_error("cannot open config file: " + source);
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
}

// --set key=value override; value parsed as JSON, falling back to a string.
void apply_override(json& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw config_error("--set expects key=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;
    }
    json* node = &cfg;
    std::size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string part = key.substr(pos, dot - pos);
        if (part.empty()) throw config_error("--set key has an empty segment: " + kv);
        if (dot == std::string::npos) {
            (*node)[part] = parsed;
            break;
        }
        node = &(*node)[part];
        if (!node->is_object()) *node = json::object();
        pos = dot + 1;
    }
}

struct ErrorList {
    std::vector<std::string> items;

    void add(const std::string& msg) { items.push_back(msg); }
    void throw_if_any() const {
        if (items.empty()) return;
        std::string msg = "invalid configuration:";
        for (const auto& item : items) msg += "\n  - " + item;
        throw config_error(msg);
    }
};

// Strict reader over one JSON object: records missing/ill-typed/unknown keys
// in a shared ErrorList so every violation is reported at once.
class ConfigReader {
  public:
    ConfigReader(const json& j, std::string scope, ErrorList& errs)
        : j_(j), scope_(std::move(scope)), errs_(errs) {
        if (!j_.is_object()) errs_.add(label("") + "must be a JSON object");
    }

    bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

    double number(const std::string& key, std::optional<double> def = std::nullopt) {
        used_.insert(key);
        if (!has(key)) {
            if (def) return *def;
            errs_.add("missing required key " + label(key));
            return 0.0;
        }
        if (!j_.at(key).is_number()) {
            errs_.add(label(key) + " must be a number");
            return def ? *def : 0.0;
        }
        return j_.at(key).get<double>();
    }

    int integer(const std::string& key, std::optional<int> def = std::nullopt) {
        used_.insert(key);
        if (!has(key)) {
            if (def) return *def;
            errs_.add("missing required key " + label(key));
            return 0;
        }
        if (!j_.at(key).is_number_integer()) {
            errs_.add(label(key) + " must be an integer");
            return def ? *def : 0;
        }
        return j_.at(key).get<int>();
    }

    bool boolean(const std::string& key, bool def) {
        used_.insert(key);
        if (!has(key)) return def;
        if (!j_.at(key).is_boolean()) {
            errs_.add(label(key) + " must be a boolean");
            return def;
        }
        return j_.at(key).get<bool>();
    }

    std::string text(const std::string& key, std::optional<std::string> def = std::nullopt) {
        used_.insert(key);
        if (!has(key)) {
            if (def) return *def;
            errs_.add("missing required key " + label(key));
            return {};
        }
        if (!j_.at(key).is_string()) {
            errs_.add(label(key) + " must be a string");
            return def ? *def : std::string{};
        }
        return j_.at(key).get<std::string>();
    }

    // Scalar or array of numbers, normalized to a vector.
    std::vector<double> number_list(const std::string& key) {
        used_.insert(key);
        std::vector<double> out;
        if (!has(key)) {
            errs_.add("missing required key " + label(key));
            return out;
        }
        const json& v = j_.at(key);
        if (v.is_number()) {
            out.push_back(v.get<double>());
        } else if (v.is_array() && !v.empty()) {
            for (const auto& e : v) {
                if (!e.is_number()) {
                    errs_.add(label(key) + " must contain only numbers");
                    return {};
                }
                out.push_back(e.get<double>());
            }
        } else {
            errs_.add(label(key) + " must be a number or a non-empty array of numbers");
        }
        return out;
    }

    const json* object(const std::string& key) {
        used_.insert(key);
        if (!has(key)) return nullptr;
        if (!j_.at(key).is_object()) {
            errs_.add(label(key) + " must be a JSON object");
            return nullptr;
        }
        return &j_.at(key);
    }

    const json* raw(const std::string& key) {
        used_.insert(key);
        return has(key) ? &j_.at(key) : nullptr;
    }

    void check(bool cond, const std::string& msg) {
        if (!cond) errs_.add(msg);
    }

    // Flags unknown keys; call once after all reads.
    void finish() {
        if (!j_.is_object()) return;
        for (const auto& item : j_.items())
            if (!used_.count(item.key())) errs_.add("unknown key " + label(item.key()));
    }

    ErrorList& errors() { return errs_; }

  private:
    std::string label(const std::string& key) const {
        if (key.empty()) return scope_.empty() ? std::string("config ") : "'" + scope_ + "' ";
        return "'" + scope_ + key + "'";
    }

    const json& j_;
    std::string scope_;
    ErrorList& errs_;
    std::set<std::string> used_;
};

std::string nice_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void ensure_outdir(const std::string& outdir) {
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec) throw config_error("cannot create output directory '" + outdir + "': " + ec.message());
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// shared parsers

ConformalProfile parse_profile(const json* obj, ErrorList& errs, bool spinor_use) {
    if (!obj) return constant_profile(1.0);
    ConfigReader r(*obj, "profile.", errs);
    const std::string kind = r.text("kind", std::string("constant"));
    ConformalProfile prof = constant_profile(1.0);
    if (kind == "constant") {
        const double omega0 = r.number("omega0", 1.0);
        r.check(omega0 > 0.0, "'profile.omega0' must be > 0");
        if (omega0 > 0.0) prof = constant_profile(omega0);
    } else if (kind == "inverted_gaussian") {
        const double depth = r.number("depth");
        const double center = r.number("center");
        const double width = r.number("width");
        const bool ok = depth > 0.0 && depth < 1.0 && width > 0.0;
        r.check(depth > 0.0 && depth < 1.0,
                "'profile.depth' must lie in (0, 1) so m_eff stays positive");
        r.check(width > 0.0, "'profile.width' must be > 0");
        if (ok) prof = inverted_gaussian_profile(depth, center, width);
    } else if (kind == "squarehat") {
        const double t0 = r.number("t0");
        r.check(t0 >= 0.0, "'profile.t0' must be >= 0");
        if (spinor_use) {
            errs.add("'profile.kind' squarehat has imaginary Omega inside the hat; "
                     "it is scalar-only (use the bogolyubov subcommand)");
        } else if (t0 >= 0.0) {
            prof = squarehat_profile(t0);
        }
    } else {
        errs.add("'profile.kind' must be one of constant, inverted_gaussian, squarehat; got '" +
                 kind + "'");
    }
    r.finish();
    return prof;
}

int parse_branch(ConfigReader& r, const std::string& key) {
    const json* v = r.raw(key);
    if (!v) {
        r.errors().add("missing required key '" + key + "'");
        return +1;
    }
    if (v->is_string()) {
        const auto s = v->get<std::string>();
        if (s == "+") return +1;
        if (s == "-") return -1;
    } else if (v->is_number_integer()) {
        const int b = v->get<int>();
        if (b == 1 || b == -1) return b;
    }
    r.errors().add("'" + key + "' must be \"+\", \"-\", 1, or -1");
    return +1;
}

std::optional<cplx> parse_component(const json& v) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cplx(v[0].get<double>(), v[1].get<double>());
    return std::nullopt;
}

struct InitialSpec {
    enum class Type { Gaussian, Branch, SingleSite } type = Type::Gaussian;
    double sigma = 0.0, sigma_k = 0.0, k0 = 0.0;
    int branch = +1;
    int site = 0;
    Vector2cd components{1.0, 1.0};
};

// Packet keys shared by flat-evolve and frw-evolve: exactly one of sigma
// (position-space gaussian) or sigma_k (single-branch momentum packet).
InitialSpec parse_packet_keys(ConfigReader& r) {
    InitialSpec spec;
    const bool has_sigma = r.has("sigma");
    const bool has_sigma_k = r.has("sigma_k");
    r.check(has_sigma != has_sigma_k,
            "specify exactly one of 'sigma' (gaussian packet) or 'sigma_k' (branch packet)");
    if (has_sigma) {
        spec.type = InitialSpec::Type::Gaussian;
        spec.sigma = r.number("sigma");
        r.check(spec.sigma > 0.0, "'sigma' must be > 0");
        spec.k0 = r.number("k0", 0.0);
        if (const json* comps = r.raw("components")) {
            bool ok = comps->is_array() && comps->size() == 2;
            if (ok) {
                const auto c1 = parse_component((*comps)[0]);
                const auto c2 = parse_component((*comps)[1]);
                ok = c1.has_value() && c2.has_value();
                if (ok) spec.components = Vector2cd(*c1, *c2);
            }
            r.check(ok, "'components' must be [c1, c2] with entries <number> or [re, im]");
            r.check(!ok || spec.components.norm() > 0.0, "'components' must not be zero");
        }
        if (r.has("branch"))
            r.errors().add("'branch' applies only to branch packets (use 'sigma_k')");
        r.raw("branch");
    } else if (has_sigma_k) {
        spec.type = InitialSpec::Type::Branch;
        spec.sigma_k = r.number("sigma_k");
        r.check(spec.sigma_k > 0.0, "'sigma_k' must be > 0");
        spec.k0 = r.number("k0", 0.0);
        spec.branch = parse_branch(r, "branch");
        if (r.has("components"))
            r.errors().add("'components' applies only to gaussian packets (use 'sigma')");
        r.raw("components");
    }
    return spec;
}

SpinorGrid build_packet(const InitialSpec& spec, double L, int N, double mass) {
    if (spec.type == InitialSpec::Type::Gaussian)
        return gaussian_position_packet(L, N, spec.sigma, spec.components, spec.k0);
    return branch_packet(L, N, spec.sigma_k, spec.k0, spec.branch, mass);
}

VectorXd sample_times(double t_max, double dt) {
    const int n = static_cast<int>(std::llround(t_max / dt));
    VectorXd t(n + 1);
    for (int i = 0; i <= n; ++i) t(i) = i * dt;
    return t;
}

// ---------------------------------------------------------------------------
// evolution output writing (shared by flat-evolve and frw-evolve)

struct EvolveOutputs {
    std::vector<std::string> files;
};

struct DensityRecorder {
    int stride = 10;
    bool want_pgm = false;
    io::Table density{{"t", "x", "psi1_sq", "psi2_sq", "psi_sq"}, {}};
    std::vector<std::vector<double>> pgm_rows;

    void operator()(int idx, double t, const SpinorGrid& g) {
        if (want_pgm) {
            std::vector<double> row(g.N);
            for (int j = 0; j < g.N; ++j)
                row[j] = std::sqrt(std::norm(g.c1(j)) + std::norm(g.c2(j)));
            pgm_rows.push_back(std::move(row));
        }
        if (idx % stride != 0) return;
        for (int j = 0; j < g.N; ++j) {
            const double p1 = std::norm(g.c1(j));
            const double p2 = std::norm(g.c2(j));
            density.rows.push_back({t, g.x(j), p1, p2, p1 + p2});
        }
    }

    Eigen::MatrixXd pgm_matrix() const {
        const int rows = static_cast<int>(pgm_rows.size());
        const int cols = rows ? static_cast<int>(pgm_rows.front().size()) : 0;
        Eigen::MatrixXd m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m(r, c) = pgm_rows[r][c];
        return m;
    }
};

void write_observables(const Trajectory& traj, const fs::path& dir, const std::string& rel,
                       EvolveOutputs& out) {
    io::Table obs{{"t", "mean_x", "norm", "pos_fraction", "neg_fraction"}, {}};
    for (int i = 0; i < traj.t.size(); ++i)
        obs.rows.push_back({traj.t(i), traj.mean_x(i), traj.norm(i), traj.pos_frac(i),
                            traj.neg_frac(i)});
    io::write_csv(obs, (dir / "observables.csv").string());
    out.files.push_back(rel + "observables.csv");
}

// Detrended fixed-frequency demodulation over whole cycles inside [t_lo, t_hi].
std::optional<double> window_amplitude(const VectorXd& t, const VectorXd& x, double t_lo,
                                       double t_hi, double omega) {
    std::vector<double> tw, xw;
    for (int i = 0; i < t.size(); ++i)
        if (t(i) >= t_lo && t(i) <= t_hi) {
            tw.push_back(t(i) - t_lo);
            xw.push_back(x(i));
        }
    if (tw.size() < 8) return std::nullopt;
    const double cycles = std::floor((tw.back() - tw.front()) * omega / (2.0 * pi));
    if (cycles < 1.0) return std::nullopt;
    VectorXd tv = Eigen::Map<const VectorXd>(tw.data(), static_cast<long>(tw.size()));
    VectorXd xv = Eigen::Map<const VectorXd>(xw.data(), static_cast<long>(xw.size()));
    const VectorXd d = detrend_linear(tv, xv);
    return demod_amplitude(tv, d, omega, cycles);
}

// ---------------------------------------------------------------------------
// subcommand: flat-evolve / frw-evolve

struct EvolveCli {
    std::string config_source;
    std::vector<std::string> overrides;
    std::string outdir_flag;
};

int run_evolve(const EvolveCli& args, bool frw) {
    const auto t_start = std::chrono::steady_clock::now();
    json cfg = load_config(args.config_source);
    for (const auto& kv : args.overrides) apply_override(cfg, kv);
    if (!args.outdir_flag.empty()) cfg["outdir"] = args.outdir_flag;

    ErrorList errs;
    ConfigReader r(cfg, "", errs);

    const bool sweep = r.has("masses");
    std::vector<double> masses;
    if (sweep) {
        if (r.has("mass")) errs.add("specify either 'mass' or 'masses', not both");
        r.raw("mass");
        masses = r.number_list("masses");
        for (double m : masses)
            r.check(m >= 0.0, "'masses' entries must be >= 0");
        r.check(!masses.empty(), "'masses' must not be empty");
    } else {
        masses.push_back(r.number("mass"));
        r.check(masses.back() >= 0.0, "'mass' must be >= 0");
    }

    const double L = r.number("L", 200.0);
    r.check(L > 0.0, "'L' must be > 0");
    const int N = r.integer("N", 1024);
    r.check(N >= 2 && is_pow2(N), "'N' must be a power of two >= 2");
    const double t_max = r.number("t_max");
    r.check(t_max > 0.0, "'t_max' must be > 0");
    const double dt = r.number("dt", 0.02);
    r.check(dt > 0.0 && dt <= t_max, "'dt' must satisfy 0 < dt <= t_max");
    const int stride = r.integer("density_stride", 10);
    r.check(stride >= 1, "'density_stride' must be >= 1");
    const bool want_pgm = r.boolean("pgm", false);
    const bool want_density = r.boolean("density", true);
    const std::string outdir = r.text("outdir", std::string("out"));
    r.integer("seed", 12345);

    InitialSpec init = parse_packet_keys(r);

    ConformalProfile profile = constant_profile(1.0);
    double dt_int = 0.0;
    if (frw) {
        profile = parse_profile(r.object("profile"), errs, /*spinor_use=*/true);
        dt_int = r.number("dt_int", 0.0);
        r.check(dt_int >= 0.0, "'dt_int' must be >= 0 (0 selects the default)");
        if (const json* prec = r.object("precision")) {
            ConfigReader pr(*prec, "precision.", errs);
            dt_int = pr.number("dt_int", dt_int);
            pr.finish();
        }
    } else {
        if (r.has("profile"))
            errs.add("'profile' belongs to frw-evolve; flat-evolve has constant mass");
        r.raw("profile");
        if (const json* prec = r.object("precision")) {
            ConfigReader pr(*prec, "precision.", errs);
            pr.finish();
        }
    }
    r.finish();
    errs.throw_if_any();

    ensure_outdir(outdir);
    const VectorXd times = sample_times(t_max, dt);
    EvolveOutputs out;
    io::Table zb_table{{"mass", "frequency", "amplitude", "no_zb"}, {}};

    for (double mass : masses) {
        const fs::path dir =
            sweep ? fs::path(outdir) / ("m" + nice_num(mass)) : fs::path(outdir);
        const std::string rel = sweep ? "m" + nice_num(mass) + "/" : "";
        if (sweep) ensure_outdir(dir.string());

        SpinorGrid g0 = build_packet(init, L, N, mass);
        DiracParams par{mass};
        DensityRecorder rec;
        rec.stride = stride;
        rec.want_pgm = want_pgm;
        GridObserver obs;
        if (want_density || want_pgm)
            obs = [&rec](int idx, double t, const SpinorGrid& g) { rec(idx, t, g); };

        Trajectory traj = frw ? evolve_frw(g0, par, profile, times, dt_int, obs)
                              : evolve_flat_sampled(g0, par, times, obs);
        print_warnings(traj.warnings);

        write_observables(traj, dir, rel, out);
        if (want_density) {
            io::write_csv(rec.density, (dir / "density.csv").string());
            out.files.push_back(rel + "density.csv");
        }
        if (want_pgm) {
            io::write_pgm(rec.pgm_matrix(), (dir / "density.pgm").string());
            out.files.push_back(rel + "density.pgm");
        }

        try {
            const ZbResult zb = zb_analysis(traj);
            zb_table.rows.push_back(
                {mass, zb.frequency, zb.amplitude, static_cast<double>(zb.no_zb)});
        } catch (const config_error& e) {
            std::cerr << "note: zb_analysis skipped for mass " << nice_num(mass) << ": "
                      << e.what() << "\n";
        }

        // Pre/post-excursion oscillation amplitudes around an inverted-
        // gaussian dip, demodulated at the asymptotic frequency 2m.
        if (frw && profile.kind == ConformalProfile::Kind::InvertedGaussian && mass > 0.0) {
            io::Table win{{"window", "t_lo", "t_hi", "omega", "amplitude"}, {}};
            const double edge = 3.0 * profile.width;
            const double omega = 2.0 * mass;
            const double pre_hi = profile.center - edge;
            const double post_lo = profile.center + edge;
            if (auto amp = window_amplitude(traj.t, traj.mean_x, 0.0, pre_hi, omega))
                win.rows.push_back({std::string("pre"), 0.0, pre_hi, omega, *amp});
            if (auto amp = window_amplitude(traj.t, traj.mean_x, post_lo, t_max, omega))
                win.rows.push_back({std::string("post"), post_lo, t_max, omega, *amp});
            if (!win.rows.empty()) {
                io::write_csv(win, (dir / "zb_windows.csv").string());
                out.files.push_back(rel + "zb_windows.csv");
            }
        }
    }

    if (!zb_table.rows.empty()) {
        io::write_csv(zb_table, (fs::path(outdir) / "zb_summary.csv").string());
        out.files.push_back("zb_summary.csv");
    }
    io::write_manifest(outdir, cfg, elapsed_since(t_start), out.files);
    return 0;
}

// ---------------------------------------------------------------------------
// subcommand: geometry-check

struct GeometryProbe {
    std::string family;
    geometry::Metric metric;
    std::function<geometry::Point(std::mt19937_64&)> sample;
};

geometry::ScalarFunction2D probe_omega(bool analytic) {
    geometry::ScalarFunction2D f;
    f.f = [](double t, double x) {
        return 1.0 + 0.3 * std::sin(0.6 * t - 0.4) + 0.2 * std::cos(0.8 * x + 0.1);
    };
    if (analytic) {
        f.df_dt = [](double t, double) { return 0.18 * std::cos(0.6 * t - 0.4); };
        f.df_dx = [](double, double x) { return -0.16 * std::sin(0.8 * x + 0.1); };
        f.d2f_dtt = [](double t, double) { return -0.108 * std::sin(0.6 * t - 0.4); };
        f.d2f_dxx = [](double, double x) { return -0.128 * std::cos(0.8 * x + 0.1); };
    }
    return f;
}

geometry::ScalarFunction1D probe_phi(bool analytic) {
    geometry::ScalarFunction1D f;
    f.f = [](double x) { return 0.4 * std::sin(0.5 * x + 0.2); };
    if (analytic) {
        f.df = [](double x) { return 0.2 * std::cos(0.5 * x + 0.2); };
        f.d2f = [](double x) { return -0.1 * std::sin(0.5 * x + 0.2); };
    }
    return f;
}

geometry::ScalarFunction1D probe_psi(bool analytic) {
    geometry::ScalarFunction1D f;
    f.f = [](double x) { return 0.3 * std::cos(0.7 * x) - 0.1; };
    if (analytic) {
        f.df = [](double x) { return -0.21 * std::sin(0.7 * x); };
        f.d2f = [](double x) { return -0.147 * std::cos(0.7 * x); };
    }
    return f;
}

geometry::ScalarFunction1D probe_scale(bool analytic) {
    geometry::ScalarFunction1D f;
    f.f = [](double t) { return 1.2 + 0.5 * std::sin(0.4 * t); };
    if (analytic) {
        f.df = [](double t) { return 0.2 * std::cos(0.4 * t); };
        f.d2f = [](double t) { return -0.08 * std::sin(0.4 * t); };
    }
    return f;
}

std::vector<GeometryProbe> geometry_probes(const std::string& which, bool analytic) {
    auto box = [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        const double t = u(rng);
        const double x = u(rng);
        return geometry::Point{t, x};
    };
    auto polar = [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(0.3, 2.5);
        std::uniform_real_distribution<double> v(-2.0, 2.0);
        std::uniform_int_distribution<int> s(0, 1);
        return geometry::Point{v(rng), (s(rng) ? 1.0 : -1.0) * u(rng)};
    };
    std::vector<GeometryProbe> all = {
        {"conformal", geometry::conformal_metric(probe_omega(analytic)), box},
        {"static", geometry::static_metric(probe_phi(analytic), probe_psi(analytic)), box},
        {"frw", geometry::frw_metric(probe_scale(analytic)), box},
        {"rindler_polar", geometry::rindler_polar_metric(), polar},
        {"rindler_conformal", geometry::rindler_conformal_metric(0.8), box},
    };
    if (which == "all") return all;
    for (auto& p : all)
        if (p.family == which) return {p};
    throw config_error("unknown metric family '" + which +
                       "' (expected conformal, static, frw, rindler_polar, "
                       "rindler_conformal, or all)");
}

int run_geometry_check(const std::string& which, int points, bool fd, unsigned long seed,
                       const std::string& outdir) {
    const auto t_start = std::chrono::steady_clock::now();
    if (points < 1) throw config_error("--points must be >= 1");
    ensure_outdir(outdir);
    std::mt19937_64 rng(seed);
    io::Table table{{"family", "t", "x", "object", "component", "value", "oracle", "abs_err"},
                    {}};

    for (const auto& probe : geometry_probes(which, !fd)) {
        for (int n = 0; n < points; ++n) {
            const geometry::Point p = probe.sample(rng);
            auto row = [&](const std::string& object, const std::string& comp, double value,
                           double oracle) {
                table.rows.push_back({probe.family, p.t, p.x, object, comp, value, oracle,
                                      std::abs(value - oracle)});
            };

            const auto gam = geometry::christoffel(probe.metric, p);
            const auto gam_cf = geometry::closed_form::christoffel(probe.metric, p);
            for (int s = 0; s < 2; ++s)
                for (int mu = 0; mu < 2; ++mu)
                    for (int nu = 0; nu < 2; ++nu)
                        row("christoffel",
                            "Gamma^" + std::to_string(s) + "_" + std::to_string(mu) +
                                std::to_string(nu),
                            gam[s][mu][nu], gam_cf[s][mu][nu]);

            const auto vb = geometry::vielbein(probe.metric, p);
            const auto vb_cf = geometry::closed_form::vielbein(probe.metric, p);
            for (int a = 0; a < 2; ++a)
                for (int mu = 0; mu < 2; ++mu) {
                    row("vielbein", "e^" + std::to_string(a) + "_" + std::to_string(mu),
                        vb.e[a][mu], vb_cf.e[a][mu]);
                    row("vielbein", "einv_" + std::to_string(a) + "^" + std::to_string(mu),
                        vb.e_inv[mu][a], vb_cf.e_inv[mu][a]);
                }

            const auto sc = geometry::spin_connection(probe.metric, p);
            const auto sc_cf = geometry::closed_form::spin_connection(probe.metric, p);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int nu = 0; nu < 2; ++nu)
                        row("spin_connection",
                            "omega^" + std::to_string(a) + "_" + std::to_string(b) +
                                std::to_string(nu),
                            sc[a][b][nu], sc_cf[a][b][nu]);

            const auto so = geometry::spinor_connection(probe.metric, p);
            const auto so_cf = geometry::closed_form::spinor_connection(probe.metric, p);
            for (int nu = 0; nu < 2; ++nu)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        const std::string base = "Omega_" + std::to_string(nu) + "[" +
                                                 std::to_string(i) + "][" + std::to_string(j) +
                                                 "]";
                        row("spinor_connection", base + ".re", so[nu](i, j).real(),
                            so_cf[nu](i, j).real());
                        row("spinor_connection", base + ".im", so[nu](i, j).imag(),
                            so_cf[nu](i, j).imag());
                    }

            row("ricci", "R", geometry::ricci_scalar(probe.metric, p),
                geometry::closed_form::ricci_scalar(probe.metric, p));
        }
    }

    io::write_csv(table, (fs::path(outdir) / "geometry_check.csv").string());
    json echo = {{"subcommand", "geometry-check"}, {"metric", which},  {"points", points},
                 {"fd", fd},                       {"seed", seed},     {"outdir", outdir}};
    io::write_manifest(outdir, echo, elapsed_since(t_start), {"geometry_check.csv"});
    return 0;
}

// ---------------------------------------------------------------------------
// subcommand: bogolyubov

struct BogolyubovCli {
    std::string config_source;
    std::vector<std::string> overrides;
    std::string outdir_flag;
    std::string profile_flag;
    std::optional<double> m, t0, depth, center, width, kmin, kmax, rtol;
    std::optional<int> nk;
};

int run_bogolyubov(const BogolyubovCli& args) {
    const auto t_start = std::chrono::steady_clock::now();
    json cfg = load_config(args.config_source);
    for (const auto& kv : args.overrides) apply_override(cfg, kv);
    if (!args.profile_flag.empty()) cfg["profile"] = args.profile_flag;
    auto set = [&cfg](const char* key, const auto& opt) {
        if (opt) cfg[key] = *opt;
    };
    set("m", args.m);
    set("t0", args.t0);
    set("depth", args.depth);
    set("center", args.center);
    set("width", args.width);
    set("kmin", args.kmin);
    set("kmax", args.kmax);
    set("nk", args.nk);
    set("rtol", args.rtol);
    if (!args.outdir_flag.empty()) cfg["outdir"] = args.outdir_flag;

    ErrorList errs;
    ConfigReader r(cfg, "", errs);
    const std::string kind = r.text("profile");
    const double m = r.number("m");
    r.check(m >= 0.0, "'m' must be >= 0");
    const double kmin = r.number("kmin");
    const double kmax = r.number("kmax");
    const int nk = r.integer("nk");
    r.check(nk >= 1, "'nk' must be >= 1");
    r.check(kmax >= kmin, "'kmax' must be >= 'kmin'");
    double rtol = r.number("rtol", 1e-11);
    r.check(rtol > 0.0 && rtol < 1e-2, "'rtol' must lie in (0, 1e-2)");
    if (const json* prec = r.object("precision")) {
        ConfigReader pr(*prec, "precision.", errs);
        rtol = pr.number("rtol", rtol);
        pr.finish();
    }
    const std::string outdir = r.text("outdir", std::string("out"));
    r.integer("seed", 12345);

    ConformalProfile prof;
    double t_in = 0.0, t_out = 0.0;
    bool analytic_available = false;
    if (kind == "squarehat") {
        const double t0 = r.number("t0");
        r.check(t0 >= 0.0, "'t0' must be >= 0");
        if (t0 >= 0.0) prof = squarehat_profile(t0);
        t_in = -1.0;
        t_out = t0 + 1.0;
        analytic_available = true;
        if (r.has("depth") || r.has("center") || r.has("width"))
            errs.add("'depth'/'center'/'width' belong to the gaussian profile");
        r.raw("depth");
        r.raw("center");
        r.raw("width");
    } else if (kind == "gaussian") {
        const double depth = r.number("depth");
        const double center = r.number("center", 0.0);
        const double width = r.number("width");
        r.check(depth > 0.0 && depth < 1.0, "'depth' must lie in (0, 1)");
        r.check(width > 0.0, "'width' must be > 0");
        if (depth > 0.0 && depth < 1.0 && width > 0.0)
            prof = inverted_gaussian_profile(depth, center, width);
        t_in = r.number("t_in", center - 25.0 * width);
        t_out = r.number("t_out", center + 25.0 * width);
        r.check(t_out > t_in, "'t_out' must be > 't_in'");
        if (r.has("t0")) errs.add("'t0' belongs to the squarehat profile");
        r.raw("t0");
    } else {
        errs.add("'profile' must be squarehat or gaussian, got '" + kind + "'");
    }
    if (m == 0.0) r.check(!(kmin <= 0.0 && kmax >= 0.0), "k = 0 with m = 0 has no mode (omega = 0); shift the k grid");
    r.finish();
    errs.throw_if_any();

    ensure_outdir(outdir);
    io::Table table{{"k", "re_alpha", "im_alpha", "re_beta", "im_beta", "n_k",
                     "n_k_analytic_if_available", "abs_err"},
                    {}};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < nk; ++i) {
        const double k = nk == 1 ? kmin : kmin + i * (kmax - kmin) / (nk - 1);
        if (k * k + m * m <= 0.0) continue;
        scalar::FrequencyProfile fp{k, m, prof};
        const auto pair = scalar::numeric_bogolyubov(fp, t_in, t_out, rtol);
        double nk_analytic = nan, abs_err = nan;
        if (analytic_available && std::abs(k - m) >= 1e-9) {
            const auto ana = scalar::analytic_squarehat(k, m, prof.t0);
            nk_analytic = scalar::particle_number(ana);
            abs_err = std::max(std::abs(pair.alpha - ana.alpha),
                               std::abs(pair.beta - ana.beta));
        }
        table.rows.push_back({k, pair.alpha.real(), pair.alpha.imag(), pair.beta.real(),
                              pair.beta.imag(), scalar::particle_number(pair), nk_analytic,
                              abs_err});
    }
    io::write_csv(table, (fs::path(outdir) / "spectrum.csv").string());
    io::write_manifest(outdir, cfg, elapsed_since(t_start), {"spectrum.csv"});
    return 0;
}

// ---------------------------------------------------------------------------
// subcommand: waveguide-evolve

int run_waveguide_evolve(const EvolveCli& args) {
    const auto t_start = std::chrono::steady_clock::now();
    json cfg = load_config(args.config_source);
    for (const auto& kv : args.overrides) apply_override(cfg, kv);
    if (!args.outdir_flag.empty()) cfg["outdir"] = args.outdir_flag;

    ErrorList errs;
    ConfigReader r(cfg, "", errs);

    std::vector<double> n_wg_list;
    for (double v : r.number_list("n_waveguides")) {
        const int n = static_cast<int>(std::llround(v));
        r.check(v == n && n >= 2 && n % 2 == 0,
                "'n_waveguides' entries must be even integers >= 2");
        n_wg_list.push_back(n);
    }
    const bool sweep = n_wg_list.size() > 1;

    const bool has_d = r.has("d"), has_kappa = r.has("kappa");
    r.check(has_d != has_kappa, "specify exactly one of 'd' or 'kappa' (kappa = 1/d)");
    std::vector<double> d_list;
    if (has_d) {
        for (double d : r.number_list("d")) {
            r.check(d > 0.0, "'d' must be > 0");
            d_list.push_back(d);
        }
        r.raw("kappa");
    } else if (has_kappa) {
        for (double kappa : r.number_list("kappa")) {
            r.check(kappa > 0.0, "'kappa' must be > 0");
            d_list.push_back(kappa > 0.0 ? 1.0 / kappa : 1.0);
        }
        r.raw("d");
    } else {
        r.raw("d");
        r.raw("kappa");
    }
    if (d_list.size() == 1 && n_wg_list.size() > 1)
        d_list.assign(n_wg_list.size(), d_list.front());
    r.check(d_list.size() == n_wg_list.size() || d_list.empty(),
            "'d'/'kappa' must be scalar or match the length of 'n_waveguides'");

    const double mass = r.number("mass");
    r.check(mass >= 0.0, "'mass' must be >= 0");
    const double z_max = r.number("z_max");
    r.check(z_max > 0.0, "'z_max' must be > 0");
    double dz = r.number("dz", 0.0);
    r.check(dz >= 0.0, "'dz' must be >= 0 (0 selects the default 0.0025/kappa)");
    const double sample_dz = r.number("sample_dz", z_max / 300.0);
    r.check(sample_dz > 0.0 && sample_dz <= z_max,
            "'sample_dz' must satisfy 0 < sample_dz <= z_max");
    if (const json* prec = r.object("precision")) {
        ConfigReader pr(*prec, "precision.", errs);
        dz = pr.number("dz", dz);
        pr.finish();
    }
    const std::string boundary = r.text("boundary", std::string("open"));
    r.check(boundary == "open" || boundary == "periodic",
            "'boundary' must be open or periodic");
    const ConformalProfile profile = parse_profile(r.object("profile"), errs, true);
    const std::string outdir = r.text("outdir", std::string("out"));
    r.integer("seed", 12345);

    InitialSpec init;
    if (const json* init_obj = r.object("initial")) {
        ConfigReader ir(*init_obj, "initial.", errs);
        const std::string type = ir.text("type");
        if (type == "gaussian") {
            init.type = InitialSpec::Type::Gaussian;
            init.sigma = ir.number("sigma");
            ir.check(init.sigma > 0.0, "'initial.sigma' must be > 0");
            init.k0 = ir.number("k0", 0.0);
            if (const json* comps = ir.raw("components")) {
                bool ok = comps->is_array() && comps->size() == 2;
                if (ok) {
                    const auto c1 = parse_component((*comps)[0]);
                    const auto c2 = parse_component((*comps)[1]);
                    ok = c1.has_value() && c2.has_value();
                    if (ok) init.components = Vector2cd(*c1, *c2);
                }
                ir.check(ok, "'initial.components' must be [c1, c2]");
            }
        } else if (type == "branch") {
            init.type = InitialSpec::Type::Branch;
            init.sigma_k = ir.number("sigma_k");
            ir.check(init.sigma_k > 0.0, "'initial.sigma_k' must be > 0");
            init.k0 = ir.number("k0", 0.0);
            init.branch = parse_branch(ir, "branch");
        } else if (type == "single_site") {
            init.type = InitialSpec::Type::SingleSite;
            init.site = ir.integer("site");
        } else {
            errs.add("'initial.type' must be gaussian, branch, or single_site");
        }
        ir.finish();
    } else {
        errs.add("missing required key 'initial'");
    }

    const bool compare_continuum = r.boolean("compare_continuum", false);
    double cont_L = 0.0;
    int cont_N = 1024;
    double cont_dt_int = 0.0;
    if (const json* cont = r.object("continuum")) {
        ConfigReader cr(*cont, "continuum.", errs);
        cont_L = cr.number("L", 0.0);
        cont_N = cr.integer("N", 1024);
        cr.check(cont_N >= 2 && is_pow2(cont_N), "'continuum.N' must be a power of two");
        cont_dt_int = cr.number("dt_int", 0.0);
        cr.finish();
        if (!compare_continuum)
            errs.add("'continuum' settings require 'compare_continuum': true");
    }
    if (compare_continuum && init.type == InitialSpec::Type::SingleSite)
        errs.add("'compare_continuum' has no continuum analog of a single_site input");
    r.finish();
    errs.throw_if_any();

    ensure_outdir(outdir);
    std::vector<std::string> files;
    io::Table report{{"n_waveguides", "kappa", "packet_width", "max_abs", "rms", "rel_max",
                      "rel_rms"},
                     {}};

    std::vector<double> z_grid;
    for (int i = 0;; ++i) {
        const double z = i * sample_dz;
        if (z > z_max + 1e-12 * z_max) break;
        z_grid.push_back(std::min(z, z_max));
    }
    if (z_grid.back() < z_max) z_grid.push_back(z_max);

    for (std::size_t run = 0; run < n_wg_list.size(); ++run) {
        const int n_wg = static_cast<int>(n_wg_list[run]);
        const double d = d_list[run];
        const fs::path dir =
            sweep ? fs::path(outdir) / ("n" + std::to_string(n_wg)) : fs::path(outdir);
        const std::string rel = sweep ? "n" + std::to_string(n_wg) + "/" : "";
        if (sweep) ensure_outdir(dir.string());

        waveguide::WaveguideState w0;
        double packet_width = 1.0;
        switch (init.type) {
            case InitialSpec::Type::Gaussian:
                w0 = waveguide::lattice_gaussian_packet(n_wg, d, init.sigma,
                                                        init.components(0),
                                                        init.components(1), init.k0);
                packet_width = init.sigma;
                break;
            case InitialSpec::Type::Branch:
                w0 = waveguide::lattice_branch_packet(n_wg, d, init.sigma_k, init.k0,
                                                      init.branch, mass);
                packet_width = 1.0 / init.sigma_k;
                break;
            case InitialSpec::Type::SingleSite: {
                const int site = init.site > 0 ? init.site : n_wg / 2;
                w0 = waveguide::single_site_state(n_wg, d, site);
                break;
            }
        }

        waveguide::DetuningProfile det;
        det.mass = mass;
        det.profile = profile;
        waveguide::PropagateOptions opt;
        opt.dz = dz;
        opt.periodic = boundary == "periodic";
        const auto traj = waveguide::propagate(w0, det, z_grid, opt);
        print_warnings(traj.warnings);

        io::Table lattice{{"z", "l", "re_c", "im_c", "abs_c"}, {}};
        for (std::size_t s = 0; s < traj.z.size(); ++s)
            for (int l = 1; l <= n_wg; ++l) {
                const cplx c = traj.snapshots[s](l - 1);
                lattice.rows.push_back(
                    {traj.z[s], static_cast<double>(l), c.real(), c.imag(), std::abs(c)});
            }
        io::write_csv(lattice, (dir / "lattice.csv").string());
        files.push_back(rel + "lattice.csv");

        io::Table obs{{"z", "mean_x", "power"}, {}};
        for (std::size_t s = 0; s < traj.z.size(); ++s)
            obs.rows.push_back({traj.z[s], traj.mean_x[s], traj.power[s]});
        io::write_csv(obs, (dir / "lattice_observables.csv").string());
        files.push_back(rel + "lattice_observables.csv");

        io::write_pgm(waveguide::intensity_map(traj), (dir / "lattice.pgm").string());
        files.push_back(rel + "lattice.pgm");

        if (compare_continuum) {
            const double L = cont_L > 0.0 ? cont_L : 0.5 * n_wg * d;
            SpinorGrid g0 = build_packet(init, L, cont_N, mass);
            DiracParams par{mass};
            VectorXd times(static_cast<long>(z_grid.size()));
            for (std::size_t i = 0; i < z_grid.size(); ++i)
                times(static_cast<long>(i)) = z_grid[i];
            const bool flat = profile.kind == ConformalProfile::Kind::Constant &&
                              profile.omega0 == 1.0;
            Trajectory cont_traj = flat
                                       ? evolve_flat_sampled(g0, par, times)
                                       : evolve_frw(g0, par, profile, times, cont_dt_int);
            print_warnings(cont_traj.warnings);

            std::vector<double> ct(cont_traj.t.data(),
                                   cont_traj.t.data() + cont_traj.t.size());
            std::vector<double> cx(cont_traj.mean_x.data(),
                                   cont_traj.mean_x.data() + cont_traj.mean_x.size());
            const auto rep = io::compare(traj.z, traj.mean_x, ct, cx, packet_width);
            report.rows.push_back({static_cast<double>(n_wg), 1.0 / d, packet_width,
                                   rep.max_abs, rep.rms, rep.rel_max, rep.rel_rms});

            io::Table cont_obs{{"z", "mean_x", "norm"}, {}};
            for (int i = 0; i < cont_traj.t.size(); ++i)
                cont_obs.rows.push_back(
                    {cont_traj.t(i), cont_traj.mean_x(i), cont_traj.norm(i)});
            io::write_csv(cont_obs, (dir / "continuum_observables.csv").string());
            files.push_back(rel + "continuum_observables.csv");
        }
    }

    if (!report.rows.empty()) {
        io::write_csv(report, (fs::path(outdir) / "report.csv").string());
        files.push_back("report.csv");
    }
    io::write_manifest(outdir, cfg, elapsed_since(t_start), files);
    return 0;
}

// ---------------------------------------------------------------------------
// subcommand: compare

int run_compare(const std::string& path_a, const std::string& path_b,
                const std::string& col, double packet_width, const std::string& outdir) {
    const auto t_start = std::chrono::steady_clock::now();
    ensure_outdir(outdir);
    const auto csv_a = io::read_csv(path_a);
    const auto csv_b = io::read_csv(path_b);
    if (csv_a.header.empty() || csv_b.header.empty())
        throw config_error("compare inputs need a header row");
    const auto ta = io::column(csv_a, csv_a.header.front());
    const auto va = io::column(csv_a, col);
    const auto tb = io::column(csv_b, csv_b.header.front());
    const auto vb = io::column(csv_b, col);
    const auto rep = io::compare(ta, va, tb, vb, packet_width);

    io::Table table{{"column", "packet_width", "n_points", "overlap_lo", "overlap_hi",
                     "max_abs", "rms", "rel_max", "rel_rms"},
                    {}};
    table.rows.push_back({col, packet_width, static_cast<double>(rep.n_points),
                          rep.overlap_lo, rep.overlap_hi, rep.max_abs, rep.rms, rep.rel_max,
                          rep.rel_rms});
    io::write_csv(table, (fs::path(outdir) / "report.csv").string());
    json echo = {{"subcommand", "compare"}, {"a", path_a},
                 {"b", path_b},             {"column", col},
                 {"packet_width", packet_width}, {"outdir", outdir}};
    io::write_manifest(outdir, echo, elapsed_since(t_start), {"report.csv"});
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{
        "dirac2d: Dirac wave packets in 1+1D curved spacetime, scalar pair "
        "creation, and binary waveguide arrays (natural units hbar = c = 1; "
        "lengths and times in units of 1/m unless stated)"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    // geometry-check
    auto* geo = app.add_subcommand(
        "geometry-check",
        "Evaluate Christoffel symbols, vielbein, spin connection, and Ricci "
        "scalar on random probe points and compare with the per-family closed forms");
    std::string geo_metric = "all";
    int geo_points = 20;
    bool geo_fd = false;
    unsigned long geo_seed = 12345;
    std::string geo_outdir = "out";
    geo->add_option("--metric", geo_metric,
                    "Metric family: conformal|static|frw|rindler_polar|rindler_conformal|all")
        ->capture_default_str();
    geo->add_option("--points", geo_points, "Random probe points per family")
        ->capture_default_str();
    geo->add_flag("--fd", geo_fd,
                  "Drop analytic profile derivatives and exercise the finite-difference path");
    geo->add_option("--seed", geo_seed, "RNG seed for probe points")->capture_default_str();
    geo->add_option("--outdir", geo_outdir, "Output directory")->capture_default_str();

    // flat-evolve / frw-evolve
    EvolveCli flat_args, frw_args;
    auto add_evolve_opts = [](CLI::App* cmd, EvolveCli& args, const char* what) {
        cmd->add_option("--config", args.config_source,
                        std::string("JSON config for ") + what + " ('-' reads stdin)");
        cmd->add_option("--set", args.overrides,
                        "Override a config key, e.g. --set mass=2 or --set profile.depth=0.5");
        cmd->add_option("--outdir", args.outdir_flag, "Output directory (overrides config)");
    };
    auto* flat = app.add_subcommand(
        "flat-evolve",
        "Exact flat-spacetime evolution of a spinor packet. Config keys: mass (>=0) or "
        "masses [..] for a sweep, L (domain length, default 200), N (grid points, power "
        "of two, default 1024), t_max, dt (sample spacing, default 0.02), sigma+components"
        "+k0 (gaussian packet) or sigma_k+k0+branch (branch packet), density (bool), "
        "density_stride, pgm (bool), outdir, seed");
    add_evolve_opts(flat, flat_args, "flat-evolve");
    auto* frw = app.add_subcommand(
        "frw-evolve",
        "FRW evolution with m_eff(t) = Omega(t) m. Flat-evolve keys plus profile{kind: "
        "constant|inverted_gaussian, omega0 | depth+center+width} and dt_int (internal "
        "stepper interval, default 0.01/max E_k)");
    add_evolve_opts(frw, frw_args, "frw-evolve");

    // bogolyubov
    BogolyubovCli bog_args;
    auto* bog = app.add_subcommand(
        "bogolyubov",
        "Scalar-field Bogolyubov coefficients over a k grid: squarehat (exact matching "
        "+ closed form) or gaussian Omega(t) dip (adaptive integration)");
    bog->add_option("--config", bog_args.config_source, "JSON config ('-' reads stdin)");
    bog->add_option("--set", bog_args.overrides, "Override a config key");
    bog->add_option("--profile", bog_args.profile_flag, "squarehat or gaussian");
    bog->add_option("--m", bog_args.m, "Field mass (>= 0)");
    bog->add_option("--t0", bog_args.t0, "Square-hat duration (squarehat only)");
    bog->add_option("--depth", bog_args.depth, "Gaussian dip depth in (0, 1)");
    bog->add_option("--center", bog_args.center, "Gaussian dip center time");
    bog->add_option("--width", bog_args.width, "Gaussian dip width (> 0)");
    bog->add_option("--kmin", bog_args.kmin, "Lowest wavenumber");
    bog->add_option("--kmax", bog_args.kmax, "Highest wavenumber");
    bog->add_option("--nk", bog_args.nk, "Number of k samples");
    bog->add_option("--rtol", bog_args.rtol, "Integrator relative tolerance");
    bog->add_option("--outdir", bog_args.outdir_flag, "Output directory (overrides config)");

    // waveguide-evolve
    EvolveCli wg_args;
    auto* wg = app.add_subcommand(
        "waveguide-evolve",
        "Binary waveguide array propagation (z plays the role of t). Config keys: "
        "n_waveguides (even, scalar or array sweep), d or kappa (= 1/d, scalar or array), "
        "mass, profile{..} (detuning sigma(z) = mass Omega(z)), z_max, dz (default "
        "0.0025/kappa), sample_dz, boundary (open|periodic), initial{type: gaussian|"
        "branch|single_site, ...}, compare_continuum (bool), continuum{L, N, dt_int}, "
        "outdir, seed");
    add_evolve_opts(wg, wg_args, "waveguide-evolve");

    // compare
    std::string cmp_a, cmp_b, cmp_col = "mean_x", cmp_outdir = "out";
    double cmp_width = 1.0;
    auto* cmp = app.add_subcommand(
        "compare", "Overlay two observable CSV series (abscissa = first column) and "
                   "report deviation metrics");
    cmp->add_option("--a", cmp_a, "First CSV file")->required();
    cmp->add_option("--b", cmp_b, "Second CSV file")->required();
    cmp->add_option("--column", cmp_col, "Observable column name")->capture_default_str();
    cmp->add_option("--packet-width", cmp_width,
                    "Packet width for the relative deviation metrics")
        ->capture_default_str();
    cmp->add_option("--outdir", cmp_outdir, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (geo->parsed())
            return run_geometry_check(geo_metric, geo_points, geo_fd, geo_seed, geo_outdir);
        if (flat->parsed()) return run_evolve(flat_args, /*frw=*/false);
        if (frw->parsed()) return run_evolve(frw_args, /*frw=*/true);
        if (bog->parsed()) return run_bogolyubov(bog_args);
        if (wg->parsed()) return run_waveguide_evolve(wg_args);
        if (cmp->parsed()) return run_compare(cmp_a, cmp_b, cmp_col, cmp_width, cmp_outdir);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace dirac2d::cli
