#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirac2d/cli.hpp"
#include "dirac2d/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct StreamCapture {
    std::ostringstream out, err;
    std::streambuf* old_out;
    std::streambuf* old_err;
    StreamCapture()
        : old_out(std::cout.rdbuf(out.rdbuf())),
          old_err(std::cerr.rdbuf(err.rdbuf())) {}
    ~StreamCapture() {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
    }
};

int run_cli(const std::vector<std::string>& args, std::string* err_text = nullptr) {
    std::vector<const char*> argv;
    argv.push_back("dirac2d");
    for (const auto& a : args) argv.push_back(a.c_str());
    StreamCapture cap;
    const int rc = dirac2d::cli::run(static_cast<int>(argv.size()), argv.data());
    if (err_text) *err_text = cap.err.str();
    return rc;
}

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("dirac2d_cli_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write_config(const fs::path& dir, const json& cfg) {
    const fs::path p = dir / "config.json";
    std::ofstream out(p);
    out << cfg.dump(2) << "\n";
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

json flat_config() {
    return json{{"mass", 1.0},   {"t_max", 26.0},        {"dt", 0.02},
                {"sigma", 3.0},  {"components", {1, 1}}, {"L", 200.0},
                {"N", 256},      {"density", false}};
}

}  // namespace

TEST_CASE("invalid configuration lists every violation at once") {
    const fs::path dir = temp_dir("badkeys");
    json cfg = flat_config();
    cfg["N"] = 7;
    cfg["bogus"] = 1;
    cfg.erase("mass");
    const fs::path cfg_path = write_config(dir, cfg);
    std::string err;
    const int rc = run_cli({"flat-evolve", "--config", cfg_path.string(),
                            "--outdir", (dir / "out").string()},
                           &err);
    CHECK(rc == 1);
    CHECK(err.find("'N'") != std::string::npos);
    CHECK(err.find("bogus") != std::string::npos);
    CHECK(err.find("mass") != std::string::npos);
}

TEST_CASE("mass and masses are mutually exclusive") {
    const fs::path dir = temp_dir("sweepclash");
    json cfg = flat_config();
    cfg["masses"] = {1.0, 2.0};
    std::string err;
    const int rc = run_cli({"flat-evolve", "--config",
                            write_config(dir, cfg).string(), "--outdir",
                            (dir / "out").string()},
                           &err);
    CHECK(rc == 1);
    CHECK(err.find("not both") != std::string::npos);
}

TEST_CASE("profile is rejected outside frw evolution") {
    const fs::path dir = temp_dir("flatprofile");
    json cfg = flat_config();
    cfg["profile"] = {{"kind", "constant"}};
    std::string err;
    const int rc = run_cli({"flat-evolve", "--config",
                            write_config(dir, cfg).string(), "--outdir",
                            (dir / "out").string()},
                           &err);
    CHECK(rc == 1);
    CHECK(err.find("frw-evolve") != std::string::npos);
}

TEST_CASE("flat evolution produces hashed artifacts") {
    const fs::path dir = temp_dir("flatrun");
    const fs::path out = dir / "out";
    const int rc = run_cli({"flat-evolve", "--config",
                            write_config(dir, flat_config()).string(),
                            "--outdir", out.string()});
    REQUIRE(rc == 0);
    CHECK(fs::exists(out / "observables.csv"));
    CHECK(fs::exists(out / "zb_summary.csv"));
    REQUIRE(fs::exists(out / "manifest.json"));

    const json manifest = json::parse(slurp(out / "manifest.json"));
    CHECK(manifest["config"]["mass"] == 1.0);
    bool found = false;
    for (const auto& f : manifest["files"]) {
        if (f["name"] != "observables.csv") continue;
        found = true;
        char hex[20];
        std::snprintf(hex, sizeof(hex), "0x%016llx",
                      static_cast<unsigned long long>(dirac2d::io::fnv1a64_file(
                          (out / "observables.csv").string())));
        CHECK(f["fnv1a64"] == hex);
    }
    CHECK(found);

    SUBCASE("repeat runs are byte identical") {
        const fs::path out2 = dir / "out2";
        REQUIRE(run_cli({"flat-evolve", "--config",
                         write_config(dir, flat_config()).string(), "--outdir",
                         out2.string()}) == 0);
        CHECK(slurp(out / "observables.csv") == slurp(out2 / "observables.csv"));
        CHECK(slurp(out / "zb_summary.csv") == slurp(out2 / "zb_summary.csv"));
    }
}

TEST_CASE("set overrides rewrite config keys") {
    const fs::path dir = temp_dir("override");
    const fs::path out = dir / "out";
    const int rc = run_cli({"flat-evolve", "--config",
                            write_config(dir, flat_config()).string(), "--set",
                            "mass=2", "--set", "N=128", "--outdir", out.string()});
    REQUIRE(rc == 0);
    const json manifest = json::parse(slurp(out / "manifest.json"));
    CHECK(manifest["config"]["mass"] == 2.0);
    CHECK(manifest["config"]["N"] == 128);
}

TEST_CASE("config can be read from stdin") {
    const fs::path dir = temp_dir("stdin");
    const fs::path out = dir / "out";
    std::istringstream feed(flat_config().dump());
    std::streambuf* old = std::cin.rdbuf(feed.rdbuf());
    const int rc = run_cli({"flat-evolve", "--config", "-", "--outdir", out.string()});
    std::cin.rdbuf(old);
    CHECK(rc == 0);
    CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("mass sweep writes per-mass subdirectories") {
    const fs::path dir = temp_dir("sweep");
    const fs::path out = dir / "out";
    json cfg = flat_config();
    cfg.erase("mass");
    cfg["masses"] = {1.0, 2.0};
    const int rc = run_cli({"flat-evolve", "--config",
                            write_config(dir, cfg).string(), "--outdir",
                            out.string()});
    REQUIRE(rc == 0);
    CHECK(fs::exists(out / "m1" / "observables.csv"));
    CHECK(fs::exists(out / "m2" / "observables.csv"));
    const auto csv = dirac2d::io::read_csv((out / "zb_summary.csv").string());
    CHECK(csv.rows.size() == 2);
    const auto freq = dirac2d::io::column(csv, "frequency");
    CHECK(std::abs(freq[0] - 2.0) <= 0.1);
    CHECK(std::abs(freq[1] - 4.0) <= 0.2);
}

TEST_CASE("frw evolution writes window amplitudes") {
    const fs::path dir = temp_dir("frw");
    const fs::path out = dir / "out";
    const json cfg{{"mass", 1.0},
                   {"t_max", 30.0},
                   {"dt", 0.05},
                   {"sigma_k", 0.3536},
                   {"k0", 0.1},
                   {"branch", "-"},
                   {"L", 40.0},
                   {"N", 64},
                   {"density", false},
                   {"profile",
                    {{"kind", "inverted_gaussian"},
                     {"depth", 0.5},
                     {"center", 6.0},
                     {"width", 0.8}}}};
    const int rc = run_cli({"frw-evolve", "--config",
                            write_config(dir, cfg).string(), "--outdir",
                            out.string()});
    REQUIRE(rc == 0);
    CHECK(fs::exists(out / "observables.csv"));
    REQUIRE(fs::exists(out / "zb_windows.csv"));
    const auto win = dirac2d::io::read_csv((out / "zb_windows.csv").string());
    REQUIRE(win.rows.size() == 2);
    CHECK(win.rows[0][0] == "pre");
    CHECK(win.rows[1][0] == "post");
    const auto amp = dirac2d::io::column(win, "amplitude");
    CHECK(amp[1] > amp[0]);
}

TEST_CASE("bogolyubov spectrum cross-checks the closed form") {
    const fs::path dir = temp_dir("bog");
    const fs::path out = dir / "out";
    const int rc = run_cli({"bogolyubov", "--profile", "squarehat", "--m", "1",
                            "--t0", "1", "--kmin", "0.2", "--kmax", "4",
                            "--nk", "12", "--outdir", out.string()});
    REQUIRE(rc == 0);
    const auto csv = dirac2d::io::read_csv((out / "spectrum.csv").string());
    REQUIRE(csv.rows.size() == 12);
    for (double e : dirac2d::io::column(csv, "abs_err")) CHECK(e <= 1e-6);
    const auto nk = dirac2d::io::column(csv, "n_k");
    for (double v : nk) CHECK(v >= 0.0);
}

TEST_CASE("waveguide run with continuum comparison") {
    const fs::path dir = temp_dir("wg");
    const fs::path out = dir / "out";
    const json cfg{{"n_waveguides", 50},
                   {"kappa", 0.63},
                   {"mass", 1.0},
                   {"z_max", 3.0},
                   {"sample_dz", 0.1},
                   {"profile", {{"kind", "constant"}}},
                   {"initial",
                    {{"type", "gaussian"}, {"sigma", 3.0}, {"components", {1, 1}}}},
                   {"compare_continuum", true},
                   {"continuum", {{"L", 200.0}, {"N", 256}}}};
    const int rc = run_cli({"waveguide-evolve", "--config",
                            write_config(dir, cfg).string(), "--outdir",
                            out.string()});
    REQUIRE(rc == 0);
    CHECK(fs::exists(out / "lattice.csv"));
    CHECK(fs::exists(out / "lattice_observables.csv"));
    CHECK(fs::exists(out / "continuum_observables.csv"));
    REQUIRE(fs::exists(out / "report.csv"));
    const auto rep = dirac2d::io::read_csv((out / "report.csv").string());
    REQUIRE(rep.rows.size() == 1);
    CHECK(dirac2d::io::column(rep, "rel_rms")[0] <= 0.05);

    SUBCASE("single-site input has no continuum analog") {
        json bad = cfg;
        bad["initial"] = {{"type", "single_site"}, {"site", 25}};
        std::string err;
        CHECK(run_cli({"waveguide-evolve", "--config",
                       write_config(dir, bad).string(), "--outdir",
                       (dir / "out_bad").string()},
                      &err) == 1);
        CHECK(err.find("continuum") != std::string::npos);
    }
}

TEST_CASE("numerical failures exit with code 2") {
    const fs::path dir = temp_dir("drift");
    const json cfg{{"n_waveguides", 16},
                   {"kappa", 1.0},
                   {"mass", 0.0},
                   {"z_max", 3.0},
                   {"sample_dz", 3.0},
                   {"precision", {{"dz", 0.6}}},
                   {"profile", {{"kind", "constant"}}},
                   {"initial", {{"type", "single_site"}, {"site", 8}}}};
    std::string err;
    const int rc = run_cli({"waveguide-evolve", "--config",
                            write_config(dir, cfg).string(), "--outdir",
                            (dir / "out").string()},
                           &err);
    CHECK(rc == 2);
    CHECK(err.find("numerical error") != std::string::npos);
}

TEST_CASE("geometry check writes closed-form deviations") {
    const fs::path dir = temp_dir("geo");
    const fs::path out = dir / "out";
    const int rc = run_cli({"geometry-check", "--points", "3", "--outdir",
                            out.string()});
    REQUIRE(rc == 0);
    const auto csv = dirac2d::io::read_csv((out / "geometry_check.csv").string());
    CHECK(!csv.rows.empty());
    for (double e : dirac2d::io::column(csv, "abs_err")) CHECK(e <= 1e-6);
}

TEST_CASE("compare subcommand reports series deviations") {
    const fs::path dir = temp_dir("cmp");
    json cfg = flat_config();
    REQUIRE(run_cli({"flat-evolve", "--config", write_config(dir, cfg).string(),
                     "--outdir", (dir / "a").string()}) == 0);
    cfg["N"] = 512;
    REQUIRE(run_cli({"flat-evolve", "--config", write_config(dir, cfg).string(),
                     "--outdir", (dir / "b").string()}) == 0);
    const int rc = run_cli({"compare", "--a",
                            (dir / "a" / "observables.csv").string(), "--b",
                            (dir / "b" / "observables.csv").string(), "--column",
                            "mean_x", "--packet-width", "3", "--outdir",
                            (dir / "out").string()});
    REQUIRE(rc == 0);
    const auto rep = dirac2d::io::read_csv((dir / "out" / "report.csv").string());
    REQUIRE(rep.rows.size() == 1);
    CHECK(dirac2d::io::column(rep, "rel_rms")[0] <= 1e-6);
}

TEST_CASE("usage errors and version flag") {
    CHECK(run_cli({"--version"}) == 0);
    CHECK(run_cli({"no-such-command"}) == 1);
    CHECK(run_cli({}) != 0);
}
