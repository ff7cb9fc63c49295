#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirac2d/common.hpp"
#include "dirac2d/io.hpp"

using namespace dirac2d;
using namespace dirac2d::io;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("dirac2d_io_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("csv writing and parsing") {
    const fs::path dir = temp_dir("csv");
    SUBCASE("empty table writes only the header") {
        Table t{{"a", "b"}, {}};
        write_csv(t, (dir / "empty.csv").string());
        CHECK(slurp(dir / "empty.csv") == "a,b\n");
        const ParsedCsv back = read_csv((dir / "empty.csv").string());
        CHECK(back.header == std::vector<std::string>{"a", "b"});
        CHECK(back.rows.empty());
    }
    SUBCASE("numeric cells survive a round trip to 12 significant digits") {
        const std::vector<double> vals{0.0,
                                       1.0,
                                       -1.0 / 3.0,
                                       6.02214076e23,
                                       -2.2250738585072014e-308,
                                       3.141592653589793};
        Table t{{"v"}, {}};
        for (double v : vals) t.rows.push_back({Cell{v}});
        write_csv(t, (dir / "round.csv").string());
        const auto got = column(read_csv((dir / "round.csv").string()), "v");
        REQUIRE(got.size() == vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double scale = std::max(std::abs(vals[i]), 1e-300);
            CHECK(std::abs(got[i] - vals[i]) <= 1e-12 * scale);
        }
    }
    SUBCASE("text cells are quoted only when needed") {
        Table t{{"name", "note"},
                {{Cell{std::string("plain")}, Cell{std::string("a,b \"q\"")}}}};
        write_csv(t, (dir / "quote.csv").string());
        CHECK(slurp(dir / "quote.csv") ==
              "name,note\nplain,\"a,b \"\"q\"\"\"\n");
        const ParsedCsv back = read_csv((dir / "quote.csv").string());
        CHECK(back.rows[0][1] == "a,b \"q\"");
    }
    SUBCASE("line endings are LF regardless of platform") {
        Table t{{"x"}, {{Cell{1.0}}}};
        write_csv(t, (dir / "lf.csv").string());
        const std::string raw = slurp(dir / "lf.csv");
        CHECK(raw.find('\r') == std::string::npos);
    }
    SUBCASE("missing column is reported") {
        Table t{{"x"}, {{Cell{1.0}}}};
        write_csv(t, (dir / "col.csv").string());
        const ParsedCsv back = read_csv((dir / "col.csv").string());
        CHECK_THROWS_AS(column(back, "y"), config_error);
    }
}

TEST_CASE("pgm rendering") {
    const fs::path dir = temp_dir("pgm");
    SUBCASE("linear mapping is byte exact on a known matrix") {
        Eigen::MatrixXd m(2, 2);
        m << 0.0, 1.0, 2.0, 4.0;
        write_pgm(m, (dir / "lin.pgm").string());
        const std::string want =
            std::string("P5\n# min=0.000000000000e+00 max=4.000000000000e+00"
                        " scaling=linear\n2 2\n255\n") +
            '\x00' + '\x40' + char(0x80) + char(0xff);
        CHECK(slurp(dir / "lin.pgm") == want);
    }
    SUBCASE("all-zero data renders black") {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 5);
        write_pgm(m, (dir / "zero.pgm").string());
        const std::string raw = slurp(dir / "zero.pgm");
        for (int i = 0; i < 15; ++i)
            CHECK(raw[raw.size() - 15 + i] == '\x00');
    }
    SUBCASE("constant positive data saturates") {
        Eigen::MatrixXd m = Eigen::MatrixXd::Constant(2, 2, 0.7);
        write_pgm(m, (dir / "const.pgm").string());
        const std::string raw = slurp(dir / "const.pgm");
        for (int i = 0; i < 4; ++i)
            CHECK(static_cast<unsigned char>(raw[raw.size() - 4 + i]) == 255);
    }
    SUBCASE("log scaling brightens faint structure") {
        Eigen::MatrixXd m(1, 3);
        m << 0.0, 4.0 / 255.0, 4.0;
        write_pgm(m, (dir / "log.pgm").string(), PgmScaling::Log);
        const std::string raw = slurp(dir / "log.pgm");
        const auto* px =
            reinterpret_cast<const unsigned char*>(raw.data() + raw.size() - 3);
        CHECK(px[0] == 0);
        CHECK(px[1] == 32);  // 255 ln 2 / ln 256 = 31.875
        CHECK(px[2] == 255);
        CHECK(raw.find("scaling=log") != std::string::npos);
    }
    SUBCASE("NaN cells are rejected with their location") {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
        m(1, 0) = std::numeric_limits<double>::quiet_NaN();
        try {
            write_pgm(m, (dir / "nan.pgm").string());
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("(1, 0)") != std::string::npos);
        }
    }
}

TEST_CASE("series comparison") {
    std::vector<double> tc, vc, tf, vf;
    for (int i = 0; i <= 10; ++i) {
        tc.push_back(0.5 * i);
        vc.push_back(2.0 * tc.back() - 1.0);
    }
    for (int i = 0; i <= 40; ++i) {
        tf.push_back(0.125 * i);
        vf.push_back(2.0 * tf.back() - 1.0);
    }
    SUBCASE("identical linear data compares to zero") {
        const ComparisonReport r = compare(tc, vc, tf, vf, 3.0);
        CHECK(r.max_abs <= 1e-12);
        CHECK(r.rms <= 1e-12);
        CHECK(r.n_points == 41);
        CHECK(r.overlap_lo == doctest::Approx(0.0));
        CHECK(r.overlap_hi == doctest::Approx(5.0));
    }
    SUBCASE("constant offset is reported exactly") {
        std::vector<double> shifted = vf;
        for (double& v : shifted) v += 0.25;
        const ComparisonReport r = compare(tc, vc, tf, shifted, 2.0);
        CHECK(r.max_abs == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(r.rms == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(r.rel_max == doctest::Approx(0.125).epsilon(1e-12));
        CHECK(r.rel_rms == doctest::Approx(0.125).epsilon(1e-12));
    }
    SUBCASE("disjoint ranges are rejected") {
        std::vector<double> t2{10.0, 11.0}, v2{0.0, 0.0};
        CHECK_THROWS_AS(compare(tc, vc, t2, v2, 1.0), config_error);
    }
}

TEST_CASE("fnv1a64 reference vectors") {
    CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar", 6) == 0x85944171f73967e8ull);
}

TEST_CASE("manifest records hashed outputs") {
    const fs::path dir = temp_dir("manifest");
    Table t{{"x"}, {{Cell{1.5}}}};
    write_csv(t, (dir / "data.csv").string());

    nlohmann::json cfg{{"mass", 1.0}};
    write_manifest(dir.string(), cfg, 0.125, {"data.csv"});

    const nlohmann::json m = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(m["config"]["mass"] == 1.0);
    CHECK(m["duration_seconds"] == 0.125);
    CHECK(m["version"].is_string());
    REQUIRE(m["files"].size() == 1);
    CHECK(m["files"][0]["name"] == "data.csv");
    char hex[20];
    std::snprintf(hex, sizeof(hex), "0x%016llx",
                  static_cast<unsigned long long>(
                      fnv1a64_file((dir / "data.csv").string())));
    CHECK(m["files"][0]["fnv1a64"] == hex);

    SUBCASE("listed files must exist") {
        CHECK_THROWS_AS(write_manifest(dir.string(), cfg, 0.0, {"ghost.csv"}),
                        config_error);
    }
}

TEST_CASE("writers are deterministic") {
    const fs::path dir = temp_dir("determinism");
    Table t{{"a", "b"}, {{Cell{0.1}, Cell{std::string("s")}}, {Cell{-2.5}, Cell{7.0}}}};
    write_csv(t, (dir / "one.csv").string());
    write_csv(t, (dir / "two.csv").string());
    CHECK(slurp(dir / "one.csv") == slurp(dir / "two.csv"));

    Eigen::MatrixXd m(2, 3);
    m << 0.0, 0.5, 1.0, 1.5, 2.0, 2.5;
    write_pgm(m, (dir / "one.pgm").string());
    write_pgm(m, (dir / "two.pgm").string());
    CHECK(slurp(dir / "one.pgm") == slurp(dir / "two.pgm"));
}
