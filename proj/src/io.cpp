#include "dirac2d/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dirac2d/version.hpp"

namespace dirac2d::io {

namespace {

[[noreturn]] void io_fail(const std::string& what, const std::string& path) {
    throw config_error(what + ": " + path);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

void write_csv(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail("cannot open CSV for writing", path);
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(table.header[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (std::holds_alternative<double>(row[i]))
                out << format_float(std::get<double>(row[i]));
            else
                out << csv_escape(std::get<std::string>(row[i]));
        }
        out << '\n';
    }
    if (!out.good()) io_fail("write failure on CSV", path);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(std::move(cur));
    return cells;
}

}  // namespace

ParsedCsv read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail("cannot open CSV for reading", path);
    ParsedCsv csv;
    std::string line;
    if (!std::getline(in, line)) io_fail("empty CSV (no header)", path);
    csv.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        csv.rows.push_back(split_csv_line(line));
    }
    return csv;
}

std::vector<double> column(const ParsedCsv& csv, const std::string& name) {
    const auto it = std::find(csv.header.begin(), csv.header.end(), name);
    if (it == csv.header.end()) throw config_error("CSV column not found: " + name);
    const std::size_t idx = static_cast<std::size_t>(it - csv.header.begin());
    std::vector<double> out;
    out.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        if (idx >= row.size()) throw config_error("ragged CSV row while reading " + name);
        out.push_back(std::strtod(row[idx].c_str(), nullptr));
    }
    return out;
}

void write_pgm(const Eigen::MatrixXd& matrix, const std::string& path, PgmScaling scaling) {
    const auto rows = matrix.rows(), cols = matrix.cols();
    if (rows == 0 || cols == 0) throw config_error("write_pgm needs a non-empty matrix");
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            if (std::isnan(matrix(r, c))) {
                std::ostringstream msg;
                msg << "write_pgm: NaN at (" << r << ", " << c << ")";
                throw config_error(msg.str());
            }
    const double vmin = matrix.minCoeff();
    const double vmax = matrix.maxCoeff();

    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail("cannot open PGM for writing", path);
    out << "P5\n# min=" << format_float(vmin) << " max=" << format_float(vmax)
        << " scaling=" << (scaling == PgmScaling::Linear ? "linear" : "log") << "\n"
        << cols << " " << rows << "\n255\n";
    std::vector<unsigned char> bytes(static_cast<std::size_t>(rows * cols));
    std::size_t idx = 0;
    const double lg = std::log(256.0);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            double g = 0.0;
            if (vmax > 0.0) {
                const double v = std::clamp(matrix(r, c) / vmax, 0.0, 1.0);
                g = scaling == PgmScaling::Linear ? 255.0 * v
                                                  : 255.0 * std::log1p(255.0 * v) / lg;
            }
            bytes[idx++] = static_cast<unsigned char>(std::lround(g));
        }
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out.good()) io_fail("write failure on PGM", path);
}

ComparisonReport compare(const std::vector<double>& ta, const std::vector<double>& va,
                         const std::vector<double>& tb, const std::vector<double>& vb,
                         double packet_width) {
    if (ta.size() != va.size() || tb.size() != vb.size() || ta.size() < 2 || tb.size() < 2)
        throw config_error("compare needs two series of matching lengths >= 2");
    if (!(packet_width > 0.0)) throw config_error("compare requires packet_width > 0");
    const double lo = std::max(ta.front(), tb.front());
    const double hi = std::min(ta.back(), tb.back());
    if (!(hi > lo)) throw config_error("compare: series abscissa ranges are disjoint");

    auto count_in = [&](const std::vector<double>& t) {
        return std::count_if(t.begin(), t.end(),
                             [&](double x) { return x >= lo && x <= hi; });
    };
    const bool a_finer = count_in(ta) >= count_in(tb);
    const auto& tf = a_finer ? ta : tb;
    const auto& vf = a_finer ? va : vb;
    const auto& tc = a_finer ? tb : ta;
    const auto& vc = a_finer ? vb : va;

    auto lerp_at = [&](double t) {
        const auto it = std::lower_bound(tc.begin(), tc.end(), t);
        std::size_t j = static_cast<std::size_t>(it - tc.begin());
        if (j == 0) j = 1;
        if (j >= tc.size()) j = tc.size() - 1;
        const double t0 = tc[j - 1], t1 = tc[j];
        const double w = t1 == t0 ? 0.0 : (t - t0) / (t1 - t0);
        return vc[j - 1] * (1.0 - w) + vc[j] * w;
    };

    ComparisonReport rep;
    rep.overlap_lo = lo;
    rep.overlap_hi = hi;
    double sq = 0.0;
    for (std::size_t i = 0; i < tf.size(); ++i) {
        if (tf[i] < lo || tf[i] > hi) continue;
        const double dev = std::abs(vf[i] - lerp_at(tf[i]));
        rep.max_abs = std::max(rep.max_abs, dev);
        sq += dev * dev;
        ++rep.n_points;
    }
    if (rep.n_points == 0) throw config_error("compare: no samples inside the overlap");
    rep.rms = std::sqrt(sq / rep.n_points);
    rep.rel_max = rep.max_abs / packet_width;
    rep.rel_rms = rep.rms / packet_width;
    return rep;
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail("cannot hash missing file", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string bytes = ss.str();
    return fnv1a64(bytes.data(), bytes.size());
}

void write_manifest(const std::string& outdir, const nlohmann::json& config_echo,
                    double duration_seconds, const std::vector<std::string>& files) {
    nlohmann::json manifest;
    manifest["config"] = config_echo;
    manifest["version"] = version_string;
    manifest["duration_seconds"] = duration_seconds;
    nlohmann::json flist = nlohmann::json::array();
    for (const auto& name : files) {
        const auto path = std::filesystem::path(outdir) / name;
        char hex[20];
        std::snprintf(hex, sizeof(hex), "0x%016llx",
                      static_cast<unsigned long long>(fnv1a64_file(path.string())));
        flist.push_back({{"name", name}, {"fnv1a64", hex}});
    }
    manifest["files"] = flist;
    const auto path = std::filesystem::path(outdir) / "manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail("cannot open manifest for writing", path.string());
    out << manifest.dump(2) << "\n";
    if (!out.good()) io_fail("write failure on manifest", path.string());
}

}  // namespace dirac2d::io
