#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dirac2d/common.hpp"

namespace dirac2d::io {

using Cell = std::variant<double, std::string>;

// Rectangular table; double cells are written as %.12e.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string format_float(double v);

// RFC-4180-style CSV: header row, comma separators, LF line endings, quoting
// only where required.
void write_csv(const Table& table, const std::string& path);

// Parses a CSV produced by write_csv; all cells kept as strings.
struct ParsedCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
ParsedCsv read_csv(const std::string& path);

// Numeric column lookup by header name.
std::vector<double> column(const ParsedCsv& csv, const std::string& name);

// Binary P5 PGM, maxval 255, with a comment line recording the data range
// and the scaling mode. Values map through [0, max] -> [0, 255] (linear) or
// g = 255 ln(1 + 255 v / max) / ln 256 (log).
enum class PgmScaling { Linear, Log };
void write_pgm(const Eigen::MatrixXd& matrix, const std::string& path,
               PgmScaling scaling = PgmScaling::Linear);

struct ComparisonReport {
    double max_abs = 0.0;
    double rms = 0.0;
    double rel_max = 0.0;  // max_abs / packet_width
    double rel_rms = 0.0;  // rms / packet_width
    double overlap_lo = 0.0;
    double overlap_hi = 0.0;
    int n_points = 0;
};

// Aligns the two series by linear interpolation onto the finer grid inside
// the overlapping abscissa range, then reports deviation metrics.
ComparisonReport compare(const std::vector<double>& ta, const std::vector<double>& va,
                         const std::vector<double>& tb, const std::vector<double>& vb,
                         double packet_width);

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64_file(const std::string& path);

// Writes <outdir>/manifest.json last: canonical config echo, version string,
// wall-clock duration, and the output files with content hashes.
void write_manifest(const std::string& outdir, const nlohmann::json& config_echo,
                    double duration_seconds, const std::vector<std::string>& files);

}  // namespace dirac2d::io
