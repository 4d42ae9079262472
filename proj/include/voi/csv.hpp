#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "voi/engine.hpp"
#include "voi/measure.hpp"
#include "voi/models.hpp"

namespace voi {

// Filesystem failures carry their own type so the CLI can map them to a
// dedicated exit code.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed 12-significant-digit formatting used for all emitted numbers.
std::string format_num(double v);

// Write via a temp file and rename, so failed runs leave no partial output.
void write_file_atomic(const std::string& path, const std::string& content);

// Cost file: first line n, then n lines of n cost entries, then an optional
// line of n prior weights. Separators: commas and/or whitespace.
struct CostFile {
    CostMatrix cost;
    std::optional<ProbVector> prior;
};
CostFile load_cost_csv(const std::string& path);

// Prior file: first line n, second line n weights (normalized on load).
ProbVector load_prior_csv(const std::string& path);

// Curve CSV: one provenance comment, a pinned header, one row per grid point.
void write_curve_csv(const VoiCurve& curve, const std::string& path);

struct CurveFile {
    std::string model;
    int n = 0;
    LogBase base = LogBase::Bits;
    std::vector<CurvePoint> points;
};
CurveFile read_curve_csv(const std::string& path);

// Hartley CSV: rows (bits, info in base, value).
void write_hartley_csv(const std::string& model, int n, LogBase base,
                       const std::vector<HartleyPoint>& points, const std::string& path);

struct HartleyFile {
    std::string model;
    int n = 0;
    LogBase base = LogBase::Bits;
    std::vector<HartleyPoint> points;
};
HartleyFile read_hartley_csv(const std::string& path);

}  // namespace voi
