#pragma once

// Command-line front end. Kept as a library so tests can drive it in-process.
//
// Exit codes: 0 ok, 2 input/config error, 3 numeric failure, 4 degenerate data.

#include "fsoturb/estimate.hpp"
#include "fsoturb/montecarlo.hpp"
#include "fsoturb/spectrum.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsoturb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitDegenerate = 4;

enum class TableSpacing { Clustered, Uniform };

struct PdfSettings {
    int level = 0;  ///< 0: fundamental power law, N >= 1: level-N cross-talk
    int points = 1000;
    TableSpacing spacing = TableSpacing::Clustered;
    std::optional<double> gamma;  ///< overrides the value derived from the variances
};

struct EstimateSettings {
    double confidence = 0.95;
    std::string method = "mle";  ///< "mle" or "histogram"
};

struct RunConfig {
    TurbulenceParams turbulence{};
    BeamParams beam{};
    FilterKind filter = FilterKind::IntensitySpectrum;
    SimConfig simulation{};
    int max_level = 3;
    PdfSettings pdf{};
    EstimateSettings estimate{};
    std::optional<std::string> samples_out;

    ModeFilter mode_filter() const { return {filter, beam.w}; }
};

/// Thrown for malformed configuration documents; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a JSON config document. Unknown keys and wrong types are errors.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

/// One transmittance per line, or `time,transmittance`. A non-numeric first
/// line is taken as a header; blank lines and `#` comments are skipped.
/// Throws DataError naming the first offending line.
std::vector<double> read_transmittance_csv(std::istream& in);

/// T positions for a pdf table on (0, t_max).
std::vector<double> table_points(double t_max, int points, TableSpacing spacing);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fsoturb::cli
