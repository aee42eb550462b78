#pragma once

// Fried-parameter estimation from fundamental-mode transmittance samples:
// fit gamma in gamma T^(gamma-1), convert to C_a = 2 / (w^2 gamma), then
// invert C_a = r0^(-5/3) K(l0, L0, filter).

#include "fsoturb/spectrum.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fsoturb {

/// Validated transmittance samples. Exact zeros (dropouts) are dropped and
/// counted; values in (1, 1 + 1e-9] are clamped to 1.
struct TransmittanceSeries {
    std::vector<double> samples;
    std::size_t rejected = 0;
    std::optional<double> sample_rate_hz;

    /// Throws DataError if any value is negative, non-finite or above 1 + 1e-9.
    static TransmittanceSeries from_raw(const std::vector<double>& raw,
                                        std::optional<double> sample_rate_hz = std::nullopt);
};

struct PowerLawFit {
    double gamma = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

struct FriedEstimate {
    double gamma = 0.0;
    double gamma_std_error = 0.0;
    double c_a = 0.0;
    double r0 = 0.0;
    double r0_lo = 0.0;
    double r0_hi = 0.0;
    std::size_t n = 0;
    std::size_t rejected = 0;
};

inline constexpr std::size_t kMinFitSamples = 100;

/// Maximum likelihood: gamma = n / (-sum ln T_i), standard error gamma / sqrt(n).
PowerLawFit fit_power_law(const TransmittanceSeries& series);

/// Least-squares line through (ln T, ln density) of a uniform histogram.
/// Kept for comparison with figure-style fits; MLE is the default.
PowerLawFit fit_power_law_histogram(const TransmittanceSeries& series, int bins = 50);

double c_a_from_gamma(double gamma, const BeamParams& beam);

/// r0 = (K / c_a)^(3/5) where K = c_a at r0 = 1 m.
double r0_from_c_a(double c_a, double l0, double L0, const ModeFilter& filter);

/// Full pipeline with a normal-approximation interval on ln gamma.
FriedEstimate estimate_fried(const TransmittanceSeries& series, const BeamParams& beam, double l0,
                             double L0, const ModeFilter& filter, double confidence = 0.95);

}  // namespace fsoturb
