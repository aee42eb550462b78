#pragma once

// Monte Carlo transmittance and cross-talk statistics.
//
// Every sample draws its coefficients from a stream keyed by (seed, index),
// so results are identical for any number of worker threads.

#include "fsoturb/modes.hpp"
#include "fsoturb/spectrum.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace fsoturb {

enum class Engine { ClosedForm, Grid };
enum class Binning { Uniform, Log };

struct HistogramSpec {
    Binning binning = Binning::Uniform;
    int bins = 100;
    double log_min = 1e-4;  ///< first interior edge for log binning; bin 0 is [0, log_min]
};

struct SimConfig {
    ScreenOrder order = ScreenOrder::Second;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    bool tracking = false;  ///< ideal tilt correction: a = b = 0 in every sample
    GhCoupling gh_coupling = GhCoupling::Independent;
    Engine engine = Engine::ClosedForm;
    HistogramSpec histogram{};
    GridSpec grid{};
    unsigned threads = 0;  ///< 0: FSOTURB_THREADS or hardware concurrency
};

/// Density estimate on [0, 1]; sum(density * width) == 1 when count > 0.
struct EmpiricalPdf {
    std::vector<double> edges;
    std::vector<double> density;
    std::uint64_t count = 0;

    std::size_t bins() const { return density.size(); }
};

struct TransmittanceResult {
    EmpiricalPdf pdf;
    std::vector<double> samples;
    double mean = 0.0;
};

struct CrosstalkResult {
    std::vector<EmpiricalPdf> levels;            ///< index N = 0..max_level
    std::vector<std::vector<double>> samples;    ///< samples[N][i]
    std::vector<double> means;
};

/// Counter-based stream: SplitMix64 keyed on (seed, index).
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next_u64();
    /// Uniform on (0, 1), never 0 or 1.
    double next_uniform();
    /// Box-Muller; both outputs of a pair are used.
    double next_normal();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

void validate(const SimConfig& config);
void validate(const DistortionVariances& vars);

/// Worker count after applying the FSOTURB_THREADS override.
unsigned resolve_threads(unsigned requested);

/// Pure function of (vars, config.seed, config.gh_coupling, config.order, index).
/// First-order configs return g = h = s = 0; tracking leaves a = b = 0.
DistortionCoeffs sample_coeffs(const DistortionVariances& vars, const SimConfig& config,
                               std::uint64_t index);

EmpiricalPdf make_histogram(const std::vector<double>& samples, const HistogramSpec& spec);

TransmittanceResult simulate_transmittance(const DistortionVariances& vars, const BeamParams& beam,
                                           const SimConfig& config);

/// Couplings from the fundamental into levels 0..max_level. First order uses
/// the closed-form series; second order sums per-mode grid overlaps.
CrosstalkResult simulate_crosstalk(const DistortionVariances& vars, const BeamParams& beam,
                                   const SimConfig& config, int max_level);

std::string_view to_string(Engine engine);
Engine engine_from_string(std::string_view name);
std::string_view to_string(ScreenOrder order);
ScreenOrder order_from_string(std::string_view name);
Binning binning_from_string(std::string_view name);

/// Two-sample and one-sample Kolmogorov-Smirnov statistics.
double ks_statistic(std::vector<double> a, std::vector<double> b);
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf&& cdf);

}  // namespace fsoturb

#include <algorithm>

template <class Cdf>
double fsoturb::ks_statistic(std::vector<double> samples, Cdf&& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, std::abs((i + 1) / n - f), std::abs(f - i / n)});
    }
    return d;
}
