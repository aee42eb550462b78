#include "fsoturb/estimate.hpp"

#include "fsoturb/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <string>

namespace fsoturb {

namespace {

constexpr double kUpperSlack = 1e-9;

void require_count(std::size_t n) {
    if (n < kMinFitSamples) {
        throw DataError("need at least " + std::to_string(kMinFitSamples) + " valid samples, got " +
                        std::to_string(n));
    }
}

}  // namespace

TransmittanceSeries TransmittanceSeries::from_raw(const std::vector<double>& raw,
                                                  std::optional<double> sample_rate_hz) {
    TransmittanceSeries out;
    out.sample_rate_hz = sample_rate_hz;
    out.samples.reserve(raw.size());
    std::size_t bad = 0;
    for (double t : raw) {
        if (!std::isfinite(t) || t < 0.0 || t > 1.0 + kUpperSlack) {
            ++bad;
        } else if (t == 0.0) {
            ++out.rejected;
        } else {
            out.samples.push_back(std::min(t, 1.0));
        }
    }
    if (bad > 0) {
        throw DataError(std::to_string(bad) + " transmittance value(s) outside [0, 1]", bad);
    }
    return out;
}

PowerLawFit fit_power_law(const TransmittanceSeries& series) {
    const std::size_t n = series.samples.size();
    require_count(n);
    double neg_log_sum = 0.0;
    for (double t : series.samples) neg_log_sum -= std::log(t);
    if (!(neg_log_sum > 0.0)) {
        throw DegenerateDataError("no measurable turbulence: every sample equals 1");
    }
    PowerLawFit fit;
    fit.n = n;
    fit.gamma = static_cast<double>(n) / neg_log_sum;
    fit.std_error = fit.gamma / std::sqrt(static_cast<double>(n));
    return fit;
}

PowerLawFit fit_power_law_histogram(const TransmittanceSeries& series, int bins) {
    const std::size_t n = series.samples.size();
    require_count(n);
    if (bins < 2) throw ParameterError("histogram fit needs >= 2 bins");
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double t : series.samples) {
        ++counts[std::min(static_cast<std::size_t>(t * bins), counts.size() - 1)];
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int used = 0;
    for (int k = 0; k < bins; ++k) {
        if (counts[k] == 0) continue;
        const double x = std::log((k + 0.5) / bins);
        const double y = std::log(counts[k] * static_cast<double>(bins) / n);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used < 2) throw DegenerateDataError("no measurable turbulence: samples fill fewer than two bins");
    const double slope = (used * sxy - sx * sy) / (used * sxx - sx * sx);
    PowerLawFit fit;
    fit.n = n;
    fit.gamma = slope + 1.0;
    if (!(fit.gamma > 0.0)) throw DataError("histogram fit produced a non-positive exponent");
    fit.std_error = fit.gamma / std::sqrt(static_cast<double>(n));
    return fit;
}

double c_a_from_gamma(double gamma, const BeamParams& beam) {
    validate(beam);
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive");
    return 2.0 / (beam.w * beam.w * gamma);
}

double r0_from_c_a(double c_a, double l0, double L0, const ModeFilter& filter) {
    if (!(c_a > 0.0) || !std::isfinite(c_a)) throw DomainError("c_a must be positive");
    const double kernel = c_a_kernel(l0, L0, filter);
    return std::pow(kernel / c_a, 0.6);
}

FriedEstimate estimate_fried(const TransmittanceSeries& series, const BeamParams& beam, double l0,
                             double L0, const ModeFilter& filter, double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) throw ParameterError("confidence must lie in (0, 1)");
    const PowerLawFit fit = fit_power_law(series);
    FriedEstimate est;
    est.gamma = fit.gamma;
    est.gamma_std_error = fit.std_error;
    est.n = fit.n;
    est.rejected = series.rejected;
    est.c_a = c_a_from_gamma(fit.gamma, beam);
    est.r0 = r0_from_c_a(est.c_a, l0, L0, filter);

    // Var(ln gamma) ~ 1/n; r0 scales as gamma^(3/5).
    const boost::math::normal_distribution<double> unit;
    const double z = boost::math::quantile(unit, 0.5 + 0.5 * confidence);
    const double half = 0.6 * z / std::sqrt(static_cast<double>(fit.n));
    est.r0_lo = est.r0 * std::exp(-half);
    est.r0_hi = est.r0 * std::exp(half);
    return est;
}

}  // namespace fsoturb
