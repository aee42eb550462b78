#include "fsoturb/montecarlo.hpp"

#include "fsoturb/analytic.hpp"
#include "fsoturb/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

namespace fsoturb {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Runs body(i) for i in [0, n) over contiguous chunks. The first exception
/// by chunk order is rethrown.
template <class Body>
void parallel_for(std::uint64_t n, unsigned threads, Body&& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(threads, 1u), std::max<std::uint64_t>(n, 1)));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t lo = n * w / workers;
            const std::uint64_t hi = n * (w + 1) / workers;
            pool.emplace_back([&, lo, hi, w] {
                try {
                    for (std::uint64_t i = lo; i < hi; ++i) body(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double ordered_mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    const std::uint64_t k1 = splitmix64(s);
    std::uint64_t t = index ^ 0xD1B54A32D192ED03ULL;
    const std::uint64_t k2 = splitmix64(t);
    state_ = k1 ^ (k2 + 0x632BE59BD9B4E019ULL + (k1 << 6) + (k1 >> 2));
}

std::uint64_t SampleStream::next_u64() { return splitmix64(state_); }

double SampleStream::next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SampleStream::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

void validate(const SimConfig& config) {
    if (config.samples < 1) throw ParameterError("samples must be >= 1");
    if (config.histogram.bins < 1) throw ParameterError("histogram bins must be >= 1");
    if (config.histogram.binning == Binning::Log &&
        !(config.histogram.log_min > 0.0 && config.histogram.log_min < 1.0)) {
        throw ParameterError("log_min must lie in (0, 1)");
    }
    if (config.engine == Engine::Grid) validate(config.grid);
}

void validate(const DistortionVariances& vars) {
    for (double v : {vars.c_a, vars.c_g, vars.c_s}) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("variances must be finite and >= 0");
    }
    if (vars.gh_coupling == GhCoupling::Correlated && vars.c_s > vars.c_g) {
        throw ParameterError("correlated (g, h) requires c_s <= c_g");
    }
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FSOTURB_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

DistortionCoeffs sample_coeffs(const DistortionVariances& vars, const SimConfig& config,
                               std::uint64_t index) {
    SampleStream rng(config.seed, index);
    // Fixed slot order so tracking and order never shift the other draws.
    const double za = rng.next_normal();
    const double zb = rng.next_normal();
    const double zg = rng.next_normal();
    const double zh = rng.next_normal();
    const double zs = rng.next_normal();

    DistortionCoeffs c;
    const double sa = std::sqrt(vars.c_a);
    c.a = sa * za;
    c.b = sa * zb;
    if (config.order == ScreenOrder::Second) {
        const double sg = std::sqrt(vars.c_g);
        c.s = std::sqrt(vars.c_s) * zs;
        if (config.gh_coupling == GhCoupling::Correlated && vars.c_g > 0.0) {
            // Cholesky of [[c_g, c_s], [c_s, c_g]].
            const double l21 = vars.c_s / sg;
            const double l22 = std::sqrt(std::max(vars.c_g - l21 * l21, 0.0));
            c.g = sg * zg;
            c.h = l21 * zg + l22 * zh;
        } else {
            c.g = sg * zg;
            c.h = sg * zh;
        }
    }
    if (config.tracking) {
        c.a = 0.0;
        c.b = 0.0;
    }
    return c;
}

EmpiricalPdf make_histogram(const std::vector<double>& samples, const HistogramSpec& spec) {
    if (spec.bins < 1) throw ParameterError("histogram bins must be >= 1");
    EmpiricalPdf out;
    const auto nb = static_cast<std::size_t>(spec.bins);
    out.edges.resize(nb + 1);
    if (spec.binning == Binning::Uniform) {
        for (std::size_t k = 0; k <= nb; ++k) out.edges[k] = static_cast<double>(k) / nb;
    } else {
        out.edges[0] = 0.0;
        const double lmin = std::log(spec.log_min);
        const std::size_t nlog = nb - 1;
        for (std::size_t k = 1; k <= nb; ++k) {
            out.edges[k] = nlog == 0 ? 1.0 : std::exp(lmin * (1.0 - static_cast<double>(k - 1) / nlog));
        }
        out.edges[nb] = 1.0;
    }

    std::vector<std::uint64_t> counts(nb, 0);
    for (double t : samples) {
        if (!(t >= 0.0 && t <= 1.0)) throw NumericError("sample outside [0, 1]: " + std::to_string(t));
        std::size_t k;
        if (spec.binning == Binning::Uniform) {
            k = std::min(static_cast<std::size_t>(t * nb), nb - 1);
        } else {
            const auto it = std::upper_bound(out.edges.begin(), out.edges.end(), t);
            k = std::min(static_cast<std::size_t>(it - out.edges.begin()) - 1, nb - 1);
        }
        ++counts[k];
    }
    out.count = samples.size();
    out.density.assign(nb, 0.0);
    if (out.count > 0) {
        for (std::size_t k = 0; k < nb; ++k) {
            out.density[k] = static_cast<double>(counts[k]) /
                             (static_cast<double>(out.count) * (out.edges[k + 1] - out.edges[k]));
        }
    }
    return out;
}

TransmittanceResult simulate_transmittance(const DistortionVariances& vars, const BeamParams& beam,
                                           const SimConfig& config) {
    validate(vars);
    validate(beam);
    validate(config);
    TransmittanceResult out;
    out.samples.assign(config.samples, 0.0);
    const ModeIndex fundamental = ModeIndex::hg(0, 0);

    parallel_for(config.samples, resolve_threads(config.threads), [&](std::uint64_t i) {
        const DistortionCoeffs c = sample_coeffs(vars, config, i);
        double t;
        if (config.engine == Engine::Grid) {
            t = grid_overlap(fundamental, fundamental, beam, PhaseScreen(c, config.order), config.grid);
        } else if (config.order == ScreenOrder::First) {
            t = t00_first_order(beam, c.a, c.b);
        } else {
            t = t00_second_order(beam, c);
        }
        out.samples[i] = t;
    });

    out.pdf = make_histogram(out.samples, config.histogram);
    out.mean = ordered_mean(out.samples);
    return out;
}

CrosstalkResult simulate_crosstalk(const DistortionVariances& vars, const BeamParams& beam,
                                   const SimConfig& config, int max_level) {
    validate(vars);
    validate(beam);
    validate(config);
    if (max_level < 1) throw ParameterError("max_level must be >= 1");
    const auto levels = static_cast<std::size_t>(max_level) + 1;

    CrosstalkResult out;
    out.samples.assign(levels, std::vector<double>(config.samples, 0.0));

    const bool use_grid = config.order == ScreenOrder::Second || config.engine == Engine::Grid;
    parallel_for(config.samples, resolve_threads(config.threads), [&](std::uint64_t i) {
        const DistortionCoeffs c = sample_coeffs(vars, config, i);
        if (use_grid) {
            const auto per_level =
                grid_level_coupling(beam, PhaseScreen(c, config.order), max_level, config.grid);
            for (std::size_t n = 0; n < levels; ++n) out.samples[n][i] = per_level[n];
        } else {
            const double x = xi(beam, c);
            for (std::size_t n = 0; n < levels; ++n)
                out.samples[n][i] = crosstalk_first_order(static_cast<int>(n), x);
        }
    });

    for (std::size_t n = 0; n < levels; ++n) {
        out.levels.push_back(make_histogram(out.samples[n], config.histogram));
        out.means.push_back(ordered_mean(out.samples[n]));
    }
    return out;
}

std::string_view to_string(Engine engine) {
    return engine == Engine::ClosedForm ? "closed-form" : "grid";
}

Engine engine_from_string(std::string_view name) {
    if (name == "closed-form") return Engine::ClosedForm;
    if (name == "grid") return Engine::Grid;
    throw ParameterError("unknown engine '" + std::string(name) + "'");
}

std::string_view to_string(ScreenOrder order) {
    return order == ScreenOrder::First ? "first" : "second";
}

ScreenOrder order_from_string(std::string_view name) {
    if (name == "first") return ScreenOrder::First;
    if (name == "second") return ScreenOrder::Second;
    throw ParameterError("unknown order '" + std::string(name) + "'");
}

Binning binning_from_string(std::string_view name) {
    if (name == "uniform") return Binning::Uniform;
    if (name == "log") return Binning::Log;
    throw ParameterError("unknown binning '" + std::string(name) + "'");
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("ks_statistic needs non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

}  // namespace fsoturb
