#include "fsoturb/analytic.hpp"
#include "fsoturb/errors.hpp"
#include "fsoturb/montecarlo.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace fsoturb;

namespace {

bool same_bits(const DistortionCoeffs& x, const DistortionCoeffs& y) {
    return std::memcmp(&x, &y, sizeof x) == 0;
}

SimConfig first_order_config(std::uint64_t samples, std::uint64_t seed = 11) {
    SimConfig c;
    c.order = ScreenOrder::First;
    c.samples = samples;
    c.seed = seed;
    return c;
}

/// c_a giving exponent gamma for waist w.
DistortionVariances vars_for_gamma(double gamma, double w) {
    DistortionVariances v;
    v.c_a = 2.0 / (w * w * gamma);
    v.c_s = v.c_a / (w * w) * 0.3;
    v.c_g = 3.0 * v.c_s;
    return v;
}

}  // namespace

TEST_CASE("sample streams are counter-based") {
    SampleStream a(5, 17), b(5, 17), c(5, 18), d(6, 17);
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
    SampleStream u(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double v = u.next_uniform();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("sample_coeffs") {
    DistortionVariances zero;
    SimConfig cfg;
    const auto c0 = sample_coeffs(zero, cfg, 3);
    CHECK(c0.a == 0.0);
    CHECK(c0.g == 0.0);
    CHECK(c0.s == 0.0);

    DistortionVariances v{1.0, 3.0, 1.0, GhCoupling::Independent};
    CHECK(same_bits(sample_coeffs(v, cfg, 99), sample_coeffs(v, cfg, 99)));

    SUBCASE("variance of a over 1e6 draws") {
        double sum = 0.0, sum2 = 0.0;
        const int n = 1000000;
        for (int i = 0; i < n; ++i) {
            const double a = sample_coeffs(v, cfg, i).a;
            sum += a;
            sum2 += a * a;
        }
        const double var = sum2 / n - (sum / n) * (sum / n);
        CHECK(std::abs(var - 1.0) < 0.01);
        // 3 sigma of the sample variance is 3 sqrt(2/n) ~ 0.0042.
        CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));
    }

    SUBCASE("correlated curvature has covariance c_s") {
        SimConfig corr = cfg;
        corr.gh_coupling = GhCoupling::Correlated;
        double gg = 0, hh = 0, gh = 0;
        const int n = 400000;
        for (int i = 0; i < n; ++i) {
            const auto c = sample_coeffs(v, corr, i);
            gg += c.g * c.g;
            hh += c.h * c.h;
            gh += c.g * c.h;
        }
        CHECK(std::abs(gg / n - 3.0) < 0.05);
        CHECK(std::abs(hh / n - 3.0) < 0.05);
        CHECK(std::abs(gh / n - 1.0) < 0.05);
    }

    SUBCASE("tracking and order only zero their own coefficients") {
        SimConfig tracked = cfg;
        tracked.tracking = true;
        const auto full = sample_coeffs(v, cfg, 5);
        const auto tr = sample_coeffs(v, tracked, 5);
        CHECK(tr.a == 0.0);
        CHECK(tr.b == 0.0);
        CHECK(tr.g == full.g);
        CHECK(tr.s == full.s);
        SimConfig first = cfg;
        first.order = ScreenOrder::First;
        const auto f = sample_coeffs(v, first, 5);
        CHECK(f.a == full.a);
        CHECK(f.g == 0.0);
        CHECK(f.h == 0.0);
        CHECK(f.s == 0.0);
    }
}

TEST_CASE("histograms") {
    const std::vector<double> samples{0.0, 0.05, 0.5, 0.999, 1.0, 1.0};
    const auto h = make_histogram(samples, {Binning::Uniform, 10});
    CHECK(h.bins() == 10);
    CHECK(h.count == 6);
    double mass = 0.0;
    for (std::size_t k = 0; k < h.bins(); ++k) {
        CHECK(h.density[k] >= 0.0);
        mass += h.density[k] * (h.edges[k + 1] - h.edges[k]);
    }
    CHECK(std::abs(mass - 1.0) < 1e-9);
    CHECK(h.density[9] == doctest::Approx(3.0 / 6.0 / 0.1));

    const auto lg = make_histogram(samples, {Binning::Log, 20, 1e-3});
    CHECK(lg.edges.front() == 0.0);
    CHECK(lg.edges[1] == doctest::Approx(1e-3));
    CHECK(lg.edges.back() == 1.0);
    mass = 0.0;
    for (std::size_t k = 0; k < lg.bins(); ++k) mass += lg.density[k] * (lg.edges[k + 1] - lg.edges[k]);
    CHECK(std::abs(mass - 1.0) < 1e-9);

    CHECK_THROWS_AS(make_histogram({1.5}, {}), NumericError);
}

TEST_CASE("first-order transmittance follows the power law") {
    const BeamParams beam{1e-3};
    const auto v = vars_for_gamma(2.0, beam.w);
    const auto r = simulate_transmittance(v, beam, first_order_config(100000));
    CHECK(ks_statistic(r.samples, [](double t) { return cdf_fundamental(2.0, t); }) < 0.01);
    // Mean within three standard errors of gamma/(gamma+1).
    const double var = 2.0 / ((2.0 + 2.0) * 9.0);  // gamma / ((gamma+2)(gamma+1)^2)
    CHECK(std::abs(r.mean - 2.0 / 3.0) < 3.0 * std::sqrt(var / 100000.0));
    for (double t : r.samples) {
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
    }
}

TEST_CASE("tracking") {
    const BeamParams beam{1e-3};
    const auto v = vars_for_gamma(1.5, beam.w);
    SimConfig cfg = first_order_config(2000);
    cfg.tracking = true;
    for (double t : simulate_transmittance(v, beam, cfg).samples) CHECK(t == 1.0);

    cfg.order = ScreenOrder::Second;
    const double tracked = simulate_transmittance(v, beam, cfg).mean;
    cfg.tracking = false;
    const double untracked = simulate_transmittance(v, beam, cfg).mean;
    CHECK(tracked > untracked);
}

TEST_CASE("results do not depend on the worker count") {
    const BeamParams beam{1e-3};
    const auto v = vars_for_gamma(1.2, beam.w);
    SimConfig cfg;
    cfg.samples = 5000;
    cfg.threads = 1;
    const auto one = simulate_transmittance(v, beam, cfg);
    cfg.threads = 7;
    const auto many = simulate_transmittance(v, beam, cfg);
    CHECK(std::memcmp(one.samples.data(), many.samples.data(), one.samples.size() * sizeof(double)) == 0);
    CHECK(one.pdf.density == many.pdf.density);
    CHECK(std::memcmp(&one.mean, &many.mean, sizeof(double)) == 0);

    cfg.order = ScreenOrder::First;
    const auto x1 = simulate_crosstalk(v, beam, cfg, 3);
    cfg.threads = 2;
    const auto x2 = simulate_crosstalk(v, beam, cfg, 3);
    CHECK(x1.samples == x2.samples);

    // Grid path for second order.
    cfg.order = ScreenOrder::Second;
    cfg.samples = 40;
    cfg.grid.points = 256;
    const auto g1 = simulate_crosstalk(v, beam, cfg, 2);
    cfg.threads = 3;
    const auto g2 = simulate_crosstalk(v, beam, cfg, 2);
    CHECK(g1.samples == g2.samples);
}

TEST_CASE("grid and closed-form engines agree at first order") {
    const BeamParams beam{1e-3};
    const auto v = vars_for_gamma(1.0, beam.w);
    SimConfig cfg = first_order_config(20000, 4);
    const auto closed = simulate_transmittance(v, beam, cfg);
    cfg.engine = Engine::Grid;
    cfg.grid.check_accuracy = false;
    const auto grid = simulate_transmittance(v, beam, cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < closed.samples.size(); ++i)
        worst = std::max(worst, std::abs(closed.samples[i] - grid.samples[i]));
    CHECK(worst < 1e-9);
    CHECK(ks_statistic(closed.samples, grid.samples) < 0.01);
}

TEST_CASE("first-order crosstalk") {
    const BeamParams beam{1e-3};
    const double gamma = 1.3;
    const auto v = vars_for_gamma(gamma, beam.w);
    const int nmax = 4;
    const auto r = simulate_crosstalk(v, beam, first_order_config(100000, 21), nmax);
    REQUIRE(r.levels.size() == nmax + 1);
    const double w2ca = 2.0 / gamma;
    for (std::size_t i = 0; i < 100000; ++i) {
        double sum = 0.0;
        for (int n = 0; n <= nmax; ++n) sum += r.samples[n][i];
        // Remaining mass beyond nmax.
        const double x = -std::log(r.samples[0][i]);
        double tail = 0.0;
        for (int n = nmax + 1; n < nmax + 200; ++n) tail += crosstalk_first_order(n, x);
        CHECK(std::abs(1.0 - sum - tail) < 1e-12);
        CHECK(r.samples[1][i] <= std::exp(-1.0) + 1e-12);
    }
    CHECK(ks_statistic(r.samples[1], [&](double t) { return cdf_crosstalk(1, w2ca, t); }) < 0.01);
    CHECK(ks_statistic(r.samples[2], [&](double t) { return cdf_crosstalk(2, w2ca, t); }) < 0.01);
    CHECK(ks_statistic(r.samples[0], [&](double t) { return cdf_fundamental(gamma, t); }) < 0.01);
}

TEST_CASE("second-order crosstalk uses per-mode grid sums") {
    const BeamParams beam{1e-3};
    const auto v = vars_for_gamma(2.0, beam.w);
    SimConfig cfg;
    cfg.samples = 200;
    cfg.grid.points = 256;
    const auto r = simulate_crosstalk(v, beam, cfg, 2);
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const auto c = sample_coeffs(v, cfg, i);
        CHECK(std::abs(r.samples[0][i] - t00_second_order(beam, c)) < 1e-6);
        CHECK(r.samples[0][i] + r.samples[1][i] + r.samples[2][i] <= 1.0 + 1e-9);
    }
}

TEST_CASE("config validation") {
    DistortionVariances bad{-1.0, 0, 0};
    CHECK_THROWS_AS(simulate_transmittance(bad, {1e-3}, SimConfig{}), ParameterError);
    SimConfig zero;
    zero.samples = 0;
    CHECK_THROWS_AS(simulate_transmittance({}, {1e-3}, zero), ParameterError);
    CHECK_THROWS_AS(simulate_crosstalk({}, {1e-3}, SimConfig{}, 0), ParameterError);
    CHECK(engine_from_string("grid") == Engine::Grid);
    CHECK(order_from_string("first") == ScreenOrder::First);
    CHECK_THROWS_AS(binning_from_string("cubic"), ParameterError);
}
