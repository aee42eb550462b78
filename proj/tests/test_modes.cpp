#include "fsoturb/errors.hpp"
#include "fsoturb/modes.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fsoturb;

namespace {

const ModeIndex kFund = ModeIndex::hg(0, 0);

DistortionCoeffs random_coeffs(std::mt19937_64& rng, double w, bool second) {
    std::normal_distribution<double> n(0.0, 1.0);
    DistortionCoeffs c;
    c.phi0 = 3.0 * n(rng);
    c.a = n(rng) / w;
    c.b = n(rng) / w;
    if (second) {
        c.g = n(rng) / (w * w);
        c.h = n(rng) / (w * w);
        c.s = n(rng) / (w * w);
    }
    return c;
}

}  // namespace

TEST_CASE("power levels") {
    CHECK(power_level(ModeIndex::hg(0, 0)) == 0);
    CHECK(power_level(ModeIndex::hg(2, 1)) == 3);
    CHECK(power_level(ModeIndex::lg(1, 2)) == 4);
    CHECK(power_level(ModeIndex::lg(1, -2)) == 4);
    for (int n = 0; n < 8; ++n) {
        const auto hg = modes_in_level(n, Basis::HermiteGauss);
        const auto lg = modes_in_level(n, Basis::LaguerreGauss);
        CHECK(hg.size() == static_cast<std::size_t>(n + 1));
        CHECK(lg.size() == static_cast<std::size_t>(n + 1));
        for (const auto& m : hg) CHECK(power_level(m) == n);
        for (const auto& m : lg) CHECK(power_level(m) == n);
    }
    CHECK_THROWS_AS(power_level(ModeIndex::hg(-1, 0)), ParameterError);
}

TEST_CASE("first-order closed forms") {
    CHECK(t00_first_order({2.0}, 0.0, 0.0) == 1.0);
    CHECK(t00_first_order({2.0}, 1.0, 0.0) == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK(t00_first_order({1.0}, std::sqrt(2.0), std::sqrt(2.0)) == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK(xi({2.0}, {0, 0, 0}) == 0.0);
    CHECK(xi({2.0}, {0, 1, 1}) == doctest::Approx(2.0));
    CHECK(xi({1.0}, {0, 2, 0}) == doctest::Approx(1.0));
    CHECK(t00_first_order({1.3}, 0.7, -0.4) == doctest::Approx(std::exp(-xi({1.3}, {0, 0.7, -0.4}))));
}

TEST_CASE("crosstalk series") {
    CHECK(crosstalk_first_order(0, 0.0) == 1.0);
    CHECK(crosstalk_first_order(3, 0.0) == 0.0);
    CHECK(crosstalk_first_order(1, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    for (double x : {0.1, 1.0, 5.0}) {
        double sum = 0.0;
        for (int n = 0; n <= 60; ++n) sum += crosstalk_first_order(n, x);
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(crosstalk_first_order(-1, 1.0), DomainError);
    CHECK_THROWS_AS(crosstalk_first_order(1, -1.0), DomainError);
}

TEST_CASE("second-order closed form") {
    const BeamParams beam{2.0};
    CHECK(t00_second_order(beam, {0, 0, 0, 1.0, 0, 0}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto c = random_coeffs(rng, beam.w, false);
        CHECK(t00_second_order(beam, c) == doctest::Approx(t00_first_order(beam, c.a, c.b)).epsilon(1e-14));
        c = random_coeffs(rng, beam.w, true);
        const double t = t00_second_order(beam, c);
        CHECK(t > 0.0);
        CHECK(t <= 1.0);
        // Tracking (a = b = 0) leaves only the curvature prefactor.
        DistortionCoeffs tracked = c;
        tracked.a = tracked.b = 0.0;
        CHECK(t00_second_order(beam, tracked) >= t);
    }
}

TEST_CASE("phase screen invariants") {
    CHECK_THROWS_AS(PhaseScreen({0, 1, 1, 1, 0, 0}, ScreenOrder::First), ParameterError);
    CHECK_THROWS_AS(PhaseScreen({0, NAN, 0, 0, 0, 0}, ScreenOrder::Second), ParameterError);
    const auto s = PhaseScreen::second_order({0.2, 1, 2, 3, 4, 5});
    CHECK(s.conjugate().coeffs().s == -5.0);
}

TEST_CASE("grid overlap agrees with closed forms") {
    const BeamParams beam{1e-3};
    CHECK(grid_overlap(kFund, kFund, beam, PhaseScreen{}) == doctest::Approx(1.0).epsilon(1e-9));

    std::mt19937_64 rng(42);
    for (int i = 0; i < 10; ++i) {
        const auto c1 = random_coeffs(rng, beam.w, false);
        const auto screen1 = PhaseScreen::first_order(c1.a, c1.b);
        CHECK(std::abs(grid_overlap(kFund, kFund, beam, screen1) - t00_first_order(beam, c1.a, c1.b)) <= 1e-6);

        const auto c2 = random_coeffs(rng, beam.w, true);
        const auto screen2 = PhaseScreen::second_order(c2);
        CHECK(std::abs(grid_overlap(kFund, kFund, beam, screen2) - t00_second_order(beam, c2)) <= 1e-6);
    }

    // w = 2, g = 1 example, on a grid.
    CHECK(grid_overlap(kFund, kFund, {2.0}, PhaseScreen::second_order({0, 0, 0, 1.0, 0, 0})) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("level-1 coupling under a tilt") {
    const BeamParams beam{1e-3};
    // xi = 0.5 with the tilt split between a and b.
    const double tilt = std::sqrt(0.5 * 4.0 / (beam.w * beam.w));
    const auto screen = PhaseScreen::first_order(tilt * 0.6, tilt * 0.8);
    const double t10 = grid_overlap(kFund, ModeIndex::hg(1, 0), beam, screen);
    const double t01 = grid_overlap(kFund, ModeIndex::hg(0, 1), beam, screen);
    CHECK(t10 + t01 == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-6));
    CHECK(0.5 * std::exp(-0.5) == doctest::Approx(0.30327).epsilon(1e-5));

    // Same level sum through LG modes.
    double lg = 0.0;
    for (const auto& m : modes_in_level(1, Basis::LaguerreGauss)) lg += grid_overlap(kFund, m, beam, screen);
    CHECK(lg == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-6));
}

TEST_CASE("per-level grid couplings follow xi^N e^-xi / N! and conserve power") {
    const BeamParams beam{1e-3};
    const double x = 1.3;
    const double tilt = std::sqrt(x * 4.0) / beam.w;
    const auto screen = PhaseScreen::first_order(tilt * std::cos(0.3), tilt * std::sin(0.3));
    const int nmax = 12;
    const auto levels = grid_level_coupling(beam, screen, nmax);
    double sum = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        CHECK(std::abs(levels[n] - crosstalk_first_order(n, x)) < 1e-8);
        sum += levels[n];
    }
    double tail = 0.0;
    for (int n = nmax + 1; n < 80; ++n) tail += crosstalk_first_order(n, x);
    CHECK(std::abs(1.0 - sum - tail) < 1e-8);

    // The table entries match individual grid_overlap calls, with curvature too.
    const auto screen2 = PhaseScreen::second_order({0, 300, -200, 3e5, -2e5, 1e5});
    const auto table = grid_overlaps_from_fundamental(beam, screen2, 3);
    CHECK(table[1][2] == doctest::Approx(grid_overlap(kFund, ModeIndex::hg(1, 2), beam, screen2)).epsilon(1e-9));
    CHECK(table[0][0] == doctest::Approx(t00_second_order(beam, screen2.coeffs())).epsilon(1e-9));
}

TEST_CASE("grid invariants") {
    const BeamParams beam{1e-3};
    const DistortionCoeffs c{0.0, 500, -300, 2e5, -1e5, 4e5};
    const double t = grid_overlap(kFund, ModeIndex::hg(2, 1), beam, PhaseScreen::second_order(c));

    SUBCASE("global phase drops out exactly") {
        DistortionCoeffs shifted = c;
        shifted.phi0 = 1.234;
        CHECK(grid_overlap(kFund, ModeIndex::hg(2, 1), beam, PhaseScreen::second_order(shifted)) == t);
    }
    SUBCASE("tx/rx exchange with conjugate screen") {
        const double swapped = grid_overlap(ModeIndex::hg(2, 1), kFund, beam, PhaseScreen::second_order(c).conjugate());
        CHECK(swapped == doctest::Approx(t).epsilon(1e-12));
    }
    SUBCASE("first-order rotation invariance") {
        const double r = 700.0;
        const double a = grid_overlap(kFund, kFund, beam, PhaseScreen::first_order(r, 0.0));
        const double b = grid_overlap(kFund, kFund, beam, PhaseScreen::first_order(r * std::cos(1.0), r * std::sin(1.0)));
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
    SUBCASE("LG and HG grid paths agree on the fundamental") {
        const double lg = grid_overlap(ModeIndex::lg(0, 0), ModeIndex::lg(0, 0), beam, PhaseScreen::second_order(c));
        CHECK(lg == doctest::Approx(t00_second_order(beam, c)).epsilon(1e-9));
    }
}

TEST_CASE("mode fields are orthonormal on the grid") {
    const BeamParams beam{1.0};
    const int n = 300;
    const double half = 7.0;
    const double dx = 2.0 * half / n;
    const ModeIndex modes[] = {ModeIndex::hg(0, 0), ModeIndex::hg(1, 2), ModeIndex::lg(1, 1), ModeIndex::lg(0, -2)};
    for (const auto& m1 : modes) {
        for (const auto& m2 : modes) {
            std::complex<double> ip{};
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double x = -half + (i + 0.5) * dx, y = -half + (j + 0.5) * dx;
                    ip += std::conj(mode_field(m1, beam, x, y)) * mode_field(m2, beam, x, y);
                }
            ip *= dx * dx;
            const bool same = m1.basis == m2.basis && m1.first == m2.first && m1.second == m2.second;
            if (same) CHECK(std::abs(ip - 1.0) < 1e-9);
            if (m1.basis == m2.basis && !same) CHECK(std::abs(ip) < 1e-9);
        }
    }
}

TEST_CASE("grid preconditions and accuracy errors") {
    const BeamParams beam{1e-3};
    GridSpec g;
    g.extent = 4.0;
    CHECK_THROWS_AS(grid_overlap(kFund, kFund, beam, PhaseScreen{}, g), ParameterError);
    g = GridSpec{};
    g.points = 128;
    CHECK_THROWS_AS(grid_overlap(kFund, kFund, beam, PhaseScreen{}, g), ParameterError);

    // A chirped Gaussian stays band-limited, so the curvature has to be extreme
    // (w^2 g ~ 200) before 256 points alias.
    g = GridSpec{};
    g.points = 256;
    const auto wild = PhaseScreen::second_order({0, 0, 0, 2e8, 0, 0});
    CHECK_THROWS_AS(grid_overlap(kFund, kFund, beam, wild, g), AccuracyError);
    g.check_accuracy = false;
    CHECK_NOTHROW(grid_overlap(kFund, kFund, beam, wild, g));
}
