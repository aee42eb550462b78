#include "fsoturb/analytic.hpp"

#include "fsoturb/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fsoturb {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive");
}

void require_level(int level) {
    if (level < 1) throw DomainError("cross-talk level must be >= 1");
}

double lambert_guess(LambertBranch branch, double x) {
    const double p2 = 2.0 * (std::numbers::e * x + 1.0);
    const double p = std::sqrt(std::max(p2, 0.0));
    if (branch == LambertBranch::Principal) {
        if (x < -0.25) {
            return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
        }
        if (x < 3.0) {
            return std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
        }
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        return l1 - l2 + l2 / l1;
    }
    if (x < -0.25) {
        return -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;
    }
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    return l1 - l2 + l2 / l1;
}

/// G(v) = 1 - (1 - v) e^v, the branch-point residual in v = W + 1.
double branch_residual(double v) {
    if (std::abs(v) < 0.1) {
        // sum_{k>=2} (k - 1) v^k / k!
        double term = v * v / 2.0;
        double sum = term;
        for (int k = 3; k < 24; ++k) {
            term *= v / k;
            sum += (k - 1) * term;
        }
        return sum;
    }
    return v * std::exp(v) - std::expm1(v);
}

/// Solves G(v) = q for v = W + 1 on the given branch, where q = 1 + e x.
/// Keeps full relative accuracy in W + 1 as x approaches -1/e.
double branch_offset(LambertBranch branch, double q) {
    if (q <= 0.0) return 0.0;
    const double sign = branch == LambertBranch::Principal ? 1.0 : -1.0;
    const double p = sign * std::sqrt(2.0 * q);
    double v = p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    for (int iter = 0; iter < 50; ++iter) {
        const double ev = std::exp(v);
        const double f = branch_residual(v) - q;
        const double d1 = v * ev;
        const double d2 = (1.0 + v) * ev;
        if (d1 == 0.0) break;
        const double step = f / (d1 - 0.5 * f * d2 / d1);
        v -= step;
        if (std::abs(step) <= 2.0 * kEps * std::abs(v)) break;
    }
    return v;
}

struct Roots {
    double x1, x2;  ///< xi_1 <= N <= xi_2
    double d1, d2;  ///< |N - xi_i|, without cancellation
};

Roots solve_roots(int level, double t) {
    require_level(level);
    const double tmax = t_n_max(level);
    if (!(t > 0.0)) throw DomainError("xi_roots requires T > 0");
    if (t > tmax) {
        if (t - tmax > 16.0 * kEps * tmax) {
            throw DomainError("xi_roots: T exceeds T_Nmax, no real roots");
        }
        t = tmax;
    }
    const double n = level;
    // 1 + e x with x = -(T N!)^(1/N) / N equals 1 - (T / T_Nmax)^(1/N).
    const double log_ratio = std::log(t) - (n * std::log(n) - n - std::lgamma(n + 1.0));
    const double q = -std::expm1(std::min(log_ratio, 0.0) / n);
    if (q < 0.25) {
        const double v1 = branch_offset(LambertBranch::Principal, q);
        const double v2 = branch_offset(LambertBranch::Lower, q);
        return {n * (1.0 - v1), n * (1.0 - v2), n * std::abs(v1), n * std::abs(v2)};
    }
    const double arg = -std::exp((std::log(t) + std::lgamma(n + 1.0)) / n) / n;
    const double w1 = lambert_w(LambertBranch::Principal, arg);
    const double w2 = lambert_w(LambertBranch::Lower, arg);
    return {-n * w1, -n * w2, n * std::abs(1.0 + w1), n * std::abs(1.0 + w2)};
}

}  // namespace

double lambert_branch_point() { return -std::exp(-1.0); }

double lambert_w(LambertBranch branch, double x) {
    const double bp = lambert_branch_point();
    if (std::isnan(x)) throw DomainError("lambert_w: NaN argument");
    // Arguments rounded a few ulps below -1/e are treated as the branch point.
    if (x < bp) {
        if (bp - x <= 8.0 * kEps * -bp) return -1.0;
        throw DomainError("lambert_w: argument " + std::to_string(x) + " below -1/e");
    }
    if (branch == LambertBranch::Lower && !(x < 0.0)) {
        throw DomainError("lambert_w: lower branch requires -1/e <= x < 0");
    }
    if (x == bp) return -1.0;
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x;
    const double q = std::fma(std::numbers::e, x, 1.0);
    if (q < 0.25) return -1.0 + branch_offset(branch, std::max(q, 0.0));

    double w = lambert_guess(branch, x);
    for (int iter = 0; iter < 64; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        // Halley step.
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        const double next = w - step;
        if (!std::isfinite(next)) break;
        if (std::abs(step) <= 4.0 * kEps * std::abs(next)) {
            w = next;
            break;
        }
        w = next;
    }
    // The iterate can cross w = -1 near the branch point.
    if (branch == LambertBranch::Principal && w < -1.0) w = -1.0;
    if (branch == LambertBranch::Lower && w > -1.0) w = -1.0;
    return w;
}

double PowerLawPdf::pdf(double t) const { return pdf_fundamental(gamma, t); }
double PowerLawPdf::cdf(double t) const { return cdf_fundamental(gamma, t); }

double XiPdf::pdf(double x) const {
    if (!(scale > 0.0)) throw DomainError("xi scale must be positive");
    return x < 0.0 ? 0.0 : std::exp(-x / scale) / scale;
}

double XiPdf::cdf(double x) const {
    if (!(scale > 0.0)) throw DomainError("xi scale must be positive");
    return x <= 0.0 ? 0.0 : -std::expm1(-x / scale);
}

double pdf_fundamental(double gamma, double t) {
    require_gamma(gamma);
    if (!(t > 0.0)) throw DomainError("pdf_fundamental requires T > 0");
    if (t > 1.0) return 0.0;
    return gamma * std::pow(t, gamma - 1.0);
}

double cdf_fundamental(double gamma, double t) {
    require_gamma(gamma);
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return std::pow(t, gamma);
}

double t_n_max(int level) {
    require_level(level);
    const double n = level;
    return std::exp(n * std::log(n) - n - std::lgamma(n + 1.0));
}

std::pair<double, double> xi_roots(int level, double t) {
    const Roots r = solve_roots(level, t);
    return {r.x1, r.x2};
}

double pdf_crosstalk(int level, double w2_c_a, double t) {
    require_level(level);
    if (!(w2_c_a > 0.0)) throw DomainError("w^2 C_a must be positive");
    const double tmax = t_n_max(level);
    if (!(t > 0.0)) throw DomainError("pdf_crosstalk requires T > 0");
    if (t >= tmax) throw DomainError("pdf_crosstalk: T at or beyond T_Nmax (endpoint singularity)");
    const Roots r = solve_roots(level, t);
    const double rate = 2.0 / w2_c_a;
    const double term1 = r.x1 / r.d1 * std::exp(-rate * r.x1);
    const double term2 = r.x2 / r.d2 * std::exp(-rate * r.x2);
    return rate / t * (term1 + term2);
}

double cdf_crosstalk(int level, double w2_c_a, double t) {
    require_level(level);
    if (!(w2_c_a > 0.0)) throw DomainError("w^2 C_a must be positive");
    if (t <= 0.0) return 0.0;
    if (t >= t_n_max(level)) return 1.0;
    const auto [x1, x2] = xi_roots(level, t);
    const double rate = 2.0 / w2_c_a;
    return -std::expm1(-rate * x1) + std::exp(-rate * x2);
}

double gamma_from_w2_c_a(double w2_c_a) {
    if (!(w2_c_a > 0.0)) throw DomainError("w^2 C_a must be positive");
    return 2.0 / w2_c_a;
}

}  // namespace fsoturb
