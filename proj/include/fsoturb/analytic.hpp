#pragma once

// Closed-form densities of first-order transmittance and cross-talk.
//
// Under tilt-only distortion xi = (w^2/4)(a^2 + b^2) is exponential with mean
// w^2 C_a / 2. The fundamental transmittance T = e^-xi then follows the power
// law gamma T^(gamma-1) with gamma = 2 / (w^2 C_a), and the level-N cross-talk
// T_N = xi^N e^-xi / N! has two preimages xi_1 <= N <= xi_2 given by the two
// real branches of the Lambert W function.

#include <utility>

namespace fsoturb {

enum class LambertBranch { Principal, Lower };

/// Exponent of the fundamental-mode power law.
struct PowerLawPdf {
    double gamma = 1.0;

    double pdf(double t) const;
    double cdf(double t) const;
    double mean() const { return gamma / (gamma + 1.0); }
};

/// Exponential law of xi with mean `scale` = w^2 C_a / 2.
struct XiPdf {
    double scale = 1.0;

    double pdf(double x) const;
    double cdf(double x) const;
};

/// -1/e, the branch point of W.
double lambert_branch_point();

/// Solves W e^W = x on the requested real branch.
double lambert_w(LambertBranch branch, double x);

/// gamma T^(gamma - 1), T in (0, 1].
double pdf_fundamental(double gamma, double t);
double cdf_fundamental(double gamma, double t);

/// N^N e^-N / N!, the largest value T_N can take.
double t_n_max(int level);

/// Both roots of xi^N e^-xi / N! = T, ordered xi_1 <= N <= xi_2.
std::pair<double, double> xi_roots(int level, double t);

/// Density of T_N for N >= 1 on (0, T_Nmax); `w2_c_a` is w^2 C_a.
double pdf_crosstalk(int level, double w2_c_a, double t);

/// P(T_N <= t) = 1 - e^(-xi_1/mu) + e^(-xi_2/mu), mu = w^2 C_a / 2.
double cdf_crosstalk(int level, double w2_c_a, double t);

/// w^2 C_a <-> gamma.
double gamma_from_w2_c_a(double w2_c_a);

}  // namespace fsoturb
