#pragma once

// von Karman phase spectrum and the variances of the Taylor coefficients of
// the turbulent phase, averaged over the receive mode.
//
// Units: lengths in meters, spatial frequency f in cycles per meter. The
// derivative coefficients a, b are in rad/m and g, h, s in rad/m^2.

#include <string_view>

namespace fsoturb {

struct TurbulenceParams {
    double r0 = 0.02;    ///< Fried parameter [m]
    double l0 = 2.7e-3;  ///< inner scale [m]
    double L0 = 51e-3;   ///< outer scale [m]
};

struct BeamParams {
    double w = 1.1e-3;  ///< Gaussian beam waist [m]
};

enum class FilterKind { IntensitySpectrum, FieldSpectrum };

/// |F(f)|^2 for the fundamental mode, normalized so that F(0) = 1.
struct ModeFilter {
    FilterKind kind = FilterKind::IntensitySpectrum;
    double w = 1.1e-3;

    /// c in |F(f)|^2 = exp(-c f^2).
    double gaussian_constant() const;
};

enum class GhCoupling { Independent, Correlated };

struct DistortionVariances {
    double c_a = 0.0;  ///< Var(a) = Var(b) [(rad/m)^2]
    double c_g = 0.0;  ///< Var(g) = Var(h) [(rad/m^2)^2]
    double c_s = 0.0;  ///< Var(s), and Cov(g, h) when correlated
    GhCoupling gh_coupling = GhCoupling::Independent;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;  ///< per-panel relative tolerance
    double max_rel_error = 1e-8;  ///< reported error above this throws
    unsigned max_depth = 20;
};

/// A quadrature result with its error bound.
struct Integral {
    double value = 0.0;
    double abs_error = 0.0;
    unsigned panels = 0;
};

void validate(const TurbulenceParams& params);
void validate(const BeamParams& beam);
void validate(const ModeFilter& filter);

/// 2 sqrt(2) Gamma(11/6)^2 / pi^(11/3) * [(3/5) Gamma(6/5)]^(5/6) ~ 0.0229.
double vartheta_constant();

/// W_phi(f) = vartheta r0^(-5/3) (f^2 + L0^-2)^(-11/6) exp(-l0^2 f^2).
double phase_psd(const TurbulenceParams& params, double f);

double mode_filter_value(const ModeFilter& filter, double f);

/// Upper integration limit: 10 / min(l0, filter width), Gaussian tail ~e^-100.
double frequency_cutoff(const TurbulenceParams& params, const ModeFilter& filter);

/// Integral over f in [0, f_max] of f^(2k+1) W_phi(f) |F(f)|^2.
///
/// The variance of a Taylor coefficient of order k is an angular factor
/// times this moment: C_a = 4 pi^3 M_1, C_g = 12 pi^5 M_2, C_s = 4 pi^5 M_2.
/// Higher orders follow the same pattern with their own angular integrals.
Integral spectral_moment(const TurbulenceParams& params, const ModeFilter& filter, int k,
                         const QuadratureOptions& opts = {});

DistortionVariances compute_variances(const TurbulenceParams& params, const ModeFilter& filter,
                                      GhCoupling coupling = GhCoupling::Independent,
                                      const QuadratureOptions& opts = {});

/// c_a evaluated at r0 = 1 m; c_a(r0) = r0^(-5/3) * kernel.
double c_a_kernel(double l0, double L0, const ModeFilter& filter,
                  const QuadratureOptions& opts = {});

std::string_view to_string(FilterKind kind);
FilterKind filter_kind_from_string(std::string_view name);
std::string_view to_string(GhCoupling coupling);
GhCoupling gh_coupling_from_string(std::string_view name);

}  // namespace fsoturb
