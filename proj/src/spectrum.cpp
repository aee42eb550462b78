#include "fsoturb/spectrum.hpp"

#include "fsoturb/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace fsoturb {

namespace {

using std::numbers::pi;

constexpr double kExp = -11.0 / 6.0;

/// r0-free part of W_phi times the Gaussian filter, times f^(2k+1).
double moment_integrand(double f, int k, double kappa2, double gauss_c) {
    if (f == 0.0) {
        return 0.0;
    }
    const double f2 = f * f;
    return std::pow(f, 2 * k + 1) * std::pow(f2 + kappa2, kExp) * std::exp(-gauss_c * f2);
}

}  // namespace

double ModeFilter::gaussian_constant() const {
    switch (kind) {
        case FilterKind::IntensitySpectrum:
            return pi * pi * w * w;
        case FilterKind::FieldSpectrum:
            return 2.0 * pi * pi * w * w;
    }
    return 0.0;
}

void validate(const TurbulenceParams& params) {
    if (!(params.r0 > 0.0) || !std::isfinite(params.r0)) {
        throw ParameterError("r0 must be positive and finite");
    }
    if (!(params.l0 > 0.0) || !std::isfinite(params.l0)) {
        throw ParameterError("l0 must be positive and finite");
    }
    if (!(params.L0 > params.l0) || !std::isfinite(params.L0)) {
        throw ParameterError("L0 must be finite and greater than l0");
    }
}

void validate(const BeamParams& beam) {
    if (!(beam.w > 0.0) || !std::isfinite(beam.w)) {
        throw ParameterError("beam waist w must be positive and finite");
    }
}

void validate(const ModeFilter& filter) {
    if (!(filter.w > 0.0) || !std::isfinite(filter.w)) {
        throw ParameterError("mode filter waist w must be positive and finite");
    }
}

double vartheta_constant() {
    static const double value = [] {
        const double g116 = std::tgamma(11.0 / 6.0);
        const double g65 = std::tgamma(6.0 / 5.0);
        return 2.0 * std::numbers::sqrt2 * g116 * g116 / std::pow(pi, 11.0 / 3.0) *
               std::pow(0.6 * g65, 5.0 / 6.0);
    }();
    return value;
}

double phase_psd(const TurbulenceParams& params, double f) {
    validate(params);
    if (!(f >= 0.0)) {
        throw DomainError("spatial frequency must be non-negative");
    }
    const double kappa2 = 1.0 / (params.L0 * params.L0);
    return vartheta_constant() * std::pow(params.r0, -5.0 / 3.0) * std::pow(f * f + kappa2, kExp) *
           std::exp(-params.l0 * params.l0 * f * f);
}

double mode_filter_value(const ModeFilter& filter, double f) {
    validate(filter);
    if (!(f >= 0.0)) {
        throw DomainError("spatial frequency must be non-negative");
    }
    return std::exp(-filter.gaussian_constant() * f * f);
}

double frequency_cutoff(const TurbulenceParams& params, const ModeFilter& filter) {
    const double width = std::sqrt(filter.gaussian_constant());
    return 10.0 / std::min(params.l0, width);
}

Integral spectral_moment(const TurbulenceParams& params, const ModeFilter& filter, int k,
                         const QuadratureOptions& opts) {
    validate(params);
    validate(filter);
    if (k < 0) {
        throw DomainError("moment order must be non-negative");
    }
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

    const double kappa = 1.0 / params.L0;
    const double kappa2 = kappa * kappa;
    const double gauss_c = params.l0 * params.l0 + filter.gaussian_constant();
    const double f_max = frequency_cutoff(params, filter);

    // Unit panels in t = ln f resolve the outer-scale knee at f ~ 1/L0 and the
    // Gaussian roll-off separately, however far apart they are. Below
    // f_head = kappa e^-20 the integrand is f^(2k+1) kappa^(-11/3) to relative
    // O(e^-40), and above the point where the Gaussian underflows it is zero.
    const double t_head = std::log(kappa) - 20.0;
    const double f_head = std::exp(t_head);
    const double t_top = std::log(std::min(f_max, std::sqrt(745.0 / gauss_c)));
    Integral out;
    out.value = std::pow(f_head, 2 * k + 2) / (2 * k + 2) * std::pow(kappa2, kExp);
    for (double a = t_head; a < t_top; a += 1.0) {
        const double b = std::min(a + 1.0, t_top);
        double err = 0.0;
        const double v = Rule::integrate(
            [&](double t) {
                const double f = std::exp(t);
                return f * moment_integrand(f, k, kappa2, gauss_c);
            },
            a, b, opts.max_depth, opts.rel_tol, &err);
        out.value += v;
        out.abs_error += err;
        ++out.panels;
    }

    if (!std::isfinite(out.value) || out.abs_error > opts.max_rel_error * std::abs(out.value)) {
        std::ostringstream msg;
        msg << "spectral moment k=" << k << " did not converge: value=" << out.value
            << " abs_error=" << out.abs_error << " panels=" << out.panels << " f_max=" << f_max;
        throw NumericError(msg.str());
    }

    const double scale = vartheta_constant() * std::pow(params.r0, -5.0 / 3.0);
    out.value *= scale;
    out.abs_error *= scale;
    return out;
}

DistortionVariances compute_variances(const TurbulenceParams& params, const ModeFilter& filter,
                                      GhCoupling coupling, const QuadratureOptions& opts) {
    const Integral m1 = spectral_moment(params, filter, 1, opts);
    const Integral m2 = spectral_moment(params, filter, 2, opts);
    const double pi3 = pi * pi * pi;
    const double pi5 = pi3 * pi * pi;

    DistortionVariances v;
    v.c_a = 4.0 * pi3 * m1.value;
    v.c_s = 4.0 * pi5 * m2.value;
    v.c_g = 3.0 * v.c_s;
    v.gh_coupling = coupling;
    return v;
}

double c_a_kernel(double l0, double L0, const ModeFilter& filter, const QuadratureOptions& opts) {
    return compute_variances(TurbulenceParams{1.0, l0, L0}, filter, GhCoupling::Independent, opts)
        .c_a;
}

std::string_view to_string(FilterKind kind) {
    return kind == FilterKind::IntensitySpectrum ? "intensity-spectrum" : "field-spectrum";
}

FilterKind filter_kind_from_string(std::string_view name) {
    if (name == "intensity-spectrum") return FilterKind::IntensitySpectrum;
    if (name == "field-spectrum") return FilterKind::FieldSpectrum;
    throw ParameterError("unknown mode filter kind '" + std::string(name) + "'");
}

std::string_view to_string(GhCoupling coupling) {
    return coupling == GhCoupling::Independent ? "independent" : "correlated";
}

GhCoupling gh_coupling_from_string(std::string_view name) {
    if (name == "independent") return GhCoupling::Independent;
    if (name == "correlated") return GhCoupling::Correlated;
    throw ParameterError("unknown gh_coupling '" + std::string(name) + "'");
}

}  // namespace fsoturb
