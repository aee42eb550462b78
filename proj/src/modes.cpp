#include "fsoturb/modes.hpp"

#include "fsoturb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace fsoturb {

namespace {

using cplx = std::complex<double>;
using std::numbers::pi;

bool is_hg(const ModeIndex& m) { return m.basis == Basis::HermiteGauss; }

/// Normalized Hermite functions psi_0..psi_order at t, by the stable
/// three-term recurrence.
void hermite_functions(double t, int order, std::vector<double>& out) {
    out.assign(static_cast<std::size_t>(order) + 1, 0.0);
    out[0] = std::pow(pi, -0.25) * std::exp(-0.5 * t * t);
    if (order >= 1) {
        out[1] = std::numbers::sqrt2 * t * out[0];
    }
    for (int n = 1; n < order; ++n) {
        out[n + 1] = std::sqrt(2.0 / (n + 1)) * t * out[n] - std::sqrt(double(n) / (n + 1)) * out[n - 1];
    }
}

/// Nodes of the 1-D midpoint rule on [-half, half].
std::vector<double> midpoint_nodes(double half, int n) {
    std::vector<double> x(static_cast<std::size_t>(n));
    const double dx = 2.0 * half / n;
    for (int i = 0; i < n; ++i) {
        x[i] = -half + (i + 0.5) * dx;
    }
    return x;
}

/// 1-D mode profiles u_0..u_order sampled on nodes: table[order][i].
std::vector<std::vector<double>> hg_profiles(const std::vector<double>& nodes, double w, int order) {
    std::vector<std::vector<double>> table(static_cast<std::size_t>(order) + 1,
                                           std::vector<double>(nodes.size()));
    const double scale = std::pow(2.0 / (w * w), 0.25);
    std::vector<double> psi;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        hermite_functions(std::numbers::sqrt2 * nodes[i] / w, order, psi);
        for (int m = 0; m <= order; ++m) {
            table[m][i] = scale * psi[m];
        }
    }
    return table;
}

std::vector<cplx> axis_phase(const std::vector<double>& nodes, double tilt, double curv) {
    std::vector<cplx> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double x = nodes[i];
        out[i] = std::polar(1.0, tilt * x + 0.5 * curv * x * x);
    }
    return out;
}

/// sum_j row[j] * exp(i s x y_j) with the cross phase advanced by recurrence.
template <class Row>
cplx cross_sum(const Row& row, const std::vector<double>& y, double sx) {
    const std::size_t n = y.size();
    if (sx == 0.0) {
        cplx acc{};
        for (std::size_t j = 0; j < n; ++j) acc += row(j);
        return acc;
    }
    const double dy = y[1] - y[0];
    const cplx step = std::polar(1.0, sx * dy);
    cplx rot = std::polar(1.0, sx * y[0]);
    cplx acc{};
    // Re-anchor every 64 steps to keep the recurrence error at rounding level.
    for (std::size_t j = 0; j < n; ++j) {
        if (j % 64 == 0) rot = std::polar(1.0, sx * y[j]);
        acc += row(j) * rot;
        rot *= step;
    }
    return acc;
}

double hg_overlap_on_grid(const ModeIndex& tx, const ModeIndex& rx, const BeamParams& beam,
                          const DistortionCoeffs& c, double half, int n) {
    const auto x = midpoint_nodes(half, n);
    const int order = std::max({tx.first, tx.second, rx.first, rx.second});
    const auto u = hg_profiles(x, beam.w, order);
    const auto px = axis_phase(x, c.a, c.g);
    const auto py = axis_phase(x, c.b, c.h);

    const auto& ux_t = u[tx.first];
    const auto& uy_t = u[tx.second];
    const auto& ux_r = u[rx.first];
    const auto& uy_r = u[rx.second];

    double nt_x = 0, nt_y = 0, nr_x = 0, nr_y = 0;
    for (int i = 0; i < n; ++i) {
        nt_x += ux_t[i] * ux_t[i];
        nt_y += uy_t[i] * uy_t[i];
        nr_x += ux_r[i] * ux_r[i];
        nr_y += uy_r[i] * uy_r[i];
    }

    std::vector<cplx> by(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) by[j] = uy_t[j] * uy_r[j] * py[j];

    cplx total{};
    if (c.s == 0.0) {
        cplx sx{}, sy{};
        for (int i = 0; i < n; ++i) {
            sx += ux_t[i] * ux_r[i] * px[i];
            sy += by[i];
        }
        total = sx * sy;
    } else {
        for (int i = 0; i < n; ++i) {
            const double wx = ux_t[i] * ux_r[i];
            if (wx == 0.0) continue;
            total += wx * px[i] * cross_sum([&](std::size_t j) { return by[j]; }, x, c.s * x[i]);
        }
    }
    return std::norm(total) / (nt_x * nt_y * nr_x * nr_y);
}

double general_overlap_on_grid(const ModeIndex& tx, const ModeIndex& rx, const BeamParams& beam,
                               const DistortionCoeffs& c, double half, int n) {
    const auto x = midpoint_nodes(half, n);
    const auto px = axis_phase(x, c.a, c.g);
    const auto py = axis_phase(x, c.b, c.h);

    double nt = 0, nr = 0;
    cplx total{};
    std::vector<cplx> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cplx et = mode_field(tx, beam, x[i], x[j]);
            const cplx er = mode_field(rx, beam, x[i], x[j]);
            nt += std::norm(et);
            nr += std::norm(er);
            row[j] = std::conj(er) * et * py[j];
        }
        total += px[i] * cross_sum([&](std::size_t j) { return row[j]; }, x, c.s * x[i]);
    }
    return std::norm(total) / (nt * nr);
}

double overlap_at(const ModeIndex& tx, const ModeIndex& rx, const BeamParams& beam,
                  const DistortionCoeffs& c, double half, int n) {
    if (is_hg(tx) && is_hg(rx)) {
        return hg_overlap_on_grid(tx, rx, beam, c, half, n);
    }
    return general_overlap_on_grid(tx, rx, beam, c, half, n);
}

std::vector<std::vector<double>> fundamental_table_at(const BeamParams& beam,
                                                      const DistortionCoeffs& c, int max_level,
                                                      double half, int n) {
    const auto x = midpoint_nodes(half, n);
    const auto u = hg_profiles(x, beam.w, max_level);
    const auto px = axis_phase(x, c.a, c.g);
    const auto py = axis_phase(x, c.b, c.h);
    const auto& u0 = u[0];
    const std::size_t levels = static_cast<std::size_t>(max_level) + 1;

    std::vector<double> norms(levels, 0.0);
    for (std::size_t m = 0; m < levels; ++m) {
        for (int i = 0; i < n; ++i) norms[m] += u[m][i] * u[m][i];
    }

    // amp[p][q] = sum_i u_p(x_i) u0(x_i) e^{i phi_x} sum_j u_q(y_j) u0(y_j) e^{i phi_y} e^{i s x y}
    std::vector<std::vector<cplx>> amp(levels, std::vector<cplx>(levels));
    if (c.s == 0.0) {
        std::vector<cplx> ax(levels), ay(levels);
        for (std::size_t m = 0; m < levels; ++m) {
            for (int i = 0; i < n; ++i) {
                ax[m] += u[m][i] * u0[i] * px[i];
                ay[m] += u[m][i] * u0[i] * py[i];
            }
        }
        for (std::size_t p = 0; p < levels; ++p)
            for (std::size_t q = 0; p + q < levels; ++q) amp[p][q] = ax[p] * ay[q];
    } else {
        std::vector<cplx> by(static_cast<std::size_t>(n));
        for (std::size_t q = 0; q < levels; ++q) {
            for (int j = 0; j < n; ++j) by[j] = u[q][j] * u0[j] * py[j];
            for (int i = 0; i < n; ++i) {
                const cplx inner =
                    u0[i] * px[i] * cross_sum([&](std::size_t j) { return by[j]; }, x, c.s * x[i]);
                for (std::size_t p = 0; p + q < levels; ++p) amp[p][q] += u[p][i] * inner;
            }
        }
    }

    std::vector<std::vector<double>> table(levels, std::vector<double>(levels, 0.0));
    for (std::size_t p = 0; p < levels; ++p)
        for (std::size_t q = 0; p + q < levels; ++q)
            table[p][q] = std::norm(amp[p][q]) / (norms[0] * norms[0] * norms[p] * norms[q]);
    return table;
}

void throw_accuracy(double estimate, const GridSpec& grid) {
    std::ostringstream msg;
    msg << "grid too coarse: discretization estimate " << estimate << " exceeds tolerance "
        << grid.tolerance << " (points=" << grid.points << ", extent=" << grid.extent << "w)";
    throw AccuracyError(msg.str(), estimate);
}

}  // namespace

PhaseScreen::PhaseScreen(const DistortionCoeffs& coeffs, ScreenOrder order)
    : coeffs_(coeffs), order_(order) {
    if (order == ScreenOrder::First && (coeffs.g != 0.0 || coeffs.h != 0.0 || coeffs.s != 0.0)) {
        throw ParameterError("first-order phase screen must have g = h = s = 0");
    }
    for (double v : {coeffs.phi0, coeffs.a, coeffs.b, coeffs.g, coeffs.h, coeffs.s}) {
        if (!std::isfinite(v)) throw ParameterError("phase screen coefficients must be finite");
    }
}

PhaseScreen PhaseScreen::conjugate() const {
    const auto& c = coeffs_;
    return PhaseScreen({-c.phi0, -c.a, -c.b, -c.g, -c.h, -c.s}, order_);
}

void validate(const ModeIndex& mode) {
    if (mode.first < 0 || (is_hg(mode) && mode.second < 0)) {
        throw ParameterError("mode indices m, n, p must be non-negative");
    }
}

void validate(const GridSpec& grid) {
    if (!(grid.extent >= 5.0)) throw ParameterError("grid extent must be at least 5 beam waists");
    if (grid.points < 256) throw ParameterError("grid resolution must be at least 256 points per axis");
    if (!(grid.tolerance > 0.0)) throw ParameterError("grid tolerance must be positive");
}

int power_level(const ModeIndex& mode) {
    validate(mode);
    return is_hg(mode) ? mode.first + mode.second : 2 * mode.first + std::abs(mode.second);
}

std::vector<ModeIndex> modes_in_level(int level, Basis basis) {
    if (level < 0) throw DomainError("power level must be non-negative");
    std::vector<ModeIndex> out;
    if (basis == Basis::HermiteGauss) {
        for (int m = level; m >= 0; --m) out.push_back(ModeIndex::hg(m, level - m));
    } else {
        for (int l = -level; l <= level; l += 2) out.push_back(ModeIndex::lg((level - std::abs(l)) / 2, l));
    }
    return out;
}

double xi(const BeamParams& beam, const DistortionCoeffs& coeffs) {
    validate(beam);
    return 0.25 * beam.w * beam.w * (coeffs.a * coeffs.a + coeffs.b * coeffs.b);
}

double t00_first_order(const BeamParams& beam, double a, double b) {
    return std::exp(-xi(beam, {0.0, a, b}));
}

double crosstalk_first_order(int level, double xi_value) {
    if (level < 0) throw DomainError("power level must be non-negative");
    if (!(xi_value >= 0.0)) throw DomainError("xi must be non-negative");
    if (xi_value == 0.0) return level == 0 ? 1.0 : 0.0;
    return std::exp(level * std::log(xi_value) - xi_value - std::lgamma(level + 1.0));
}

double t00_second_order(const BeamParams& beam, const DistortionCoeffs& c) {
    validate(beam);
    const double w2 = beam.w * beam.w;
    const double w4 = w2 * w2;
    const double det = c.s * c.s - c.g * c.h;
    const double denom = 1.0 + w4 / 16.0 * (c.g * c.g + c.h * c.h + 2.0 * c.s * c.s) +
                         w4 * w4 / 256.0 * det * det;
    const double a2 = c.a * c.a;
    const double b2 = c.b * c.b;
    // (sa - bg)^2 + (sb - ah)^2, written out to match the expanded closed form.
    const double mixed = c.s * c.s * a2 + c.s * c.s * b2 + a2 * c.h * c.h + b2 * c.g * c.g -
                         2.0 * c.a * c.b * c.s * c.g - 2.0 * c.a * c.b * c.s * c.h;
    const double numer = w2 / 16.0 * (4.0 * (a2 + b2) + w4 / 4.0 * mixed);
    return std::exp(-numer / denom) / std::sqrt(denom);
}

std::complex<double> mode_field(const ModeIndex& mode, const BeamParams& beam, double x, double y) {
    validate(mode);
    validate(beam);
    const double w = beam.w;
    if (is_hg(mode)) {
        const int order = std::max(mode.first, mode.second);
        std::vector<double> px, py;
        hermite_functions(std::numbers::sqrt2 * x / w, order, px);
        hermite_functions(std::numbers::sqrt2 * y / w, order, py);
        return std::sqrt(2.0) / w * px[mode.first] * py[mode.second];
    }
    const int p = mode.first;
    const int l = mode.second;
    const unsigned al = static_cast<unsigned>(std::abs(l));
    const double rho2 = 2.0 * (x * x + y * y) / (w * w);
    const double norm = std::sqrt(2.0 * std::exp(std::lgamma(p + 1.0) - std::lgamma(p + al + 1.0)) / pi) / w;
    // (sqrt2 r / w)^|l| e^{i l theta} = (sqrt2 (x +- i y) / w)^|l|
    const cplx z = std::numbers::sqrt2 / w * cplx(x, l >= 0 ? y : -y);
    cplx zl = 1.0;
    for (unsigned k = 0; k < al; ++k) zl *= z;
    return norm * zl * std::assoc_laguerre(static_cast<unsigned>(p), al, rho2) * std::exp(-0.5 * rho2);
}

double grid_overlap(const ModeIndex& tx, const ModeIndex& rx, const BeamParams& beam,
                    const PhaseScreen& screen, const GridSpec& grid) {
    validate(tx);
    validate(rx);
    validate(beam);
    validate(grid);
    const double half = grid.extent * beam.w;
    const double t = overlap_at(tx, rx, beam, screen.coeffs(), half, grid.points);
    if (grid.check_accuracy) {
        const double coarse = overlap_at(tx, rx, beam, screen.coeffs(), half, grid.points / 2);
        const double estimate = std::abs(t - coarse);
        if (!(estimate <= grid.tolerance)) throw_accuracy(estimate, grid);
    }
    return std::clamp(t, 0.0, 1.0);
}

std::vector<std::vector<double>> grid_overlaps_from_fundamental(const BeamParams& beam,
                                                                const PhaseScreen& screen,
                                                                int max_level,
                                                                const GridSpec& grid) {
    validate(beam);
    validate(grid);
    if (max_level < 0) throw DomainError("max_level must be non-negative");
    const double half = grid.extent * beam.w;
    auto table = fundamental_table_at(beam, screen.coeffs(), max_level, half, grid.points);
    if (grid.check_accuracy) {
        const auto coarse = fundamental_table_at(beam, screen.coeffs(), max_level, half, grid.points / 2);
        double estimate = 0.0;
        for (std::size_t p = 0; p < table.size(); ++p)
            for (std::size_t q = 0; q < table.size(); ++q)
                estimate = std::max(estimate, std::abs(table[p][q] - coarse[p][q]));
        if (!(estimate <= grid.tolerance)) throw_accuracy(estimate, grid);
    }
    for (auto& row : table)
        for (double& v : row) v = std::clamp(v, 0.0, 1.0);
    return table;
}

std::vector<double> grid_level_coupling(const BeamParams& beam, const PhaseScreen& screen,
                                        int max_level, const GridSpec& grid) {
    const auto table = grid_overlaps_from_fundamental(beam, screen, max_level, grid);
    std::vector<double> levels(static_cast<std::size_t>(max_level) + 1, 0.0);
    for (int p = 0; p <= max_level; ++p)
        for (int q = 0; p + q <= max_level; ++q) levels[p + q] += table[p][q];
    return levels;
}

}  // namespace fsoturb
