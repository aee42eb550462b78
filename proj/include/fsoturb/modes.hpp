#pragma once

// Gaussian mode fields and overlap-integral transmittance through a thin
// polynomial phase screen
//
//   phi(x, y) = phi0 + a x + b y + g x^2/2 + h y^2/2 + s x y.

#include "fsoturb/spectrum.hpp"

#include <complex>
#include <vector>

namespace fsoturb {

struct DistortionCoeffs {
    double phi0 = 0.0;  ///< piston [rad]; never affects |overlap|^2
    double a = 0.0;     ///< x tilt [rad/m]
    double b = 0.0;     ///< y tilt [rad/m]
    double g = 0.0;     ///< d2phi/dx2 [rad/m^2]
    double h = 0.0;     ///< d2phi/dy2 [rad/m^2]
    double s = 0.0;     ///< d2phi/dxdy [rad/m^2]

    double phase(double x, double y) const {
        return phi0 + a * x + b * y + 0.5 * g * x * x + 0.5 * h * y * y + s * x * y;
    }
};

enum class Basis { HermiteGauss, LaguerreGauss };

/// HG(m, n) or LG(p, l). For LG the second index is the signed azimuthal l.
struct ModeIndex {
    Basis basis = Basis::HermiteGauss;
    int first = 0;
    int second = 0;

    static ModeIndex hg(int m, int n) { return {Basis::HermiteGauss, m, n}; }
    static ModeIndex lg(int p, int l) { return {Basis::LaguerreGauss, p, l}; }
};

enum class ScreenOrder { First, Second };

/// A realization of the phase mask. First-order screens carry no curvature.
class PhaseScreen {
public:
    PhaseScreen() = default;
    PhaseScreen(const DistortionCoeffs& coeffs, ScreenOrder order);

    static PhaseScreen first_order(double a, double b) {
        return PhaseScreen({0.0, a, b, 0.0, 0.0, 0.0}, ScreenOrder::First);
    }
    static PhaseScreen second_order(const DistortionCoeffs& c) {
        return PhaseScreen(c, ScreenOrder::Second);
    }

    const DistortionCoeffs& coeffs() const { return coeffs_; }
    ScreenOrder order() const { return order_; }
    /// Complex-conjugate mask e^{-i phi}.
    PhaseScreen conjugate() const;

private:
    DistortionCoeffs coeffs_{};
    ScreenOrder order_ = ScreenOrder::First;
};

/// Square midpoint grid covering [-extent*w, extent*w]^2.
struct GridSpec {
    double extent = 5.0;   ///< half-width in units of the beam waist
    int points = 512;      ///< nodes per axis
    double tolerance = 1e-6;
    bool check_accuracy = true;  ///< compare against a half-resolution pass
};

void validate(const ModeIndex& mode);
void validate(const GridSpec& grid);

/// N = m + n (HG) or 2p + |l| (LG). Level N holds N + 1 modes.
int power_level(const ModeIndex& mode);

/// All modes of level N in the given basis, N + 1 of them.
std::vector<ModeIndex> modes_in_level(int level, Basis basis = Basis::HermiteGauss);

/// xi = (w^2 / 4)(a^2 + b^2)
double xi(const BeamParams& beam, const DistortionCoeffs& coeffs);

/// exp(-(w^2/4)(a^2 + b^2))
double t00_first_order(const BeamParams& beam, double a, double b);

/// Power coupled from the fundamental into the whole level-N family under
/// tilt only: xi^N e^-xi / N!.
double crosstalk_first_order(int level, double xi);

/// Fundamental-mode transmittance with tilt and curvature, in closed form.
double t00_second_order(const BeamParams& beam, const DistortionCoeffs& coeffs);

/// Unit-normalized field of a mode at (x, y).
std::complex<double> mode_field(const ModeIndex& mode, const BeamParams& beam, double x, double y);

/// |<rx| e^{i phi} |tx>|^2 / (<tx|tx><rx|rx>) evaluated on a grid.
///
/// Throws AccuracyError when the half-resolution estimate of the
/// discretization error exceeds grid.tolerance.
double grid_overlap(const ModeIndex& tx, const ModeIndex& rx, const BeamParams& beam,
                    const PhaseScreen& screen, const GridSpec& grid = {});

/// Coupling from HG(0,0) into every HG(m, n) with m + n <= max_level, as a
/// (max_level+1) x (max_level+1) table indexed [m][n] (entries with
/// m + n > max_level are zero). One grid pass serves all receive modes.
std::vector<std::vector<double>> grid_overlaps_from_fundamental(const BeamParams& beam,
                                                                const PhaseScreen& screen,
                                                                int max_level,
                                                                const GridSpec& grid = {});

/// Per-level sums of grid_overlaps_from_fundamental, indexed by N.
std::vector<double> grid_level_coupling(const BeamParams& beam, const PhaseScreen& screen,
                                        int max_level, const GridSpec& grid = {});

}  // namespace fsoturb
