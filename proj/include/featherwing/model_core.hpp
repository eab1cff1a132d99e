#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace featherwing {

/**
 * Geometry, mass and stiffness of a straight cantilevered wing plus the
 * flight condition. All spanwise properties are uniform.
 *
 * Units are whatever the caller uses consistently; the presets use the
 * arbitrary units of the reference experiment.
 */
struct WingModel {
    double half_span = 0.0;          ///< l
    double chord = 0.0;              ///< b
    double linear_mass = 0.0;        ///< m, mass per unit span
    double sc_gc_offset = 0.0;       ///< sigma_T, stiffness-centre to gravity-centre distance
    double torsion_inertia = 0.0;    ///< J_m, about the stiffness axis, per unit span
    double bending_stiffness = 0.0;  ///< EJ
    double torsion_stiffness = 0.0;  ///< GJ_k
    double sc_position = 0.0;        ///< x_0, from the leading edge
    double lift_slope = 0.0;         ///< C_y^alpha, 1/rad
    double airspeed = 0.0;           ///< V
    double air_density = 0.0;        ///< rho

    /// Throws ParameterError naming the first violated constraint.
    void validate() const;

    WingModel with_airspeed(double v) const {
        WingModel copy = *this;
        copy.airspeed = v;
        return copy;
    }
};

/// Polar inertia of a thin elliptical section, J_m = (pi a b / 4) a^2 b^2 / (4 (a^2 + b^2)).
double elliptical_torsion_inertia(double height, double chord);

/// f and its first four spatial derivatives at one span station.
struct BendingSample {
    double f = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double d4 = 0.0;
};

/// phi and its first two spatial derivatives at one span station.
struct TorsionSample {
    double phi = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// First cantilever eigenvalue, root of 1 + cos(x) cosh(x) = 0.
inline constexpr double kCantileverLambda1 = 1.8751040687119611664;

/**
 * Assumed mode shapes of the one-bending / one-torsion reduction.
 *
 * Bending: first Euler-Bernoulli cantilever mode
 *   f = cosh(kz) - cos(kz) - s (sinh(kz) - sin(kz)),  k = lambda_1 / l,
 * normalised so that f(l) = 2 and (1/l) * integral f^2 = 1.
 * Torsion: quarter sine phi = sin(pi z / 2l), max |phi| = 1.
 */
class ModeShapes {
public:
    explicit ModeShapes(double half_span);

    double span() const noexcept { return half_span_; }

    /// Throws DomainError when z is outside [0, l].
    BendingSample bending(double z) const;
    TorsionSample torsion(double z) const;

private:
    void check(double z) const;

    double half_span_;
    double wavenumber_;
    double sigma_;
};

BendingSample eval_bending_mode(double z, const WingModel& wing);
TorsionSample eval_torsion_mode(double z, const WingModel& wing);

/**
 * Composite Simpson rule on [a, b] with `panels` parabolic segments, i.e.
 * 2 * panels subintervals of width (b - a) / (2 * panels).
 *
 * Throws ParameterError for panels < 2 and NumericError, naming the
 * abscissa, when fn returns a non-finite value.
 */
double simpson(const std::function<double(double)>& fn, double a, double b, int panels);

/// Simpson integral of fn over the span [0, l].
double integrate(const std::function<double(double)>& fn, double half_span, int panels);

inline constexpr int kDefaultPanels = 256;

/// Modal mass, damping and stiffness constants of the reduced model and the
/// derived first-order state matrix rows.
struct ModalCoefficients {
    double a11 = 0.0, a12 = 0.0, a13 = 0.0;
    double a21 = 0.0, a22 = 0.0;
    double b11 = 0.0, b12 = 0.0, b13 = 0.0;
    double b21 = 0.0, b22 = 0.0, b23 = 0.0;
    double b23_aero = 0.0;     ///< b23^(1), the V^2 part of b23
    double b23_elastic = 0.0;  ///< b23^(2) = integral (GJ_k phi')' phi

    /// Inverse of the mass matrix [[a11, b11], [a21, b21]].
    double d11 = 0.0, d12 = 0.0, d21 = 0.0, d22 = 0.0;

    /// xdot2 = sum_k c1[k] x_k + F1,  xdot4 = sum_k c2[k] x_k + F2.
    double c1[4] = {0.0, 0.0, 0.0, 0.0};
    double c2[4] = {0.0, 0.0, 0.0, 0.0};

    std::string quadrature_rule = "composite-simpson";
    int panels = kDefaultPanels;

    /// Name/value pairs in a stable order, as printed by `coeffs`.
    std::vector<std::pair<std::string, double>> table() const;
};

/// Throws ModelError when the mass matrix is numerically singular.
ModalCoefficients modal_coefficients(const WingModel& wing, const ModeShapes& modes,
                                     int panels = kDefaultPanels);

/// The two sides of the integration-by-parts identities for a13 and b23^(2).
struct EnergyIdentity {
    double a13_by_parts = 0.0;         ///< integral EJ (f'')^2
    double b23_elastic_by_parts = 0.0; ///< -integral GJ_k (phi')^2
};

EnergyIdentity energy_identity(const WingModel& wing, const ModeShapes& modes,
                               int panels = kDefaultPanels);

}  // namespace featherwing
