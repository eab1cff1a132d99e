#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "featherwing/model_core.hpp"

namespace featherwing {

enum class Side { lower, upper };

std::string_view to_string(Side side);
Side side_from_string(std::string_view text);

/// One feather: its span station, chordwise extent in the angular chord
/// coordinate psi (x = b/2 (1 - cos psi)), surface side and angle bounds.
struct FeatherSpec {
    int index = 0;
    double span_position = 0.0;  ///< z_bar
    double psi_start = 0.0;      ///< psi*, hinge line
    double psi_end = 0.0;        ///< psi_k, trailing edge of the feather
    Side side = Side::lower;
    double beta_min = 0.0;       ///< 0 on the lower side, beta^- < 0 on the upper side
    double beta_max = 0.0;       ///< beta^+ > 0 on the lower side, 0 on the upper side

    void validate(double half_span) const;
};

/// Builds the bound interval for a side: [0, limit] (lower) or [-limit, 0] (upper).
FeatherSpec make_feather(int index, double span_position, double psi_start, double psi_end,
                         Side side, double angle_limit);

/// psi = arccos(1 - 2 x / b).
double psi_from_x(double x, double chord);
double x_from_psi(double psi, double chord);

struct ShapeFactors {
    double G = 0.0, H = 0.0, I = 0.0, J = 0.0;
};

/// Thin-aerofoil shape factors of a flap-like element between psi* and psi_k.
ShapeFactors shape_factors(double psi_start, double psi_end);

/// Per-unit-span force/moment coefficients: q_u = A V^2 beta + B V betadot, m_u = C V^2 beta + D V betadot.
struct FeatherCoeffs {
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0;
};

FeatherCoeffs feather_coeffs(const ShapeFactors& sf, const WingModel& wing);
FeatherCoeffs feather_coeffs(const FeatherSpec& spec, const WingModel& wing);

struct FeatherInfluence {
    ShapeFactors shape;
    FeatherCoeffs coeffs;
    double A_bar = 0.0, B_bar = 0.0, C_bar = 0.0, D_bar = 0.0;
    double R1 = 0.0, s1 = 0.0, R2 = 0.0, s2 = 0.0;
};

/**
 * Modal projections and state-space influence coefficients of every feather.
 *
 * Each feather acts over a spanwise footprint of width `footprint` centred
 * on its station; the projection is A * integral over the footprint of f
 * (phi for C, D). A footprint of zero width projects by point evaluation,
 * A * f(z_bar). Throws DomainError when a footprint leaves [0, l].
 */
std::vector<FeatherInfluence> influence_coeffs(std::span<const FeatherSpec> specs,
                                               const WingModel& wing, const ModeShapes& modes,
                                               const ModalCoefficients& coeffs, double footprint,
                                               int panels = 32);

}  // namespace featherwing
