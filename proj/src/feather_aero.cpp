#include "featherwing/feather_aero.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "featherwing/errors.hpp"

namespace featherwing {

std::string_view to_string(Side side) { return side == Side::lower ? "lower" : "upper"; }

Side side_from_string(std::string_view text) {
    if (text == "lower") return Side::lower;
    if (text == "upper") return Side::upper;
    throw ParameterError("feather side must be 'lower' or 'upper', got '" + std::string(text) + "'");
}

void FeatherSpec::validate(double half_span) const {
    std::ostringstream os;
    os << "feather " << index << ": ";
    if (!(psi_start >= 0.0 && psi_start <= psi_end && psi_end <= std::numbers::pi))
        throw ParameterError(os.str() + "need 0 <= psi* <= psi_k <= pi");
    if (!(span_position >= 0.0 && span_position <= half_span))
        throw DomainError(os.str() + "span position outside [0, l]");
    if (side == Side::lower && !(beta_min == 0.0 && beta_max > 0.0))
        throw ParameterError(os.str() + "lower-side bounds must be [0, beta+] with beta+ > 0");
    if (side == Side::upper && !(beta_max == 0.0 && beta_min < 0.0))
        throw ParameterError(os.str() + "upper-side bounds must be [beta-, 0] with beta- < 0");
}

FeatherSpec make_feather(int index, double span_position, double psi_start, double psi_end,
                         Side side, double angle_limit) {
    FeatherSpec s;
    s.index = index;
    s.span_position = span_position;
    s.psi_start = psi_start;
    s.psi_end = psi_end;
    s.side = side;
    if (side == Side::lower) {
        s.beta_min = 0.0;
        s.beta_max = angle_limit;
    } else {
        s.beta_min = -angle_limit;
        s.beta_max = 0.0;
    }
    return s;
}

double psi_from_x(double x, double chord) {
    if (!(x >= 0.0 && x <= chord)) {
        std::ostringstream os;
        os << "chordwise position x=" << x << " outside [0, " << chord << "]";
        throw DomainError(os.str());
    }
    // Clamp against rounding just outside [-1, 1].
    const double c = std::clamp(1.0 - 2.0 * x / chord, -1.0, 1.0);
    return std::acos(c);
}

double x_from_psi(double psi, double chord) { return 0.5 * chord * (1.0 - std::cos(psi)); }

ShapeFactors shape_factors(double psi_start, double psi_end) {
    if (psi_start > psi_end) throw ParameterError("shape_factors: psi* must not exceed psi_k");

    const double dpsi = psi_end - psi_start;
    const double mid = 0.5 * (psi_end + psi_start);
    // sin(ka) - sin(kb) in product form: exact zero for a zero-width element, no cancellation.
    auto dsin = [&](double k) { return 2.0 * std::cos(k * mid) * std::sin(0.5 * k * dpsi); };
    const double ds1 = dsin(1.0);
    const double ds2 = dsin(2.0);
    const double ds3 = dsin(3.0);
    const double c = std::cos(psi_start);
    const double pi = std::numbers::pi;

    ShapeFactors sf;
    sf.G = (dpsi - ds1) / pi;
    sf.H = (c * dpsi - ds1) / (2.0 * pi) - c * ds1 + 0.5 * (dpsi + 0.5 * ds2);
    sf.I = (2.0 * ds1 + ds2) / 8.0;
    sf.J = -(-2.0 * c * ds1 + dpsi) / 16.0 - (0.5 - c) * ds2 / 16.0 - (ds1 + ds3 / 3.0) / 16.0;
    return sf;
}

FeatherCoeffs feather_coeffs(const ShapeFactors& sf, const WingModel& wing) {
    const double b = wing.chord;
    const double rho = wing.air_density;
    const double cy = wing.lift_slope;
    const double arm = wing.sc_position / b - 0.25;
    FeatherCoeffs fc;
    fc.A = cy * sf.G * rho * b * b;
    fc.B = cy * sf.H * rho * b * b * b;
    fc.C = -(sf.I + cy * arm * sf.G) * rho * b * b;
    fc.D = -(sf.J + cy * arm * sf.H) * rho * b * b * b;
    return fc;
}

FeatherCoeffs feather_coeffs(const FeatherSpec& spec, const WingModel& wing) {
    return feather_coeffs(shape_factors(spec.psi_start, spec.psi_end), wing);
}

std::vector<FeatherInfluence> influence_coeffs(std::span<const FeatherSpec> specs,
                                               const WingModel& wing, const ModeShapes& modes,
                                               const ModalCoefficients& coeffs, double footprint,
                                               int panels) {
    if (!(footprint >= 0.0)) throw ParameterError("feather footprint width must be >= 0");
    const double l = wing.half_span;
    const double v = wing.airspeed;

    std::vector<FeatherInfluence> out;
    out.reserve(specs.size());
    for (const FeatherSpec& spec : specs) {
        spec.validate(l);
        const double lo = spec.span_position - 0.5 * footprint;
        const double hi = spec.span_position + 0.5 * footprint;
        // Tolerate rounding at the span ends.
        const double slack = 1e-12 * l;
        if (lo < -slack || hi > l + slack) {
            std::ostringstream os;
            os << "feather " << spec.index << ": footprint [" << lo << ", " << hi
               << "] outside [0, " << l << "]";
            throw DomainError(os.str());
        }

        double f_weight = 0.0, phi_weight = 0.0;
        if (footprint == 0.0) {
            f_weight = modes.bending(spec.span_position).f;
            phi_weight = modes.torsion(spec.span_position).phi;
        } else {
            const double a = std::max(lo, 0.0), b = std::min(hi, l);
            f_weight = simpson([&](double z) { return modes.bending(z).f; }, a, b, panels);
            phi_weight = simpson([&](double z) { return modes.torsion(z).phi; }, a, b, panels);
        }

        FeatherInfluence fi;
        fi.shape = shape_factors(spec.psi_start, spec.psi_end);
        fi.coeffs = feather_coeffs(fi.shape, wing);
        fi.A_bar = fi.coeffs.A * f_weight;
        fi.B_bar = fi.coeffs.B * f_weight;
        fi.C_bar = fi.coeffs.C * phi_weight;
        fi.D_bar = fi.coeffs.D * phi_weight;
        fi.R1 = v * v * (fi.A_bar * coeffs.d11 + fi.C_bar * coeffs.d12);
        fi.s1 = v * (fi.B_bar * coeffs.d11 + fi.D_bar * coeffs.d12);
        fi.R2 = v * v * (fi.A_bar * coeffs.d21 + fi.C_bar * coeffs.d22);
        fi.s2 = v * (fi.B_bar * coeffs.d21 + fi.D_bar * coeffs.d22);
        out.push_back(fi);
    }
    return out;
}

}  // namespace featherwing
