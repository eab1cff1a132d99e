#include "featherwing/model_core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "featherwing/errors.hpp"

namespace featherwing {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw ParameterError(std::string("wing: ") + what);
}

bool finite_all(std::initializer_list<double> values) {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

void WingModel::validate() const {
    require(finite_all({half_span, chord, linear_mass, sc_gc_offset, torsion_inertia,
                        bending_stiffness, torsion_stiffness, sc_position, lift_slope, airspeed,
                        air_density}),
            "all parameters must be finite");
    require(half_span > 0.0, "half_span must be > 0");
    require(chord > 0.0, "chord must be > 0");
    require(linear_mass > 0.0, "linear_mass must be > 0");
    require(torsion_inertia > 0.0, "torsion_inertia must be > 0");
    require(bending_stiffness > 0.0, "bending_stiffness must be > 0");
    require(torsion_stiffness > 0.0, "torsion_stiffness must be > 0");
    require(airspeed >= 0.0, "airspeed must be >= 0");
    require(air_density >= 0.0, "air_density must be >= 0");
    require(sc_position > 0.0 && sc_position < chord, "sc_position must lie in (0, chord)");
}

double elliptical_torsion_inertia(double height, double chord) {
    if (!(height > 0.0) || !(chord > 0.0))
        throw ParameterError("elliptical section needs positive height and chord");
    const double a = height;
    const double b = chord;
    return (std::numbers::pi * a * b / 4.0) * a * a * b * b / (4.0 * (a * a + b * b));
}

// ---------------------------------------------------------------------------

ModeShapes::ModeShapes(double half_span) : half_span_(half_span) {
    if (!(half_span > 0.0) || !std::isfinite(half_span))
        throw ParameterError("mode shapes need a positive half span");
    const double lam = kCantileverLambda1;
    wavenumber_ = lam / half_span;
    sigma_ = (std::cosh(lam) + std::cos(lam)) / (std::sinh(lam) + std::sin(lam));
}

void ModeShapes::check(double z) const {
    if (!(z >= 0.0 && z <= half_span_)) {
        std::ostringstream os;
        os << "span station z=" << z << " outside [0, " << half_span_ << "]";
        throw DomainError(os.str());
    }
}

BendingSample ModeShapes::bending(double z) const {
    check(z);
    const double k = wavenumber_;
    const double kz = k * z;
    const double ch = std::cosh(kz), sh = std::sinh(kz);
    const double c = std::cos(kz), s = std::sin(kz);
    BendingSample out;
    out.f = ch - c - sigma_ * (sh - s);
    out.d1 = k * (sh + s - sigma_ * (ch - c));
    out.d2 = k * k * (ch + c - sigma_ * (sh + s));
    out.d3 = k * k * k * (sh - s - sigma_ * (ch + c));
    out.d4 = k * k * k * k * out.f;
    return out;
}

TorsionSample ModeShapes::torsion(double z) const {
    check(z);
    const double k = std::numbers::pi / (2.0 * half_span_);
    TorsionSample out;
    out.phi = std::sin(k * z);
    out.d1 = k * std::cos(k * z);
    out.d2 = -k * k * out.phi;
    return out;
}

BendingSample eval_bending_mode(double z, const WingModel& wing) {
    return ModeShapes(wing.half_span).bending(z);
}

TorsionSample eval_torsion_mode(double z, const WingModel& wing) {
    return ModeShapes(wing.half_span).torsion(z);
}

// ---------------------------------------------------------------------------

double simpson(const std::function<double(double)>& fn, double a, double b, int panels) {
    if (panels < 2) throw ParameterError("simpson: panels must be >= 2");
    const int n = 2 * panels;
    const double h = (b - a) / n;
    auto sample = [&](int i) {
        const double z = (i == n) ? b : a + i * h;
        const double v = fn(z);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "simpson: non-finite integrand at z=" << z;
            throw NumericError(os.str());
        }
        return v;
    };
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; i += 2) odd += sample(i);
    for (int i = 2; i < n; i += 2) even += sample(i);
    return h / 3.0 * (sample(0) + 4.0 * odd + 2.0 * even + sample(n));
}

double integrate(const std::function<double(double)>& fn, double half_span, int panels) {
    return simpson(fn, 0.0, half_span, panels);
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::string, double>> ModalCoefficients::table() const {
    return {
        {"a11", a11},         {"a12", a12},   {"a13", a13},   {"a21", a21},   {"a22", a22},
        {"b11", b11},         {"b12", b12},   {"b13", b13},   {"b21", b21},   {"b22", b22},
        {"b23", b23},         {"b23_aero", b23_aero},         {"b23_elastic", b23_elastic},
        {"d11", d11},         {"d12", d12},   {"d21", d21},   {"d22", d22},
        {"C11", c1[0]},       {"C12", c1[1]}, {"C13", c1[2]}, {"C14", c1[3]},
        {"C21", c2[0]},       {"C22", c2[1]}, {"C23", c2[2]}, {"C24", c2[3]},
        {"panels", static_cast<double>(panels)},
    };
}

ModalCoefficients modal_coefficients(const WingModel& wing, const ModeShapes& modes, int panels) {
    wing.validate();
    const double l = wing.half_span;
    const double rho = wing.air_density;
    const double v = wing.airspeed;
    const double cy = wing.lift_slope;
    const double x0 = wing.sc_position;

    // Spanwise distributions, kept inside the integrands.
    auto m = [&](double) { return wing.linear_mass; };
    auto sigma = [&](double) { return wing.sc_gc_offset; };
    auto jm = [&](double) { return wing.torsion_inertia; };
    auto ej = [&](double) { return wing.bending_stiffness; };
    auto gj = [&](double) { return wing.torsion_stiffness; };
    auto b = [&](double) { return wing.chord; };

    auto f = [&](double z) { return modes.bending(z).f; };
    auto phi = [&](double z) { return modes.torsion(z).phi; };
    auto I = [&](auto&& g) { return integrate(g, l, panels); };

    ModalCoefficients c;
    c.panels = panels;

    c.a11 = I([&](double z) { return m(z) * f(z) * f(z); });
    c.a12 = cy * rho * v * I([&](double z) { return b(z) * f(z) * f(z); });
    // (EJ f'')'' with uniform EJ reduces to EJ f''''.
    c.a13 = I([&](double z) { return ej(z) * modes.bending(z).d4 * f(z); });

    c.b11 = -I([&](double z) { return m(z) * sigma(z) * f(z) * phi(z); });
    c.b12 = -cy * rho * v *
            I([&](double z) { return (0.75 * b(z) - x0) * b(z) * f(z) * phi(z); });
    c.b13 = -cy * rho * v * v * I([&](double z) { return b(z) * f(z) * phi(z); });

    c.a21 = -c.b11;
    c.a22 = -cy * rho * v * I([&](double z) { return (x0 - 0.25 * b(z)) * b(z) * f(z) * phi(z); });

    c.b21 = -I([&](double z) { return jm(z) * phi(z) * phi(z); });
    c.b22 = -std::numbers::pi / 16.0 * rho * v *
                I([&](double z) { return b(z) * b(z) * b(z) * phi(z) * phi(z); }) +
            cy * rho * v * I([&](double z) {
                return b(z) * (x0 - 0.25 * b(z)) * (0.75 * b(z) - x0) * phi(z) * phi(z);
            });
    c.b23_aero = cy * rho * v * v *
                 I([&](double z) { return b(z) * (x0 - 0.25 * b(z)) * phi(z) * phi(z); });
    // (GJ_k phi')' with uniform GJ_k reduces to GJ_k phi''.
    c.b23_elastic = I([&](double z) { return gj(z) * modes.torsion(z).d2 * phi(z); });
    c.b23 = c.b23_aero + c.b23_elastic;

    // Kinetic form 1/2 [a11 x2^2 - 2 a21 x2 x4 - b21 x4^2] must be positive
    // definite; this also rules out a singular mass matrix.
    const double diag = c.a11 * (-c.b21);
    const double det = c.a11 * c.b21 - c.b11 * c.a21;
    if (!(c.a11 > 0.0) || !(c.b21 < 0.0) || !(diag - c.a21 * c.a21 > 1e-12 * diag)) {
        std::ostringstream os;
        os << "mass matrix singular or kinetic energy indefinite (sigma_T coupling too large): "
           << "a11*(-b21)=" << diag << ", a21^2=" << c.a21 * c.a21;
        throw ModelError(os.str());
    }

    c.d11 = c.b21 / det;
    c.d12 = -c.b11 / det;
    c.d21 = -c.a21 / det;
    c.d22 = c.a11 / det;

    // Rows of -D * K and -D * Damping arranged against x = (q, qdot, r, rdot).
    const double k11 = c.a13, k12 = c.b13, k21 = 0.0, k22 = c.b23;
    const double g11 = c.a12, g12 = c.b12, g21 = c.a22, g22 = c.b22;
    c.c1[0] = -(c.d11 * k11 + c.d12 * k21);
    c.c1[1] = -(c.d11 * g11 + c.d12 * g21);
    c.c1[2] = -(c.d11 * k12 + c.d12 * k22);
    c.c1[3] = -(c.d11 * g12 + c.d12 * g22);
    c.c2[0] = -(c.d21 * k11 + c.d22 * k21);
    c.c2[1] = -(c.d21 * g11 + c.d22 * g21);
    c.c2[2] = -(c.d21 * k12 + c.d22 * k22);
    c.c2[3] = -(c.d21 * g12 + c.d22 * g22);
    return c;
}

EnergyIdentity energy_identity(const WingModel& wing, const ModeShapes& modes, int panels) {
    const double l = wing.half_span;
    EnergyIdentity e;
    e.a13_by_parts = integrate(
        [&](double z) {
            const double d2 = modes.bending(z).d2;
            return wing.bending_stiffness * d2 * d2;
        },
        l, panels);
    e.b23_elastic_by_parts = -integrate(
        [&](double z) {
            const double d1 = modes.torsion(z).d1;
            return wing.torsion_stiffness * d1 * d1;
        },
        l, panels);
    return e;
}

}  // namespace featherwing
