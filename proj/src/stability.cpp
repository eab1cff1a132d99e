#include "featherwing/stability.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "featherwing/errors.hpp"

namespace featherwing {

SystemMatrix assemble_open_loop(const PlantModel& plant) {
    const auto& c = plant.coeffs;
    SystemMatrix a;
    a.dim = 4;
    a.data.assign(16, 0.0);
    a.airspeed = plant.wing.airspeed;
    a.law = LawKind::none;
    a(0, 1) = 1.0;
    a(2, 3) = 1.0;
    for (int k = 0; k < 4; ++k) {
        a(1, k) = c.c1[k];
        a(3, k) = c.c2[k];
    }
    return a;
}

SystemMatrix assemble(const PlantModel& plant, const ControlLaw& law) {
    if (law.kind() == LawKind::none) return assemble_open_loop(plant);

    const int n = plant.size();
    const int dim = 4 + n;
    const LinearFeedback fb = law.feedback();
    const SystemMatrix open = assemble_open_loop(plant);

    SystemMatrix a;
    a.dim = dim;
    a.data.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), 0.0);
    a.airspeed = plant.wing.airspeed;
    a.law = law.kind();

    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) a(r, k) = open(r, k);

    auto kx = [&](int i, int k) { return fb.kx[static_cast<size_t>(i * 4 + k)]; };
    auto kb = [&](int i, int j) { return fb.kb[static_cast<size_t>(i * n + j)]; };

    for (int i = 0; i < n; ++i) {
        const auto& fi = plant.influence[static_cast<size_t>(i)];
        // F = sum_i (R_i beta_i + s_i u_i) with u_i = Kx_i x + Kb_i beta.
        for (int k = 0; k < 4; ++k) {
            a(1, k) += fi.s1 * kx(i, k);
            a(3, k) += fi.s2 * kx(i, k);
        }
        a(1, 4 + i) += fi.R1;
        a(3, 4 + i) += fi.R2;
        for (int j = 0; j < n; ++j) {
            a(1, 4 + j) += fi.s1 * kb(i, j);
            a(3, 4 + j) += fi.s2 * kb(i, j);
        }
        for (int k = 0; k < 4; ++k) a(4 + i, k) = kx(i, k);
        for (int j = 0; j < n; ++j) a(4 + i, 4 + j) = kb(i, j);
    }
    return a;
}

std::vector<std::complex<double>> eigenvalues(const SystemMatrix& a) {
    Eigen::MatrixXd m(a.dim, a.dim);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            if (!std::isfinite(a(i, j))) throw NumericError("system matrix has non-finite entries");
            m(i, j) = a(i, j);
        }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericError("eigenvalue iteration did not converge");
    std::vector<std::complex<double>> out(static_cast<size_t>(a.dim));
    for (int i = 0; i < a.dim; ++i) out[static_cast<size_t>(i)] = solver.eigenvalues()(i);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return out;
}

double spectral_abscissa(const SystemMatrix& a) {
    const auto ev = eigenvalues(a);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& e : ev) best = std::max(best, e.real());
    return best;
}

double neutral_tolerance(const SystemMatrix& a) {
    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::abs(v));
    return 1e-9 * scale;
}

SweepPoint analyse_at(const PlantModel& plant, const LawSpec& law, double airspeed) {
    const PlantModel at = with_airspeed(plant, airspeed);
    const ControlLaw control = law.kind == LawKind::none ? ControlLaw::open_loop(at)
                                                         : ControlLaw(law.kind, at, law.gamma);
    SweepPoint p;
    p.airspeed = airspeed;
    const SystemMatrix a = assemble(at, control);
    p.eigenvalues = eigenvalues(a);
    const double tol = law.kind == LawKind::none ? 0.0 : neutral_tolerance(a);
    p.abscissa = -std::numeric_limits<double>::infinity();
    for (const auto& e : p.eigenvalues) {
        if (std::abs(e) <= tol) {
            ++p.neutral;
            continue;
        }
        p.abscissa = std::max(p.abscissa, e.real());
    }
    return p;
}

std::vector<SweepPoint> sweep_abscissa_serial(const PlantModel& plant, const LawSpec& law,
                                              std::span<const double> speeds) {
    std::vector<SweepPoint> out;
    out.reserve(speeds.size());
    for (double v : speeds) out.push_back(analyse_at(plant, law, v));
    return out;
}

std::vector<SweepPoint> sweep_abscissa_parallel(const PlantModel& plant, const LawSpec& law,
                                                std::span<const double> speeds) {
    const auto n = static_cast<long>(speeds.size());
    std::vector<SweepPoint> out(speeds.size());
    // Exceptions may not leave an OpenMP region; keep the first one per index.
    std::vector<std::exception_ptr> errors(speeds.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            out[static_cast<size_t>(i)] = analyse_at(plant, law, speeds[static_cast<size_t>(i)]);
        } catch (...) {
            errors[static_cast<size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw ParameterError("linspace needs at least one point");
    std::vector<double> out(static_cast<size_t>(points));
    if (points == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < points; ++i)
        out[static_cast<size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    out.back() = hi;
    return out;
}

FlutterResult find_flutter_speed(const PlantModel& plant, const LawSpec& law, double v_lo,
                                 double v_hi, double tol, int table_points) {
    if (!(v_lo < v_hi)) {
        std::ostringstream os;
        os << "flutter bracket is empty or degenerate: [" << v_lo << ", " << v_hi << "]";
        throw BracketError(os.str());
    }
    if (!(tol > 0.0)) throw ParameterError("flutter search tolerance must be > 0");

    FlutterResult res;
    auto abscissa = [&](double v) { return analyse_at(plant, law, v).abscissa; };
    double lo = v_lo, hi = v_hi;
    double a_lo = abscissa(lo), a_hi = abscissa(hi);
    if (!(a_lo < 0.0 && a_hi >= 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "no stability-boundary crossing in [" << v_lo << ", " << v_hi
           << "]: abscissa(V_lo)=" << a_lo << ", abscissa(V_hi)=" << a_hi;
        throw BracketError(os.str());
    }
    if (table_points > 0)
        res.table = sweep_abscissa_parallel(plant, law, linspace(v_lo, v_hi, table_points));
    res.history.push_back({lo, hi, a_lo, a_hi});
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double a_mid = abscissa(mid);
        if (a_mid < 0.0) {
            lo = mid;
            a_lo = a_mid;
        } else {
            hi = mid;
            a_hi = a_mid;
        }
        res.history.push_back({lo, hi, a_lo, a_hi});
    }
    res.flutter_speed = 0.5 * (lo + hi);
    res.abscissa = abscissa(res.flutter_speed);
    return res;
}

}  // namespace featherwing
