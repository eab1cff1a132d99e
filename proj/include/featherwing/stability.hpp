#pragma once

#include <complex>
#include <span>
#include <vector>

#include "featherwing/control_laws.hpp"
#include "featherwing/plant.hpp"

namespace featherwing {

/// Dense system matrix of the linearised (unsaturated) dynamics, row-major.
/// Dimension 4 for the open loop, 4 + N when a law closes the loop.
struct SystemMatrix {
    int dim = 0;
    std::vector<double> data;
    double airspeed = 0.0;
    LawKind law = LawKind::none;

    double operator()(int i, int j) const { return data[static_cast<size_t>(i * dim + j)]; }
    double& operator()(int i, int j) { return data[static_cast<size_t>(i * dim + j)]; }
};

/// Open loop (law none): the 4 x 4 x-block with beta frozen at zero.
/// Closed loop: x-rows gain R + s Kx, beta-rows are the law's feedback.
SystemMatrix assemble(const PlantModel& plant, const ControlLaw& law);
SystemMatrix assemble_open_loop(const PlantModel& plant);

std::vector<std::complex<double>> eigenvalues(const SystemMatrix& a);

/// max Re(lambda). Throws NumericError if the eigen iteration fails.
double spectral_abscissa(const SystemMatrix& a);

/**
 * Closed loops carry structural zero eigenvalues: feather-angle
 * combinations that exert no modal force simply stay put. Eigenvalues with
 * |lambda| <= 1e-9 * max|a_ij| are counted as neutral and skipped; the open
 * loop has none.
 */
double neutral_tolerance(const SystemMatrix& a);

/// Law family and gains to rebuild at every airspeed of a sweep.
struct LawSpec {
    LawKind kind = LawKind::none;
    std::vector<double> gamma{1.0};
};

struct SweepPoint {
    double airspeed = 0.0;
    double abscissa = 0.0;  ///< over the non-neutral eigenvalues
    int neutral = 0;        ///< structural zero eigenvalues left out of the abscissa
    std::vector<std::complex<double>> eigenvalues;  ///< sorted by descending real part
};

SweepPoint analyse_at(const PlantModel& plant, const LawSpec& law, double airspeed);

/// Reference implementation: one airspeed after another.
std::vector<SweepPoint> sweep_abscissa_serial(const PlantModel& plant, const LawSpec& law,
                                              std::span<const double> speeds);

/// OpenMP over airspeeds; results are identical to the serial sweep.
std::vector<SweepPoint> sweep_abscissa_parallel(const PlantModel& plant, const LawSpec& law,
                                                std::span<const double> speeds);

std::vector<double> linspace(double lo, double hi, int points);

struct BisectionStep {
    double lo = 0.0, hi = 0.0;
    double abscissa_lo = 0.0, abscissa_hi = 0.0;
};

struct FlutterResult {
    double flutter_speed = 0.0;
    double abscissa = 0.0;  ///< at flutter_speed
    std::vector<BisectionStep> history;
    std::vector<SweepPoint> table;
};

/**
 * Bisection on the sign of the spectral abscissa until hi - lo <= tol.
 * Requires abscissa(v_lo) < 0 <= abscissa(v_hi); otherwise throws
 * BracketError listing both endpoint values. `table_points` > 0 also fills
 * the abscissa-vs-V table on [v_lo, v_hi].
 */
FlutterResult find_flutter_speed(const PlantModel& plant, const LawSpec& law, double v_lo,
                                 double v_hi, double tol, int table_points = 0);

}  // namespace featherwing
