#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "featherwing/config.hpp"
#include "featherwing/stability.hpp"

namespace featherwing {

struct Artifact {
    std::string name;
    std::string sha256;
    size_t rows = 0;  ///< data rows, header excluded
};

/// First time a monitored quantity fell to or below its threshold.
struct ThresholdHit {
    std::string quantity;
    double threshold = 0.0;
    std::optional<double> first_time;
};

struct RunResult {
    std::filesystem::path dir;
    std::vector<Artifact> artifacts;
    std::vector<ThresholdHit> thresholds;
    long steps_taken = 0;
    bool diverged = false;
    std::string divergence;
};

/// Header of trajectory.csv for N feathers.
std::vector<std::string> trajectory_header(int feathers);
std::vector<double> trajectory_cells(const TrajectoryRow& row);

std::string coefficients_csv(const ModalCoefficients& c);
std::string eigen_csv(std::span<const SweepPoint> sweep);

/**
 * Simulates `cfg.law` and writes trajectory.csv, coefficients.csv,
 * eigen.csv and manifest.json into `out`. On divergence the partial
 * trajectory and the manifest are still written, then the
 * SimulationDiverged is rethrown.
 */
RunResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out);

// ---------------------------------------------------------------------------

struct LawMetrics {
    LawKind law = LawKind::none;
    double beta_norm_0 = 0.0;
    double beta_norm_T = 0.0;
    std::optional<double> time_to_half;  ///< first t with ||beta|| <= ||beta(0)|| / 2
    double energy_T = 0.0;
    double L_T = 0.0;
    double L_tilde_T = 0.0;
    std::vector<double> t;            ///< decimated samples
    std::vector<double> beta_norm;
    std::vector<double> energy;
};

struct Comparison {
    double dt = 0.0;
    long steps = 0;  ///< common horizon T = steps * dt
    std::vector<LawMetrics> laws;  ///< sg, nonma, ma in that order
};

/// One law over `steps` steps, streaming; keeps every `sample_every`-th row.
LawMetrics measure_law(const ExperimentConfig& cfg, const PlantModel& plant, LawKind law,
                       long steps);

/**
 * Runs sg, nonma and ma from the same initial state. With
 * `extend_until_half` the horizon doubles (capped at max_steps) until
 * ||beta|| halves under at least one law. The serial form is the
 * reference; the parallel form runs the three laws concurrently and
 * returns identical numbers.
 */
Comparison compare_laws_serial(const ExperimentConfig& cfg);
Comparison compare_laws_parallel(const ExperimentConfig& cfg);

std::string comparison_markdown(const Comparison& c);
std::string comparison_csv(const Comparison& c);
std::string comparison_series_csv(const Comparison& c);

/// Writes compare.md, compare.csv, compare_series.csv and manifest.json.
std::vector<Artifact> write_comparison(const ExperimentConfig& cfg, const Comparison& c,
                                       const std::filesystem::path& out);

}  // namespace featherwing
