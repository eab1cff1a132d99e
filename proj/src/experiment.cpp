#include "featherwing/experiment.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include <json.hpp>

#include "featherwing/errors.hpp"
#include "featherwing/io.hpp"

namespace featherwing {

namespace {

using nlohmann::ordered_json;

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

Artifact emit(const std::filesystem::path& dir, const std::string& name, const std::string& text,
              size_t rows) {
    write_file(dir / name, text);
    return Artifact{name, sha256_hex(text), rows};
}

/// Resolved config as section -> key -> value strings, exactly as run.
ordered_json config_json(const ExperimentConfig& cfg) {
    ConfigDocument doc = ConfigDocument::parse(cfg.to_text(), cfg.source);
    ordered_json j = ordered_json::object();
    for (const auto& [section, entries] : doc.sections())
        for (const auto& [key, entry] : entries) j[section][key] = entry.value;
    return j;
}

ordered_json model_json(const PlantModel& plant) {
    ordered_json j;
    j["units"] = "arbitrary units";
    j["torsion_inertia"] = format_number(plant.wing.torsion_inertia);
    j["chi"] = format_number(plant.network_constants.chi);
    j["lambda"] = format_number(plant.network_constants.lambda);
    ordered_json sums = ordered_json::array();
    for (double s : plant.network.row_sums()) sums.push_back(format_number(s));
    j["network_row_sums"] = sums;
    ordered_json feathers = ordered_json::array();
    for (size_t i = 0; i < plant.feathers.size(); ++i) {
        const auto& f = plant.feathers[i];
        const auto& inf = plant.influence[i];
        feathers.push_back({{"index", f.index},
                            {"z", format_number(f.span_position)},
                            {"psi_start", format_number(f.psi_start)},
                            {"psi_end", format_number(f.psi_end)},
                            {"side", std::string(to_string(f.side))},
                            {"beta_min", format_number(f.beta_min)},
                            {"beta_max", format_number(f.beta_max)},
                            {"R1", format_number(inf.R1)},
                            {"s1", format_number(inf.s1)},
                            {"R2", format_number(inf.R2)},
                            {"s2", format_number(inf.s2)}});
    }
    j["feathers"] = feathers;
    return j;
}

ordered_json artifacts_json(const std::vector<Artifact>& artifacts) {
    ordered_json a = ordered_json::array();
    for (const auto& x : artifacts)
        a.push_back({{"file", x.name}, {"sha256", x.sha256}, {"rows", x.rows}});
    return a;
}

std::string opt_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("none");
}

}  // namespace

std::vector<std::string> trajectory_header(int feathers) {
    std::vector<std::string> h{"t", "x1", "x2", "x3", "x4", "E", "L", "Ltilde"};
    for (int i = 1; i <= feathers; ++i) h.push_back("beta_" + std::to_string(i));
    for (int i = 1; i <= feathers; ++i) h.push_back("u_" + std::to_string(i));
    return h;
}

std::vector<double> trajectory_cells(const TrajectoryRow& row) {
    std::vector<double> c{row.state.t, row.state.x[0], row.state.x[1], row.state.x[2],
                          row.state.x[3], row.E, row.L, row.L_tilde};
    c.insert(c.end(), row.state.beta.begin(), row.state.beta.end());
    c.insert(c.end(), row.u.begin(), row.u.end());
    return c;
}

std::string coefficients_csv(const ModalCoefficients& c) {
    CsvBuilder csv({"name", "value"});
    for (const auto& [name, value] : c.table()) csv.add_row({name, format_number(value)});
    return csv.str();
}

std::string eigen_csv(std::span<const SweepPoint> sweep) {
    const size_t k = sweep.empty() ? 0 : sweep.front().eigenvalues.size();
    std::vector<std::string> header{"V", "abscissa", "neutral"};
    for (size_t i = 1; i <= k; ++i) {
        header.push_back("re_" + std::to_string(i));
        header.push_back("im_" + std::to_string(i));
    }
    CsvBuilder csv(header);
    std::vector<double> cells;
    for (const auto& p : sweep) {
        cells.assign({p.airspeed, p.abscissa, static_cast<double>(p.neutral)});
        for (const auto& e : p.eigenvalues) {
            cells.push_back(e.real());
            cells.push_back(e.imag());
        }
        csv.add_row(cells);
    }
    return csv.str();
}

RunResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out) {
    const PlantModel plant = cfg.plant();
    const ControlLaw law = cfg.law == LawKind::none
                               ? ControlLaw::open_loop(plant)
                               : ControlLaw(cfg.law, plant, cfg.gains(cfg.law));
    const IntegratorOptions opt{cfg.sim.saturation};

    RunResult res;
    res.dir = out;
    res.thresholds = {{"E", cfg.sim.energy_threshold, {}},
                      {"L", cfg.sim.eps_star, {}},
                      {"Ltilde", cfg.sim.eps_star_star, {}}};

    CsvBuilder traj(trajectory_header(plant.size()));
    std::exception_ptr failure;
    try {
        res.steps_taken = integrate(cfg.initial_state(), law, plant, cfg.sim.steps, cfg.sim.dt, opt,
                                    [&](const TrajectoryRow& row) {
                                        traj.add_row(trajectory_cells(row));
                                        const double q[3] = {row.E, row.L, row.L_tilde};
                                        for (size_t i = 0; i < 3; ++i) {
                                            auto& h = res.thresholds[i];
                                            if (!h.first_time && q[i] <= h.threshold)
                                                h.first_time = row.state.t;
                                        }
                                        return true;
                                    });
    } catch (const DivergenceError& e) {
        res.diverged = true;
        res.divergence = e.what();
        res.steps_taken = static_cast<long>(traj.rows()) - 1;
        failure = std::current_exception();
    }

    res.artifacts.push_back(emit(out, "trajectory.csv", traj.str(), traj.rows()));
    res.artifacts.push_back(emit(out, "coefficients.csv", coefficients_csv(plant.coeffs),
                                 plant.coeffs.table().size()));
    const LawSpec spec{cfg.law, cfg.gains(cfg.law)};
    const auto sweep = sweep_abscissa_parallel(
        plant, spec, linspace(cfg.stability.v_min, cfg.stability.v_max, cfg.stability.points));
    res.artifacts.push_back(emit(out, "eigen.csv", eigen_csv(sweep), sweep.size()));

    ordered_json m;
    m["command"] = "simulate";
    m["law"] = std::string(to_string(cfg.law));
    m["config"] = config_json(cfg);
    m["model"] = model_json(plant);
    m["steps_requested"] = cfg.sim.steps;
    m["steps_taken"] = res.steps_taken;
    m["diverged"] = res.diverged;
    if (res.diverged) m["divergence"] = res.divergence;
    ordered_json th = ordered_json::object();
    for (const auto& h : res.thresholds)
        th[h.quantity] = {{"threshold", format_number(h.threshold)},
                          {"reached", h.first_time.has_value()},
                          {"first_time", opt_number(h.first_time)}};
    m["thresholds"] = th;
    m["artifacts"] = artifacts_json(res.artifacts);
    write_file(out / "manifest.json", m.dump(2) + "\n");

    if (failure) std::rethrow_exception(failure);
    return res;
}

// ---------------------------------------------------------------------------

LawMetrics measure_law(const ExperimentConfig& cfg, const PlantModel& plant, LawKind kind,
                       long steps) {
    const ControlLaw law = kind == LawKind::none ? ControlLaw::open_loop(plant)
                                                 : ControlLaw(kind, plant, cfg.gains(kind));
    const IntegratorOptions opt{cfg.sim.saturation};
    const long every = cfg.compare.sample_every;

    LawMetrics m;
    m.law = kind;
    long k = 0;
    TrajectoryRow last;
    integrate(cfg.initial_state(), law, plant, steps, cfg.sim.dt, opt, [&](const TrajectoryRow& row) {
        const double nb = norm2(row.state.beta);
        if (k == 0) m.beta_norm_0 = nb;
        if (!m.time_to_half && k > 0 && nb <= 0.5 * m.beta_norm_0) m.time_to_half = row.state.t;
        if (k % every == 0 || k == steps) {
            m.t.push_back(row.state.t);
            m.beta_norm.push_back(nb);
            m.energy.push_back(row.E);
        }
        if (k == steps) last = row;
        ++k;
        return true;
    });
    m.beta_norm_T = norm2(last.state.beta);
    m.energy_T = last.E;
    m.L_T = last.L;
    m.L_tilde_T = last.L_tilde;
    return m;
}

namespace {

constexpr LawKind kCompared[3] = {LawKind::sg, LawKind::nonma, LawKind::ma};

template <class RunAll>
Comparison compare_with(const ExperimentConfig& cfg, RunAll run_all) {
    const PlantModel plant = cfg.plant();
    Comparison c;
    c.dt = cfg.sim.dt;
    c.steps = std::min(cfg.sim.steps, cfg.compare.max_steps);
    while (true) {
        c.laws = run_all(plant, c.steps);
        if (!cfg.compare.extend_until_half || c.steps >= cfg.compare.max_steps) break;
        bool halved = false;
        for (const auto& m : c.laws) halved = halved || m.time_to_half.has_value();
        if (halved) break;
        c.steps = std::min(2 * c.steps, cfg.compare.max_steps);
    }
    return c;
}

}  // namespace

Comparison compare_laws_serial(const ExperimentConfig& cfg) {
    return compare_with(cfg, [&](const PlantModel& plant, long steps) {
        std::vector<LawMetrics> out;
        for (LawKind k : kCompared) out.push_back(measure_law(cfg, plant, k, steps));
        return out;
    });
}

Comparison compare_laws_parallel(const ExperimentConfig& cfg) {
    return compare_with(cfg, [&](const PlantModel& plant, long steps) {
        std::vector<LawMetrics> out(3);
        std::exception_ptr errors[3];
#pragma omp parallel for schedule(static, 1)
        for (int i = 0; i < 3; ++i) {
            try {
                out[static_cast<size_t>(i)] = measure_law(cfg, plant, kCompared[i], steps);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
        return out;
    });
}

std::string comparison_markdown(const Comparison& c) {
    std::ostringstream os;
    os << "# Control law comparison\n\n"
       << "Horizon T = " << format_number(static_cast<double>(c.steps) * c.dt) << " (" << c.steps
       << " steps of dt = " << format_number(c.dt) << "), units arbitrary.\n\n"
       << "| law | norm beta(0) | norm beta(T) | time to half | E(T) | L(T) | Ltilde(T) |\n"
       << "|---|---|---|---|---|---|---|\n";
    for (const auto& m : c.laws)
        os << "| " << to_string(m.law) << " | " << format_number(m.beta_norm_0) << " | "
           << format_number(m.beta_norm_T) << " | " << opt_number(m.time_to_half) << " | "
           << format_number(m.energy_T) << " | " << format_number(m.L_T) << " | "
           << format_number(m.L_tilde_T) << " |\n";

    std::vector<const LawMetrics*> ranked;
    for (const auto& m : c.laws) ranked.push_back(&m);
    std::stable_sort(ranked.begin(), ranked.end(), [](const LawMetrics* a, const LawMetrics* b) {
        return a->beta_norm_T < b->beta_norm_T;
    });
    os << "\nRanking by norm beta(T), smallest first:";
    for (size_t i = 0; i < ranked.size(); ++i) os << (i ? "," : "") << " " << to_string(ranked[i]->law);
    os << "\n";
    return os.str();
}

std::string comparison_csv(const Comparison& c) {
    CsvBuilder csv({"law", "T", "beta_norm_0", "beta_norm_T", "time_to_half", "E_T", "L_T",
                    "Ltilde_T"});
    for (const auto& m : c.laws)
        csv.add_row({std::string(to_string(m.law)),
                      format_number(static_cast<double>(c.steps) * c.dt), format_number(m.beta_norm_0),
                      format_number(m.beta_norm_T), opt_number(m.time_to_half),
                      format_number(m.energy_T), format_number(m.L_T), format_number(m.L_tilde_T)});
    return csv.str();
}

std::string comparison_series_csv(const Comparison& c) {
    std::vector<std::string> header{"t"};
    for (const auto& m : c.laws) header.push_back("beta_norm_" + std::string(to_string(m.law)));
    for (const auto& m : c.laws) header.push_back("E_" + std::string(to_string(m.law)));
    CsvBuilder csv(header);
    if (c.laws.empty()) return csv.str();
    std::vector<double> cells;
    for (size_t r = 0; r < c.laws.front().t.size(); ++r) {
        cells.assign({c.laws.front().t[r]});
        for (const auto& m : c.laws) cells.push_back(m.beta_norm[r]);
        for (const auto& m : c.laws) cells.push_back(m.energy[r]);
        csv.add_row(cells);
    }
    return csv.str();
}

std::vector<Artifact> write_comparison(const ExperimentConfig& cfg, const Comparison& c,
                                       const std::filesystem::path& out) {
    std::vector<Artifact> a;
    a.push_back(emit(out, "compare.md", comparison_markdown(c), c.laws.size()));
    a.push_back(emit(out, "compare.csv", comparison_csv(c), c.laws.size()));
    a.push_back(emit(out, "compare_series.csv", comparison_series_csv(c),
                     c.laws.empty() ? 0 : c.laws.front().t.size()));

    ordered_json m;
    m["command"] = "compare";
    m["config"] = config_json(cfg);
    m["model"] = model_json(cfg.plant());
    m["horizon_steps"] = c.steps;
    m["horizon_T"] = format_number(static_cast<double>(c.steps) * c.dt);
    m["artifacts"] = artifacts_json(a);
    write_file(out / "manifest.json", m.dump(2) + "\n");
    return a;
}

}  // namespace featherwing
