// featherwing: modal coefficients, stability sweeps, flutter speed,
// closed-loop simulation and the three-law comparison.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "featherwing/config.hpp"
#include "featherwing/errors.hpp"
#include "featherwing/experiment.hpp"
#include "featherwing/io.hpp"
#include "featherwing/stability.hpp"

namespace fw = featherwing;

namespace {

enum Exit { ok = 0, config_error = 2, numeric_error = 3, io_error = 4 };

struct Options {
    std::string config;
    std::string law;
    std::string out;
    std::vector<std::string> overrides;
    bool serial = false;
};

fw::ExperimentConfig load(const Options& o) {
    fw::ExperimentConfig cfg = fw::load_config(o.config, o.overrides);
    if (!o.law.empty()) cfg.law = fw::law_from_string(o.law);
    if (!o.out.empty()) cfg.output_dir = o.out;
    return cfg;
}

int cmd_coeffs(const Options& o) {
    const auto cfg = load(o);
    const auto plant = cfg.plant();
    const std::string csv = fw::coefficients_csv(plant.coeffs);
    std::cout << csv;
    if (!o.out.empty()) fw::write_file(std::filesystem::path(cfg.output_dir) / "coefficients.csv", csv);
    return ok;
}

int cmd_eigen(const Options& o) {
    auto cfg = load(o);
    if (o.law.empty()) cfg.law = fw::LawKind::none;
    const auto plant = cfg.plant();
    const fw::LawSpec spec{cfg.law, cfg.gains(cfg.law)};
    const auto speeds = fw::linspace(cfg.stability.v_min, cfg.stability.v_max, cfg.stability.points);
    const auto sweep = o.serial ? fw::sweep_abscissa_serial(plant, spec, speeds)
                                : fw::sweep_abscissa_parallel(plant, spec, speeds);
    const std::string csv = fw::eigen_csv(sweep);
    std::cout << csv;
    if (!o.out.empty()) fw::write_file(std::filesystem::path(cfg.output_dir) / "eigen.csv", csv);
    return ok;
}

int cmd_flutter(const Options& o) {
    auto cfg = load(o);
    if (o.law.empty()) cfg.law = fw::LawKind::none;
    const auto plant = cfg.plant();
    const fw::LawSpec spec{cfg.law, cfg.gains(cfg.law)};
    const auto res = fw::find_flutter_speed(plant, spec, cfg.stability.v_lo, cfg.stability.v_hi,
                                            cfg.stability.tol, o.out.empty() ? 0 : cfg.stability.points);
    std::cout << "law " << fw::to_string(cfg.law) << "\n"
              << "flutter_speed " << fw::format_number(res.flutter_speed) << "\n"
              << "abscissa " << fw::format_number(res.abscissa) << "\n"
              << "bisection_steps " << res.history.size() - 1 << "\n";
    if (!o.out.empty()) {
        fw::CsvBuilder csv({"lo", "hi", "abscissa_lo", "abscissa_hi"});
        for (const auto& s : res.history)
            csv.add_row(std::vector<double>{s.lo, s.hi, s.abscissa_lo, s.abscissa_hi});
        const std::filesystem::path dir(cfg.output_dir);
        fw::write_file(dir / "bisection.csv", csv.str());
        fw::write_file(dir / "eigen.csv", fw::eigen_csv(res.table));
    }
    return ok;
}

int cmd_simulate(const Options& o) {
    const auto cfg = load(o);
    try {
        const auto res = fw::run_experiment(cfg, cfg.output_dir);
        for (const auto& a : res.artifacts)
            std::cout << a.name << " rows=" << a.rows << " sha256=" << a.sha256 << "\n";
        for (const auto& t : res.thresholds)
            std::cout << "threshold " << t.quantity << " <= " << fw::format_number(t.threshold) << ": "
                      << (t.first_time ? "reached at t=" + fw::format_number(*t.first_time)
                                       : std::string("not reached"))
                      << "\n";
    } catch (const fw::DivergenceError& e) {
        std::cerr << "featherwing: diverged, partial trajectory written to " << cfg.output_dir << ": "
                  << e.what() << "\n";
        return numeric_error;
    }
    return ok;
}

int cmd_compare(const Options& o) {
    const auto cfg = load(o);
    const auto c = o.serial ? fw::compare_laws_serial(cfg) : fw::compare_laws_parallel(cfg);
    fw::write_comparison(cfg, c, cfg.output_dir);
    std::cout << fw::comparison_markdown(c);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"featherwing: feathered-wing flutter model and multiagent control"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "config file or preset name (paper-sec6)")->required();
        sub->add_option("--law", o.law, "none | sg | nonma | ma");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--override", o.overrides, "section.key=value, repeatable");
    };
    auto* coeffs = app.add_subcommand("coeffs", "print modal coefficients");
    auto* eigen = app.add_subcommand("eigen", "spectral abscissa vs airspeed");
    auto* flutter = app.add_subcommand("flutter-speed", "bisect the stability boundary");
    auto* simulate = app.add_subcommand("simulate", "integrate and write run artifacts");
    auto* compare = app.add_subcommand("compare", "compare sg, nonma and ma");
    for (auto* s : {coeffs, eigen, flutter, simulate, compare}) common(s);
    eigen->add_flag("--serial", o.serial, "use the serial reference sweep");
    compare->add_flag("--serial", o.serial, "run the laws one after another");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : config_error;
    }

    try {
        if (*coeffs) return cmd_coeffs(o);
        if (*eigen) return cmd_eigen(o);
        if (*flutter) return cmd_flutter(o);
        if (*simulate) return cmd_simulate(o);
        if (*compare) return cmd_compare(o);
    } catch (const fw::IoError& e) {
        std::cerr << "featherwing: I/O error: " << e.what() << "\n";
        return io_error;
    } catch (const fw::NumericError& e) {
        std::cerr << "featherwing: numeric error: " << e.what() << "\n";
        return numeric_error;
    } catch (const fw::BracketError& e) {
        std::cerr << "featherwing: " << e.what() << "\n";
        return numeric_error;
    } catch (const fw::Error& e) {
        std::cerr << "featherwing: configuration error: " << e.what() << "\n";
        return config_error;
    }
    return ok;
}
