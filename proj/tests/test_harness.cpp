#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "featherwing/config.hpp"
#include "featherwing/errors.hpp"
#include "featherwing/experiment.hpp"
#include "featherwing/io.hpp"
#include "support.hpp"

using namespace featherwing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("featherwing_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string error_of(const std::string& text, const std::vector<std::string>& overrides = {}) {
    try {
        load_config_text(text, "cfg", overrides);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

std::string preset_with(const std::string& from, const std::string& to) {
    std::string text(preset_text("paper-sec6"));
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("preset reproduces the reference parameters") {
    const auto cfg = fwtest::preset();
    CHECK(cfg.sim.dt == 1e-5);
    CHECK(cfg.feather_count == 5);
    CHECK(cfg.wing.air_density == 1.225);
    CHECK(cfg.wing.linear_mass == 10.0);
    CHECK(cfg.wing.chord == 10.0);
    CHECK(cfg.wing.half_span == 10.0);
    CHECK(cfg.wing.lift_slope == 10.0);
    CHECK(cfg.wing.airspeed == 10.0);
    CHECK(cfg.wing.bending_stiffness == 50.0);
    CHECK(cfg.wing.torsion_stiffness == 70.0);
    CHECK(cfg.wing.sc_gc_offset == 0.1);
    CHECK(cfg.section_height == 2.0);
    CHECK(cfg.wing.sc_position == cfg.wing.half_span / 4.0);
    CHECK(cfg.wing.torsion_inertia == elliptical_torsion_inertia(2.0, 10.0));
    CHECK(cfg.law == LawKind::ma);
    CHECK(is_preset("paper-sec6"));
    CHECK(load_config("paper-sec6").to_text() == cfg.to_text());
}

TEST_CASE("empty and malformed documents") {
    CHECK_THROWS_AS(load_config_text("", "cfg"), ConfigError);
    CHECK_THROWS_AS(load_config_text("# only a comment\n", "cfg"), ConfigError);
    CHECK(error_of("[wing]\nhalf_span 10\n").find("cfg:2") != std::string::npos);
    CHECK(error_of("half_span = 10\n").find("cfg:1") != std::string::npos);
    CHECK(error_of("[wings]\n").find("unknown section") != std::string::npos);
}

TEST_CASE("unknown keys are rejected with their line") {
    const std::string msg = error_of(preset_with("lift_slope = 10", "lift_slope = 10\nlift_slop = 10"));
    CHECK(msg.find("wing.lift_slop") != std::string::npos);
    CHECK(msg.find("line 12") != std::string::npos);
}

TEST_CASE("validation names the key and the constraint") {
    CHECK(error_of(preset_with("chord = 10", "chord = ten")).find("wing.chord") != std::string::npos);
    CHECK(error_of(preset_with("dt = 1e-5", "dt = -1")).find("sim.dt") != std::string::npos);
    CHECK(error_of(preset_with("count = 5", "count = 12")).find("feathers.z") != std::string::npos);
    CHECK(error_of(preset_with("x_k = 7.5", "x_k = 7")).find("feathers.x_star") != std::string::npos);
    CHECK(error_of(preset_with("kind = path", "kind = star")).find("network.kind") != std::string::npos);
    CHECK(error_of(preset_with("law = ma", "law = pid")).find("control.law") != std::string::npos);
    CHECK(error_of(preset_with("beta0 = 0.01, 0, 0, 0, 0", "beta0 = -0.01")).find("sim.beta0") != std::string::npos);
    CHECK(error_of(preset_with("[network]", "[network]\n[network]")).find("duplicate") != std::string::npos);
    CHECK(error_of(preset_with("section_height = 2", "torsion_inertia = 15\nsection_height = 2"))
              .find("torsion_inertia") != std::string::npos);
}

TEST_CASE("missing required section") {
    std::string text(preset_text("paper-sec6"));
    text.replace(text.find("[control]"), 9, "[output]\n#");
    CHECK_THROWS_AS(load_config_text(text, "cfg"), ConfigError);
}

TEST_CASE("indefinite kinetic form is a model error naming the offset key") {
    // From the preset: a21 = 67.786 sigma_T and a11 (-b21) = 7551.9, so sigma_T = 2 is indefinite.
    try {
        load_config_text(preset_text("paper-sec6"), "cfg", {"wing.sc_gc_offset=2"});
        FAIL("expected a model error");
    } catch (const ModelError& e) {
        CHECK(std::string(e.what()).find("wing.sc_gc_offset") != std::string::npos);
    }
}

TEST_CASE("overrides") {
    const auto cfg = fwtest::preset({"wing.airspeed=12", "control.law=sg", "sim.steps=3"});
    CHECK(cfg.wing.airspeed == 12.0);
    CHECK(cfg.law == LawKind::sg);
    CHECK(cfg.sim.steps == 3);
    CHECK(error_of(std::string(preset_text("paper-sec6")), {"wing.airspeed"}).find("override") != std::string::npos);
    CHECK(error_of(std::string(preset_text("paper-sec6")), {"wingz.airspeed=1"}).find("unknown section") !=
          std::string::npos);
    CHECK(error_of(std::string(preset_text("paper-sec6")), {"wing.airspeeed=1"}).find("unknown key") !=
          std::string::npos);
}

TEST_CASE("explicit weights, one-based, both directions") {
    const auto cfg = fwtest::preset({"feathers.count=3", "sim.beta0=0.01,0,0", "network.kind=explicit",
                                     "network.weights=1 2 0.5; 2 1 0.5; 2 3 0.25; 3 2 0.25"});
    const auto net = cfg.network();
    CHECK(net.weight(0, 1) == 0.5);
    CHECK(net.weight(2, 1) == 0.25);
    CHECK_THROWS_AS(fwtest::preset({"feathers.count=3", "sim.beta0=0.01,0,0", "network.kind=explicit",
                                    "network.weights=1 2 0.5"}),
                    ConfigError);
}

TEST_CASE("canonical text round-trips") {
    const auto cfg = fwtest::preset({"network.kind=ring", "control.gamma_ma=1,2,3,4,5"});
    const auto again = load_config_text(cfg.to_text(), "again");
    CHECK(again.to_text() == cfg.to_text());
}

TEST_CASE("perturbation is seeded") {
    const auto a = fwtest::preset({"sim.perturbation_scale=1e-3", "sim.perturbation_seed=4"}).initial_state();
    const auto b = fwtest::preset({"sim.perturbation_scale=1e-3", "sim.perturbation_seed=4"}).initial_state();
    const auto c = fwtest::preset({"sim.perturbation_scale=1e-3", "sim.perturbation_seed=5"}).initial_state();
    CHECK(a.x == b.x);
    CHECK(a.x != c.x);
}

}

TEST_SUITE("experiment") {

TEST_CASE("run artifacts: headers, row counts and manifest") {
    const auto dir = scratch("run");
    const auto cfg = fwtest::preset({"stability.points=5"});
    const auto res = run_experiment(cfg, dir);
    for (const char* f : {"trajectory.csv", "coefficients.csv", "eigen.csv", "manifest.json"})
        CHECK(fs::exists(dir / f));

    const std::string traj = read_file(dir / "trajectory.csv");
    std::istringstream in(traj);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x1,x2,x3,x4,E,L,Ltilde,beta_1,beta_2,beta_3,beta_4,beta_5,u_1,u_2,u_3,u_4,u_5");
    CHECK(res.artifacts[0].rows == static_cast<size_t>(cfg.sim.steps + 1));
    CHECK(std::count(traj.begin(), traj.end(), '\n') == cfg.sim.steps + 2);

    const auto m = nlohmann::json::parse(read_file(dir / "manifest.json"));
    CHECK(m["model"]["units"] == "arbitrary units");
    CHECK(m["artifacts"].size() == 3);
    CHECK(m["artifacts"][0]["sha256"] == sha256_hex(traj));
    // Every resolved value is echoed.
    const ConfigDocument doc = ConfigDocument::parse(cfg.to_text());
    for (const auto& [section, entries] : doc.sections())
        for (const auto& [key, entry] : entries) {
            REQUIRE(m["config"][section].contains(key));
            CHECK(m["config"][section][key] == entry.value);
        }
}

TEST_CASE("trajectory CSV parses back to the in-memory values exactly") {
    const auto dir = scratch("roundtrip");
    const auto cfg = fwtest::preset({"sim.steps=50", "sim.dt=1e-3", "stability.points=2"});
    run_experiment(cfg, dir);
    const auto plant = cfg.plant();
    const auto traj = simulate(cfg.initial_state(), ControlLaw(cfg.law, plant, cfg.gains(cfg.law)), plant,
                               cfg.sim.steps, cfg.sim.dt);
    std::istringstream in(read_file(dir / "trajectory.csv"));
    std::string line;
    std::getline(in, line);
    size_t r = 0;
    while (std::getline(in, line)) {
        const auto cells = split_csv_line(line);
        const auto expect = trajectory_cells(traj.rows.at(r++));
        REQUIRE(cells.size() == expect.size());
        for (size_t k = 0; k < cells.size(); ++k) CHECK(parse_number(cells[k]) == expect[k]);
    }
    CHECK(r == traj.rows.size());
}

TEST_CASE("re-runs are bit-identical") {
    const auto cfg = fwtest::preset({"sim.steps=200", "stability.points=10"});
    const auto a = run_experiment(cfg, scratch("det_a"));
    const auto b = run_experiment(cfg, scratch("det_b"));
    REQUIRE(a.artifacts.size() == b.artifacts.size());
    for (size_t i = 0; i < a.artifacts.size(); ++i) CHECK(a.artifacts[i].sha256 == b.artifacts[i].sha256);
}

TEST_CASE("divergence flushes the partial trajectory") {
    const auto dir = scratch("diverge");
    const auto cfg = fwtest::preset({"sim.dt=0.5", "sim.steps=100000", "stability.points=2", "control.law=none"});
    CHECK_THROWS_AS(run_experiment(cfg, dir), DivergenceError);
    CHECK(fs::exists(dir / "trajectory.csv"));
    const auto m = nlohmann::json::parse(read_file(dir / "manifest.json"));
    CHECK(m["diverged"] == true);
    CHECK(m["steps_taken"].get<long>() < 100000);
}

TEST_CASE("io errors surface as IoError") {
    const auto blocker = scratch("blocker");
    write_file(blocker, "not a directory");
    CHECK_THROWS_AS(run_experiment(fwtest::preset({"stability.points=2"}), blocker / "sub"), IoError);
}

}

TEST_SUITE("compare") {

TEST_CASE("zero gains: every law is the uncontrolled run") {
    const auto cfg = fwtest::preset({"control.gamma_sg=0", "control.gamma_nonma=0", "control.gamma_ma=0",
                                     "sim.steps=2000", "compare.extend_until_half=false", "compare.sample_every=100"});
    const auto c = compare_laws_serial(cfg);
    REQUIRE(c.laws.size() == 3);
    for (const auto& m : c.laws) {
        CHECK(m.beta_norm == c.laws[0].beta_norm);
        CHECK(m.energy == c.laws[0].energy);
        CHECK(m.beta_norm_T == m.beta_norm_0);
    }
}

TEST_CASE("serial and parallel comparisons agree exactly") {
    const auto cfg = fwtest::preset({"sim.steps=5000", "compare.extend_until_half=false", "compare.sample_every=500"});
    const auto s = compare_laws_serial(cfg);
    const auto p = compare_laws_parallel(cfg);
    CHECK(comparison_csv(s) == comparison_csv(p));
    CHECK(comparison_series_csv(s) == comparison_series_csv(p));
    CHECK(comparison_markdown(s) == comparison_markdown(p));
}

TEST_CASE("horizon doubles until some law halves the angles") {
    const auto cfg = fwtest::preset({"sim.dt=1e-4", "sim.steps=1000"});
    const auto c = compare_laws_parallel(cfg);
    bool halved = false;
    for (const auto& m : c.laws) halved = halved || m.time_to_half.has_value();
    CHECK(halved);
    CHECK(c.steps % 1000 == 0);
    const auto& nonma = c.laws[1];
    const auto& ma = c.laws[2];
    CHECK(nonma.law == LawKind::nonma);
    CHECK(ma.law == LawKind::ma);
    CHECK(ma.beta_norm_T < nonma.beta_norm_T);
    CHECK(comparison_markdown(c).find("ma, ") != std::string::npos);
}

TEST_CASE("doubling the multiagent gains does not slow the halving") {
    const auto base = fwtest::preset({"sim.dt=1e-4", "sim.steps=100000", "compare.extend_until_half=false"});
    const auto doubled = fwtest::preset({"sim.dt=1e-4", "sim.steps=100000", "compare.extend_until_half=false",
                                         "control.gamma_ma=2"});
    const auto plant = base.plant();
    const auto m1 = measure_law(base, plant, LawKind::ma, base.sim.steps);
    const auto m2 = measure_law(doubled, plant, LawKind::ma, doubled.sim.steps);
    REQUIRE(m1.time_to_half.has_value());
    REQUIRE(m2.time_to_half.has_value());
    MESSAGE("time to half, gain 1: " << *m1.time_to_half << ", gain 2: " << *m2.time_to_half);
    CHECK(*m2.time_to_half <= *m1.time_to_half);
}

TEST_CASE("comparison artifacts") {
    const auto dir = scratch("compare");
    const auto cfg = fwtest::preset({"sim.steps=3000", "compare.extend_until_half=false", "compare.sample_every=1000"});
    const auto c = compare_laws_serial(cfg);
    const auto a = write_comparison(cfg, c, dir);
    CHECK(a.size() == 3);
    CHECK(read_file(dir / "compare.csv").rfind("law,T,beta_norm_0,beta_norm_T,time_to_half,E_T,L_T,Ltilde_T\n", 0) == 0);
    // Samples at steps 0, 1000, 2000, 3000.
    CHECK(a[2].rows == 4);
    CHECK(fs::exists(dir / "manifest.json"));
}

}
