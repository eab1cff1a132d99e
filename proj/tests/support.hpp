#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "featherwing/config.hpp"
#include "featherwing/plant.hpp"

namespace fwtest {

using namespace featherwing;

/// Reference wing of the preset, torsion inertia from the elliptical section.
inline WingModel sec6_wing() {
    WingModel w;
    w.half_span = 10.0;
    w.chord = 10.0;
    w.linear_mass = 10.0;
    w.sc_gc_offset = 0.1;
    w.torsion_inertia = elliptical_torsion_inertia(2.0, 10.0);
    w.bending_stiffness = 50.0;
    w.torsion_stiffness = 70.0;
    w.sc_position = 2.5;
    w.lift_slope = 10.0;
    w.airspeed = 10.0;
    w.air_density = 1.225;
    return w;
}

inline ExperimentConfig preset(const std::vector<std::string>& overrides = {}) {
    return load_config_text(preset_text("paper-sec6"), "preset", overrides);
}

inline PlantModel preset_plant(const std::vector<std::string>& overrides = {}) {
    return preset(overrides).plant();
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

inline std::vector<double> uniform_vec(std::mt19937_64& rng, size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

}  // namespace fwtest
