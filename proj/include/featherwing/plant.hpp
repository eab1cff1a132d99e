#pragma once

#include <span>
#include <vector>

#include "featherwing/agent_network.hpp"
#include "featherwing/feather_aero.hpp"
#include "featherwing/model_core.hpp"

namespace featherwing {

/// Everything the state equations and the control laws read: modal
/// coefficients, per-feather influence, span stations and the network.
struct PlantModel {
    WingModel wing;
    ModeShapes modes{1.0};
    ModalCoefficients coeffs;
    std::vector<FeatherSpec> feathers;
    std::vector<FeatherInfluence> influence;
    std::vector<double> stations;
    Adjacency network;
    NetworkConstants network_constants;
    double footprint = 0.0;

    int size() const noexcept { return static_cast<int>(feathers.size()); }
};

/// Validates and assembles the model. Throws ModelError, DomainError or
/// ParameterError from the underlying builders.
PlantModel assemble_plant(const WingModel& wing, std::vector<FeatherSpec> feathers,
                          Adjacency network, double footprint, int panels = kDefaultPanels);

/// Same feathers, network and footprint rebuilt at another airspeed.
PlantModel with_airspeed(const PlantModel& plant, double airspeed);

}  // namespace featherwing
