#include "featherwing/plant.hpp"

#include "featherwing/errors.hpp"

namespace featherwing {

PlantModel assemble_plant(const WingModel& wing, std::vector<FeatherSpec> feathers,
                          Adjacency network, double footprint, int panels) {
    wing.validate();
    if (network.size() != static_cast<int>(feathers.size()))
        throw ParameterError("network size differs from the number of feathers");

    PlantModel p;
    p.wing = wing;
    p.modes = ModeShapes(wing.half_span);
    p.coeffs = modal_coefficients(wing, p.modes, panels);
    p.feathers = std::move(feathers);
    p.footprint = footprint;
    p.influence = influence_coeffs(p.feathers, wing, p.modes, p.coeffs, footprint);
    p.stations.reserve(p.feathers.size());
    for (const auto& f : p.feathers) p.stations.push_back(f.span_position);
    p.network = std::move(network);
    p.network_constants = chi_lambda(p.network, p.modes, p.stations);
    return p;
}

PlantModel with_airspeed(const PlantModel& plant, double airspeed) {
    return assemble_plant(plant.wing.with_airspeed(airspeed), plant.feathers, plant.network,
                          plant.footprint, plant.coeffs.panels);
}

}  // namespace featherwing
