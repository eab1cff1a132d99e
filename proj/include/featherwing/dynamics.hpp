#pragma once

#include <functional>
#include <span>
#include <vector>

#include "featherwing/control_laws.hpp"
#include "featherwing/errors.hpp"
#include "featherwing/plant.hpp"

namespace featherwing {

struct SimState {
    double t = 0.0;
    ModalState x{0.0, 0.0, 0.0, 0.0};
    std::vector<double> beta;
};

/// Time derivative of (x, beta) for a given control vector.
struct StateDerivative {
    ModalState dx{0.0, 0.0, 0.0, 0.0};
    std::vector<double> dbeta;
};

/**
 * xdot1 = x2, xdot2 = sum C1k xk + sum (R1i beta_i + s1i u_i),
 * xdot3 = x4, xdot4 = sum C2k xk + sum (R2i beta_i + s2i u_i), betadot = u.
 */
StateDerivative state_derivative(const SimState& s, std::span<const double> u,
                                 const PlantModel& plant);

struct IntegratorOptions {
    bool saturation = true;
};

/// Zeroes u_i pointing out of the bound interval at an active bound.
void project_control(std::span<const double> beta, std::span<const FeatherSpec> feathers,
                     std::span<double> u);

/// Control actually applied at a state: the law, projected when saturating.
std::vector<double> applied_control(const SimState& s, const ControlLaw& law,
                                    const PlantModel& plant, const IntegratorOptions& opt);

/// One classical RK4 step; the control is re-evaluated at every stage.
/// Throws DivergenceError on a non-finite result.
SimState rk4_step(const SimState& s, const ControlLaw& law, const PlantModel& plant, double dt,
                  const IntegratorOptions& opt = {});

/// E = 1/2 a13 x1^2 + 1/2 a11 x2^2 - 1/2 b23e x3^2 - 1/2 b21 x4^2 - a21 x2 x4.
double energy(const ModalState& x, const ModalCoefficients& c);
/// dE/dt by the chain rule for a given xdot.
double energy_rate(const ModalState& x, const ModalState& dx, const ModalCoefficients& c);

/// L = 1/2 [chi (x1^2 + x2^2) + lambda (x3^2 + x4^2)].
double functional_L(const ModalState& x, const NetworkConstants& k);
double functional_L(const ModalState& x, const Adjacency& net, const ModeShapes& modes,
                    std::span<const double> stations);
double functional_L_rate(const ModalState& x, const ModalState& dx, const NetworkConstants& k);

/// L~ = L + 1/2 sum_i sum_{j in N_i} b_ij (beta_i - beta_j)^2.
double functional_L_tilde(const ModalState& x, std::span<const double> beta, const Adjacency& net,
                          const NetworkConstants& k);
double functional_L_tilde_rate(const ModalState& x, const ModalState& dx,
                               std::span<const double> beta, std::span<const double> u,
                               const Adjacency& net, const NetworkConstants& k);

struct TrajectoryRow {
    SimState state;
    std::vector<double> u;
    double E = 0.0;
    double L = 0.0;
    double L_tilde = 0.0;
};

struct Trajectory {
    double dt = 0.0;
    std::vector<TrajectoryRow> rows;
};

/// Diagnostics for one state: the applied control and E, L, L~.
TrajectoryRow make_row(const SimState& s, const ControlLaw& law, const PlantModel& plant,
                       const IntegratorOptions& opt);

/// Divergence carrying everything integrated before the blow-up.
class SimulationDiverged : public DivergenceError {
public:
    SimulationDiverged(const DivergenceError& cause, Trajectory partial)
        : DivergenceError(cause), partial_(std::move(partial)) {}
    const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

/// Receives every row, including t = 0; returning false stops the run.
using RowObserver = std::function<bool(const TrajectoryRow&)>;

/// Streams `steps` RK4 steps to `observe` without storing them. Returns the
/// number of steps taken.
long integrate(const SimState& init, const ControlLaw& law, const PlantModel& plant, long steps,
               double dt, const IntegratorOptions& opt, const RowObserver& observe);

/// Full trajectory with steps + 1 rows. Throws SimulationDiverged.
Trajectory simulate(const SimState& init, const ControlLaw& law, const PlantModel& plant,
                    long steps, double dt, const IntegratorOptions& opt = {});

}  // namespace featherwing
