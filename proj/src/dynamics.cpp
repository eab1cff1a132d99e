#include "featherwing/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace featherwing {

namespace {

void check_dims(const SimState& s, std::span<const double> u, const PlantModel& plant) {
    const auto n = static_cast<size_t>(plant.size());
    if (s.beta.size() != n || u.size() != n) {
        std::ostringstream os;
        os << "state_derivative: dimension mismatch (N=" << n << ", beta=" << s.beta.size()
           << ", u=" << u.size() << ")";
        throw ParameterError(os.str());
    }
}

// Derivative into preallocated storage; beta and u have plant.size() entries.
void derivative_into(const ModalState& x, std::span<const double> beta, std::span<const double> u,
                     const PlantModel& plant, ModalState& dx, std::span<double> dbeta) {
    const auto& c = plant.coeffs;
    double f1 = 0.0, f2 = 0.0;
    for (size_t i = 0; i < beta.size(); ++i) {
        const auto& fi = plant.influence[i];
        f1 += fi.R1 * beta[i] + fi.s1 * u[i];
        f2 += fi.R2 * beta[i] + fi.s2 * u[i];
    }
    dx[0] = x[1];
    dx[1] = c.c1[0] * x[0] + c.c1[1] * x[1] + c.c1[2] * x[2] + c.c1[3] * x[3] + f1;
    dx[2] = x[3];
    dx[3] = c.c2[0] * x[0] + c.c2[1] * x[1] + c.c2[2] * x[2] + c.c2[3] * x[3] + f2;
    std::copy(u.begin(), u.end(), dbeta.begin());
}

double norm(const ModalState& x) {
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
}

/// RK4 with reusable scratch buffers.
class Stepper {
public:
    Stepper(const ControlLaw& law, const PlantModel& plant, const IntegratorOptions& opt)
        : law_(law), plant_(plant), opt_(opt) {
        const auto n = static_cast<size_t>(plant.size());
        if (static_cast<size_t>(law.size()) != n)
            throw ParameterError("control law and plant disagree on the number of feathers");
        for (auto* v : {&u_, &b_stage_, &k1b_, &k2b_, &k3b_, &k4b_}) v->assign(n, 0.0);
    }

    void step(SimState& s, double dt) {
        const size_t n = s.beta.size();
        ModalState x_stage;

        stage(s.x, s.beta, k1x_, k1b_);
        for (int k = 0; k < 4; ++k) x_stage[k] = s.x[k] + 0.5 * dt * k1x_[k];
        for (size_t i = 0; i < n; ++i) b_stage_[i] = s.beta[i] + 0.5 * dt * k1b_[i];

        stage(x_stage, b_stage_, k2x_, k2b_);
        for (int k = 0; k < 4; ++k) x_stage[k] = s.x[k] + 0.5 * dt * k2x_[k];
        for (size_t i = 0; i < n; ++i) b_stage_[i] = s.beta[i] + 0.5 * dt * k2b_[i];

        stage(x_stage, b_stage_, k3x_, k3b_);
        for (int k = 0; k < 4; ++k) x_stage[k] = s.x[k] + dt * k3x_[k];
        for (size_t i = 0; i < n; ++i) b_stage_[i] = s.beta[i] + dt * k3b_[i];

        stage(x_stage, b_stage_, k4x_, k4b_);
        for (int k = 0; k < 4; ++k)
            s.x[k] += dt / 6.0 * (k1x_[k] + 2.0 * k2x_[k] + 2.0 * k3x_[k] + k4x_[k]);
        for (size_t i = 0; i < n; ++i)
            s.beta[i] += dt / 6.0 * (k1b_[i] + 2.0 * k2b_[i] + 2.0 * k3b_[i] + k4b_[i]);
        s.t += dt;

        if (opt_.saturation)
            for (size_t i = 0; i < n; ++i) {
                const auto& f = plant_.feathers[i];
                s.beta[i] = std::clamp(s.beta[i], f.beta_min, f.beta_max);
            }

        bool finite = std::isfinite(s.t);
        for (double v : s.x) finite = finite && std::isfinite(v);
        for (double v : s.beta) finite = finite && std::isfinite(v);
        if (!finite) {
            std::ostringstream os;
            os << "integration diverged at t=" << s.t << " (|x|=" << norm(s.x) << ")";
            throw DivergenceError(os.str(), s.t, norm(s.x));
        }
    }

private:
    void stage(const ModalState& x, std::span<const double> beta, ModalState& dx,
               std::span<double> dbeta) {
        law_.evaluate(x, beta, u_);
        if (opt_.saturation) project_control(beta, plant_.feathers, u_);
        derivative_into(x, beta, u_, plant_, dx, dbeta);
    }

    const ControlLaw& law_;
    const PlantModel& plant_;
    IntegratorOptions opt_;
    std::vector<double> u_, b_stage_, k1b_, k2b_, k3b_, k4b_;
    ModalState k1x_{}, k2x_{}, k3x_{}, k4x_{};
};

}  // namespace

StateDerivative state_derivative(const SimState& s, std::span<const double> u,
                                 const PlantModel& plant) {
    check_dims(s, u, plant);
    StateDerivative d;
    d.dbeta.assign(u.size(), 0.0);
    derivative_into(s.x, s.beta, u, plant, d.dx, d.dbeta);
    return d;
}

void project_control(std::span<const double> beta, std::span<const FeatherSpec> feathers,
                     std::span<double> u) {
    for (size_t i = 0; i < u.size(); ++i) {
        if (beta[i] <= feathers[i].beta_min && u[i] < 0.0) u[i] = 0.0;
        if (beta[i] >= feathers[i].beta_max && u[i] > 0.0) u[i] = 0.0;
    }
}

std::vector<double> applied_control(const SimState& s, const ControlLaw& law,
                                    const PlantModel& plant, const IntegratorOptions& opt) {
    std::vector<double> u(s.beta.size(), 0.0);
    law.evaluate(s.x, s.beta, u);
    if (opt.saturation) project_control(s.beta, plant.feathers, u);
    return u;
}

SimState rk4_step(const SimState& s, const ControlLaw& law, const PlantModel& plant, double dt,
                  const IntegratorOptions& opt) {
    if (!(dt > 0.0)) throw ParameterError("rk4_step: dt must be > 0");
    std::vector<double> u(s.beta.size(), 0.0);
    check_dims(s, u, plant);
    Stepper stepper(law, plant, opt);
    SimState next = s;
    stepper.step(next, dt);
    return next;
}

// ---------------------------------------------------------------------------

double energy(const ModalState& x, const ModalCoefficients& c) {
    return 0.5 * c.a13 * x[0] * x[0] + 0.5 * c.a11 * x[1] * x[1] -
           0.5 * c.b23_elastic * x[2] * x[2] - 0.5 * c.b21 * x[3] * x[3] - c.a21 * x[1] * x[3];
}

double energy_rate(const ModalState& x, const ModalState& dx, const ModalCoefficients& c) {
    return c.a13 * x[0] * dx[0] + c.a11 * x[1] * dx[1] - c.b23_elastic * x[2] * dx[2] -
           c.b21 * x[3] * dx[3] - c.a21 * (dx[1] * x[3] + x[1] * dx[3]);
}

double functional_L(const ModalState& x, const NetworkConstants& k) {
    return 0.5 * (k.chi * (x[0] * x[0] + x[1] * x[1]) + k.lambda * (x[2] * x[2] + x[3] * x[3]));
}

double functional_L(const ModalState& x, const Adjacency& net, const ModeShapes& modes,
                    std::span<const double> stations) {
    return functional_L(x, chi_lambda(net, modes, stations));
}

double functional_L_rate(const ModalState& x, const ModalState& dx, const NetworkConstants& k) {
    return k.chi * (x[0] * dx[0] + x[1] * dx[1]) + k.lambda * (x[2] * dx[2] + x[3] * dx[3]);
}

double functional_L_tilde(const ModalState& x, std::span<const double> beta, const Adjacency& net,
                          const NetworkConstants& k) {
    double s = 0.0;
    for (int i = 0; i < net.size(); ++i)
        for (int j : net.neighbors(i)) {
            const double d = beta[static_cast<size_t>(i)] - beta[static_cast<size_t>(j)];
            s += net.weight(i, j) * d * d;
        }
    return functional_L(x, k) + 0.5 * s;
}

double functional_L_tilde_rate(const ModalState& x, const ModalState& dx,
                               std::span<const double> beta, std::span<const double> u,
                               const Adjacency& net, const NetworkConstants& k) {
    double s = 0.0;
    for (int i = 0; i < net.size(); ++i)
        for (int j : net.neighbors(i)) {
            const auto a = static_cast<size_t>(i), b = static_cast<size_t>(j);
            s += net.weight(i, j) * (beta[a] - beta[b]) * (u[a] - u[b]);
        }
    return functional_L_rate(x, dx, k) + s;
}

// ---------------------------------------------------------------------------

TrajectoryRow make_row(const SimState& s, const ControlLaw& law, const PlantModel& plant,
                       const IntegratorOptions& opt) {
    TrajectoryRow row;
    row.state = s;
    row.u = applied_control(s, law, plant, opt);
    row.E = energy(s.x, plant.coeffs);
    row.L = functional_L(s.x, plant.network_constants);
    row.L_tilde = functional_L_tilde(s.x, s.beta, plant.network, plant.network_constants);
    return row;
}

long integrate(const SimState& init, const ControlLaw& law, const PlantModel& plant, long steps,
               double dt, const IntegratorOptions& opt, const RowObserver& observe) {
    if (steps < 1) throw ParameterError("simulate: horizon must be >= 1 step");
    if (!(dt > 0.0)) throw ParameterError("simulate: dt must be > 0");
    std::vector<double> probe(init.beta.size(), 0.0);
    check_dims(init, probe, plant);

    Stepper stepper(law, plant, opt);
    SimState s = init;
    if (!observe(make_row(s, law, plant, opt))) return 0;
    const double t0 = init.t;
    for (long k = 1; k <= steps; ++k) {
        stepper.step(s, dt);
        // Uniform grid without accumulated rounding.
        s.t = t0 + static_cast<double>(k) * dt;
        if (!observe(make_row(s, law, plant, opt))) return k;
    }
    return steps;
}

Trajectory simulate(const SimState& init, const ControlLaw& law, const PlantModel& plant,
                    long steps, double dt, const IntegratorOptions& opt) {
    Trajectory traj;
    traj.dt = dt;
    traj.rows.reserve(static_cast<size_t>(steps) + 1);
    try {
        integrate(init, law, plant, steps, dt, opt, [&](const TrajectoryRow& row) {
            traj.rows.push_back(row);
            return true;
        });
    } catch (const DivergenceError& e) {
        throw SimulationDiverged(e, std::move(traj));
    }
    return traj;
}

}  // namespace featherwing
