#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "featherwing/dynamics.hpp"
#include "featherwing/errors.hpp"
#include "support.hpp"

using namespace featherwing;
using fwtest::preset_plant;

namespace {

// Solves the second-order modal equations directly with Cramer's rule.
ModalState oracle_xdot(const PlantModel& p, const ModalState& x, std::span<const double> beta,
                       std::span<const double> u) {
    const auto& c = p.coeffs;
    const double V = p.wing.airspeed;
    double f1 = 0.0, f2 = 0.0;
    for (size_t i = 0; i < beta.size(); ++i) {
        const auto& inf = p.influence[i];
        f1 += V * V * inf.A_bar * beta[i] + V * inf.B_bar * u[i];
        f2 += V * V * inf.C_bar * beta[i] + V * inf.D_bar * u[i];
    }
    const double r1 = -(c.a13 * x[0] + c.b13 * x[2] + c.a12 * x[1] + c.b12 * x[3]) + f1;
    const double r2 = -(c.b23 * x[2] + c.a22 * x[1] + c.b22 * x[3]) + f2;
    const double det = c.a11 * c.b21 - c.b11 * c.a21;
    return {x[1], (r1 * c.b21 - c.b11 * r2) / det, x[3], (c.a11 * r2 - c.a21 * r1) / det};
}

PlantModel conservative_plant() {
    return preset_plant({"wing.air_density=0", "wing.sc_gc_offset=0"});
}

SimState state(ModalState x, std::vector<double> beta) {
    SimState s;
    s.x = x;
    s.beta = std::move(beta);
    return s;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("state derivative: equilibrium and single deflected feather") {
    const auto p = preset_plant();
    const std::vector<double> zero(5, 0.0);
    const auto d0 = state_derivative(state({0, 0, 0, 0}, zero), zero, p);
    for (double v : d0.dx) CHECK(v == 0.0);
    for (double v : d0.dbeta) CHECK(v == 0.0);

    const auto d1 = state_derivative(state({0, 0, 0, 0}, {1, 0, 0, 0, 0}), zero, p);
    CHECK(d1.dx[1] == p.influence[0].R1);
    CHECK(d1.dx[3] == p.influence[0].R2);
    CHECK(d1.dx[0] == 0.0);
    CHECK(d1.dx[2] == 0.0);
}

TEST_CASE("state derivative: agrees with the second-order modal equations") {
    for (const char* x0 : {"wing.sc_position=2.5", "wing.sc_position=3.5"}) {
        const auto p = preset_plant({x0});
        std::mt19937_64 rng(21);
        for (int t = 0; t < 100; ++t) {
            const auto xv = fwtest::uniform_vec(rng, 4, -1.0, 1.0);
            const ModalState x{xv[0], xv[1], xv[2], xv[3]};
            const auto beta = fwtest::uniform_vec(rng, 5, 0.0, 0.35);
            const auto u = fwtest::uniform_vec(rng, 5, -1.0, 1.0);
            const auto d = state_derivative(state(x, beta), u, p);
            const auto ref = oracle_xdot(p, x, beta, u);
            for (size_t k = 0; k < 4; ++k) {
                const double scale = std::abs(ref[k]) + 1e-9 * (std::abs(ref[1]) + std::abs(ref[3]));
                CHECK(std::abs(d.dx[k] - ref[k]) <= 1e-10 * scale);
            }
            for (size_t i = 0; i < 5; ++i) CHECK(d.dbeta[i] == u[i]);
        }
    }
}

TEST_CASE("rk4: equilibrium is a fixed point") {
    const auto p = preset_plant();
    for (auto kind : {LawKind::none, LawKind::sg, LawKind::nonma, LawKind::ma}) {
        const ControlLaw law(kind, p, {1.0});
        const auto traj = simulate(state({0, 0, 0, 0}, std::vector<double>(5, 0.0)), law, p, 50, 1e-3);
        for (const auto& row : traj.rows) {
            for (double v : row.state.x) CHECK(v == 0.0);
            for (double v : row.state.beta) CHECK(v == 0.0);
        }
    }
}

TEST_CASE("rk4: harmonic period of the uncoupled bending mode") {
    const auto p = conservative_plant();
    const double omega = std::sqrt(p.coeffs.a13 / p.coeffs.a11);
    const double period = 2.0 * std::numbers::pi / omega;
    const double dt = 1e-4 * period;
    const ControlLaw law = ControlLaw::open_loop(p);
    // Zero crossings of x1 going upward, refined by linear interpolation.
    std::vector<double> ups;
    double prev_t = 0.0, prev_x = 1.0;
    integrate(state({1, 0, 0, 0}, std::vector<double>(5, 0.0)), law, p, 25000, dt, {},
              [&](const TrajectoryRow& r) {
                  const double x = r.state.x[0];
                  if (prev_x < 0.0 && x >= 0.0) ups.push_back(prev_t + (r.state.t - prev_t) * (-prev_x) / (x - prev_x));
                  prev_t = r.state.t;
                  prev_x = x;
                  return true;
              });
    REQUIRE(ups.size() >= 2);
    CHECK(std::abs((ups[1] - ups[0]) - period) <= 1e-3 * period);
}

TEST_CASE("rk4: fourth-order global convergence") {
    const auto p = preset_plant();
    const ControlLaw law(LawKind::ma, p, {1.0});
    const SimState init = state({0.01, 0.0, 0.001, 0.0}, {0.01, 0.02, 0.03, 0.02, 0.01});
    const double T = 0.1;
    // Saturation off: the projection is not smooth at the bounds.
    const IntegratorOptions opt{false};
    auto end = [&](double dt) {
        const long n = std::lround(T / dt);
        return simulate(init, law, p, n, dt, opt).rows.back().state;
    };
    const auto ref = end(1.25e-4);
    auto err = [&](const SimState& s) {
        double e = 0.0;
        for (size_t k = 0; k < 4; ++k) e = std::max(e, std::abs(s.x[k] - ref.x[k]));
        return e;
    };
    const double e1 = err(end(1e-3)), e2 = err(end(5e-4));
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("energy: zero state and decoupled positivity") {
    const auto p = conservative_plant();
    CHECK(energy({0, 0, 0, 0}, p.coeffs) == 0.0);
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        const auto v = fwtest::uniform_vec(rng, 4, -5.0, 5.0);
        const ModalState x{v[0], v[1], v[2], v[3]};
        const auto& c = p.coeffs;
        const double terms[4] = {0.5 * c.a13 * x[0] * x[0], 0.5 * c.a11 * x[1] * x[1],
                                 -0.5 * c.b23_elastic * x[2] * x[2], -0.5 * c.b21 * x[3] * x[3]};
        double sum = 0.0;
        for (double term : terms) {
            CHECK(term >= 0.0);
            sum += term;
        }
        CHECK(energy(x, c) == doctest::Approx(sum).epsilon(1e-14));
    }
}

TEST_CASE("energy: conserved in the conservative limit") {
    for (const char* offset : {"wing.sc_gc_offset=0", "wing.sc_gc_offset=0.4"}) {
        const auto p = preset_plant({"wing.air_density=0", offset});
        const double omega_max = std::sqrt(std::max(p.coeffs.a13 / p.coeffs.a11, p.coeffs.b23_elastic / p.coeffs.b21));
        const double dt = 1e-3 * 2.0 * std::numbers::pi / omega_max;
        const ControlLaw law = ControlLaw::open_loop(p);
        const SimState init = state({1.0, 0.2, 0.5, -0.1}, std::vector<double>(5, 0.0));
        const double e0 = energy(init.x, p.coeffs);
        double worst = 0.0;
        integrate(init, law, p, 10000, dt, {}, [&](const TrajectoryRow& r) {
            worst = std::max(worst, std::abs(r.E - e0));
            return true;
        });
        CHECK(worst <= 1e-6 * e0);
    }
}

TEST_CASE("functional L: brute-force double sum") {
    const auto p = preset_plant({"network.kind=complete"});
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const auto v = fwtest::uniform_vec(rng, 4, -1.0, 1.0);
        const ModalState x{v[0], v[1], v[2], v[3]};
        double ref = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const double df = p.modes.bending(p.stations[static_cast<size_t>(i)]).f -
                                  p.modes.bending(p.stations[static_cast<size_t>(j)]).f;
                const double dp = p.modes.torsion(p.stations[static_cast<size_t>(i)]).phi -
                                  p.modes.torsion(p.stations[static_cast<size_t>(j)]).phi;
                ref += 0.5 * p.network.weight(i, j) *
                       (df * df * (x[0] * x[0] + x[1] * x[1]) + dp * dp * (x[2] * x[2] + x[3] * x[3]));
            }
        CHECK(functional_L(x, p.network_constants) == doctest::Approx(ref).epsilon(1e-12));
        CHECK(functional_L(x, p.network, p.modes, p.stations) == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(functional_L({0, 0, 0, 0}, p.network_constants) == 0.0);
}

TEST_CASE("functional L~: consensus subspace and the three-feather path") {
    const auto p = preset_plant();
    const ModalState x{0.3, -0.2, 0.1, 0.05};
    const std::vector<double> uniform(5, 0.2);
    CHECK(functional_L_tilde(x, uniform, p.network, p.network_constants) ==
          functional_L(x, p.network_constants));

    const std::vector<std::tuple<int, int, double>> w{{0, 1, 0.5}, {1, 0, 0.5}, {1, 2, 0.5}, {2, 1, 0.5}};
    const auto net = Adjacency::from_weights(3, w);
    CHECK(functional_L_tilde({0, 0, 0, 0}, std::vector<double>{1, 0, 0}, net, NetworkConstants{1.0, 1.0}) == 0.5);
}

TEST_CASE("rates: chain rule against centred differences") {
    const auto p = preset_plant();
    const ControlLaw law(LawKind::ma, p, {1.0});
    std::mt19937_64 rng(17);
    const double h = 1e-6;
    for (int t = 0; t < 30; ++t) {
        const auto v = fwtest::uniform_vec(rng, 4, -0.1, 0.1);
        SimState s = state({v[0], v[1], v[2], v[3]}, fwtest::uniform_vec(rng, 5, 0.05, 0.3));
        std::vector<double> u(5);
        law.evaluate(s.x, s.beta, u);
        const auto d = state_derivative(s, u, p);
        auto shifted = [&](double sign) {
            SimState q = s;
            for (size_t k = 0; k < 4; ++k) q.x[k] += sign * h * d.dx[k];
            for (size_t i = 0; i < 5; ++i) q.beta[i] += sign * h * d.dbeta[i];
            return q;
        };
        const auto sp = shifted(1.0), sm = shifted(-1.0);
        const double fd_e = (energy(sp.x, p.coeffs) - energy(sm.x, p.coeffs)) / (2 * h);
        const double fd_l = (functional_L(sp.x, p.network_constants) - functional_L(sm.x, p.network_constants)) / (2 * h);
        const double fd_lt = (functional_L_tilde(sp.x, sp.beta, p.network, p.network_constants) -
                              functional_L_tilde(sm.x, sm.beta, p.network, p.network_constants)) / (2 * h);
        CHECK(fwtest::close_rel(energy_rate(s.x, d.dx, p.coeffs), fd_e, 1e-5, 1e-14));
        CHECK(fwtest::close_rel(functional_L_rate(s.x, d.dx, p.network_constants), fd_l, 1e-5, 1e-14));
        CHECK(fwtest::close_rel(functional_L_tilde_rate(s.x, d.dx, s.beta, u, p.network, p.network_constants),
                                fd_lt, 1e-5, 1e-14));
    }
}

TEST_CASE("saturation: outward control is projected and angles stay in bounds") {
    const auto p = preset_plant();
    std::vector<double> u{-1.0, 1.0, 0.5, -0.5, 0.0};
    const std::vector<double> beta{0.0, 0.35, 0.1, 0.0, 0.35};
    project_control(beta, p.feathers, u);
    CHECK(u[0] == 0.0);
    CHECK(u[1] == 0.0);
    CHECK(u[2] == 0.5);
    CHECK(u[3] == 0.0);
    CHECK(u[4] == 0.0);

    const ControlLaw law(LawKind::ma, p, {50.0});
    const auto traj = simulate(state({0.01, 0, 0, 0}, {0.35, 0.0, 0.2, 0.0, 0.35}), law, p, 2000, 1e-3);
    for (const auto& row : traj.rows)
        for (size_t i = 0; i < 5; ++i) {
            CHECK(row.state.beta[i] >= p.feathers[i].beta_min);
            CHECK(row.state.beta[i] <= p.feathers[i].beta_max);
        }
}

TEST_CASE("simulate: grid, row count and divergence with partial trajectory") {
    const auto p = preset_plant();
    const ControlLaw law(LawKind::ma, p, {1.0});
    const auto traj = simulate(state({0.01, 0, 0, 0}, {0.01, 0, 0, 0, 0}), law, p, 10, 1e-5);
    CHECK(traj.rows.size() == 11);
    CHECK(traj.rows.back().state.t == 10 * 1e-5);

    // dt far past the RK4 stability limit of the fast torsion pair.
    try {
        simulate(state({0.01, 0, 0, 0}, std::vector<double>(5, 0.0)), ControlLaw::open_loop(p), p, 100000, 0.5);
        FAIL("expected divergence");
    } catch (const SimulationDiverged& e) {
        CHECK(!e.partial().rows.empty());
        CHECK(e.partial().rows.size() < 100001);
        CHECK(std::isfinite(e.time()));
    }
    CHECK_THROWS_AS(simulate(state({0, 0, 0, 0}, std::vector<double>(4, 0.0)), law, p, 10, 1e-5), ParameterError);
    CHECK_THROWS_AS(simulate(state({0, 0, 0, 0}, std::vector<double>(5, 0.0)), law, p, 10, -1.0), ParameterError);
}

}
