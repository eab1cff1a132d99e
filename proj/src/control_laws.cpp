#include "featherwing/control_laws.hpp"

#include <string>

#include "featherwing/errors.hpp"

namespace featherwing {

std::string_view to_string(LawKind kind) {
    switch (kind) {
        case LawKind::none: return "none";
        case LawKind::sg: return "sg";
        case LawKind::nonma: return "nonma";
        case LawKind::ma: return "ma";
    }
    return "?";
}

LawKind law_from_string(std::string_view text) {
    if (text == "none") return LawKind::none;
    if (text == "sg") return LawKind::sg;
    if (text == "nonma") return LawKind::nonma;
    if (text == "ma") return LawKind::ma;
    throw ParameterError("unknown control law '" + std::string(text) + "' (sg|nonma|ma|none)");
}

namespace {

void check_size(size_t expected, size_t got, const char* what) {
    if (expected != got)
        throw ParameterError(std::string(what) + ": dimension mismatch (expected " +
                             std::to_string(expected) + ", got " + std::to_string(got) + ")");
}

}  // namespace

SgGains sg_gains(const ModalCoefficients& c, std::span<const FeatherInfluence> infl) {
    SgGains g;
    g.mu.reserve(infl.size());
    g.nu.reserve(infl.size());
    for (const auto& fi : infl) {
        g.mu.push_back(c.a11 * fi.s1 - c.a21 * fi.s2);
        g.nu.push_back(-(c.a21 * fi.s1 + c.b21 * fi.s2));
    }
    return g;
}

void control_sg(const ModalState& x, std::span<const double> gamma, const SgGains& gains,
                std::span<double> u) {
    check_size(gains.mu.size(), u.size(), "control_sg");
    check_size(gamma.size(), u.size(), "control_sg");
    for (size_t i = 0; i < u.size(); ++i)
        u[i] = -gamma[i] * (gains.mu[i] * x[0] + gains.nu[i] * x[2]);
}

void control_nonma(const ModalState& x, std::span<const double> gamma, double chi, double lambda,
                   std::span<const FeatherInfluence> infl, std::span<double> u) {
    check_size(infl.size(), u.size(), "control_nonma");
    check_size(gamma.size(), u.size(), "control_nonma");
    for (size_t i = 0; i < u.size(); ++i)
        u[i] = -gamma[i] * (chi * infl[i].s1 * x[0] + lambda * infl[i].s2 * x[2]);
}

void control_ma(const ModalState& x, std::span<const double> beta, std::span<const double> gamma,
                double chi, double lambda, std::span<const FeatherInfluence> infl,
                const Adjacency& net, std::span<double> u) {
    check_size(infl.size(), u.size(), "control_ma");
    check_size(gamma.size(), u.size(), "control_ma");
    check_size(beta.size(), u.size(), "control_ma");
    check_size(static_cast<size_t>(net.size()), u.size(), "control_ma");
    // xdot1 = x2 and xdot3 = x4 along the state equations.
    for (size_t i = 0; i < u.size(); ++i) {
        const double velocity = chi * infl[i].s1 * x[1] + lambda * infl[i].s2 * x[3];
        u[i] = -gamma[i] * velocity - 2.0 * gamma[i] * net.disagreement(static_cast<int>(i), beta);
    }
}

std::vector<double> expand_gains(std::span<const double> gamma, int size) {
    std::vector<double> out;
    if (gamma.size() == 1) {
        out.assign(static_cast<size_t>(size), gamma[0]);
    } else if (static_cast<int>(gamma.size()) == size) {
        out.assign(gamma.begin(), gamma.end());
    } else {
        throw ParameterError("gain list must have 1 or N entries");
    }
    for (double g : out)
        if (!(g >= 0.0)) throw ParameterError("gains must be >= 0");
    return out;
}

ControlLaw::ControlLaw(LawKind kind, const PlantModel& plant, std::vector<double> gamma)
    : kind_(kind),
      gamma_(expand_gains(gamma, plant.size())),
      sg_(sg_gains(plant.coeffs, plant.influence)),
      chi_(plant.network_constants.chi),
      lambda_(plant.network_constants.lambda),
      infl_(plant.influence),
      net_(plant.network) {}

ControlLaw ControlLaw::open_loop(const PlantModel& plant) {
    return ControlLaw(LawKind::none, plant, std::vector<double>{0.0});
}

void ControlLaw::evaluate(const ModalState& x, std::span<const double> beta,
                          std::span<double> u) const {
    switch (kind_) {
        case LawKind::none:
            check_size(gamma_.size(), u.size(), "control none");
            for (double& v : u) v = 0.0;
            return;
        case LawKind::sg: control_sg(x, gamma_, sg_, u); return;
        case LawKind::nonma: control_nonma(x, gamma_, chi_, lambda_, infl_, u); return;
        case LawKind::ma: control_ma(x, beta, gamma_, chi_, lambda_, infl_, net_, u); return;
    }
}

LinearFeedback ControlLaw::feedback() const {
    const int n = size();
    LinearFeedback fb;
    fb.size = n;
    fb.kx.assign(static_cast<size_t>(n) * 4, 0.0);
    fb.kb.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
    auto kx = [&](int i, int k) -> double& { return fb.kx[static_cast<size_t>(i * 4 + k)]; };
    auto kb = [&](int i, int j) -> double& { return fb.kb[static_cast<size_t>(i * n + j)]; };
    for (int i = 0; i < n; ++i) {
        const double g = gamma_[static_cast<size_t>(i)];
        const auto& fi = infl_[static_cast<size_t>(i)];
        switch (kind_) {
            case LawKind::none: break;
            case LawKind::sg:
                kx(i, 0) = -g * sg_.mu[static_cast<size_t>(i)];
                kx(i, 2) = -g * sg_.nu[static_cast<size_t>(i)];
                break;
            case LawKind::nonma:
                kx(i, 0) = -g * chi_ * fi.s1;
                kx(i, 2) = -g * lambda_ * fi.s2;
                break;
            case LawKind::ma:
                kx(i, 1) = -g * chi_ * fi.s1;
                kx(i, 3) = -g * lambda_ * fi.s2;
                for (int j : net_.neighbors(i)) {
                    const double w = net_.weight(i, j);
                    kb(i, i) -= 2.0 * g * w;
                    kb(i, j) += 2.0 * g * w;
                }
                break;
        }
    }
    return fb;
}

}  // namespace featherwing
