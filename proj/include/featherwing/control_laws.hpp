#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "featherwing/plant.hpp"

namespace featherwing {

/// Modal state x = (q, qdot, r, rdot).
using ModalState = std::array<double, 4>;

enum class LawKind {
    none,   ///< u = 0
    sg,     ///< energy speed-gradient, u_i = -g_i (mu_i x1 + nu_i x3)
    nonma,  ///< functional L, u_i = -g_i (chi s1_i x1 + lambda s2_i x3)
    ma      ///< functional L~, velocity feedback plus neighbour consensus
};

std::string_view to_string(LawKind kind);
LawKind law_from_string(std::string_view text);

struct SgGains {
    std::vector<double> mu;  ///< a11 s1_i - a21 s2_i
    std::vector<double> nu;  ///< -(a21 s1_i + b21 s2_i)
};

SgGains sg_gains(const ModalCoefficients& coeffs, std::span<const FeatherInfluence> infl);

void control_sg(const ModalState& x, std::span<const double> gamma, const SgGains& gains,
                std::span<double> u);

void control_nonma(const ModalState& x, std::span<const double> gamma, double chi, double lambda,
                   std::span<const FeatherInfluence> infl, std::span<double> u);

/// Feather i reads only the modal velocities, its own angle and its
/// neighbours' angles.
void control_ma(const ModalState& x, std::span<const double> beta, std::span<const double> gamma,
                double chi, double lambda, std::span<const FeatherInfluence> infl,
                const Adjacency& net, std::span<double> u);

/// u = Kx x + Kb beta, row-major: kx is N x 4, kb is N x N.
struct LinearFeedback {
    int size = 0;
    std::vector<double> kx;
    std::vector<double> kb;
};

/// A control law bound to one plant: gains precomputed, evaluation allocation-free.
class ControlLaw {
public:
    ControlLaw(LawKind kind, const PlantModel& plant, std::vector<double> gamma);

    /// Law `none` for an N-feather plant.
    static ControlLaw open_loop(const PlantModel& plant);

    LawKind kind() const noexcept { return kind_; }
    int size() const noexcept { return static_cast<int>(gamma_.size()); }
    std::span<const double> gamma() const noexcept { return gamma_; }
    const SgGains& sg() const noexcept { return sg_; }

    void evaluate(const ModalState& x, std::span<const double> beta, std::span<double> u) const;

    /// The law is linear in (x, beta); this returns its matrices.
    LinearFeedback feedback() const;

private:
    LawKind kind_;
    std::vector<double> gamma_;
    SgGains sg_;
    double chi_ = 0.0;
    double lambda_ = 0.0;
    std::vector<FeatherInfluence> infl_;
    Adjacency net_;
};

/// Broadcasts a single gain to all feathers or checks a per-feather list.
std::vector<double> expand_gains(std::span<const double> gamma, int size);

}  // namespace featherwing
