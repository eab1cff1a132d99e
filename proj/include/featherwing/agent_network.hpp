#pragma once

#include <span>
#include <string_view>
#include <tuple>
#include <vector>

#include "featherwing/model_core.hpp"

namespace featherwing {

enum class TopologyKind { path, ring, k_nearest, complete, explicit_weights };

std::string_view to_string(TopologyKind kind);
TopologyKind topology_from_string(std::string_view text);

/// Symmetric communication weights b_ij between feathers (zero diagonal).
class Adjacency {
public:
    Adjacency() = default;
    explicit Adjacency(int size);

    /// Validates symmetry, non-negativity and a zero diagonal.
    static Adjacency from_weights(int size, std::span<const std::tuple<int, int, double>> entries);

    int size() const noexcept { return size_; }
    double weight(int i, int j) const { return weights_[index(i, j)]; }
    const std::vector<int>& neighbors(int i) const { return neighbors_[static_cast<size_t>(i)]; }
    double row_sum(int i) const;
    std::vector<double> row_sums() const;

    /// Sets b_ij = b_ji = w (w > 0 adds the edge, w == 0 removes it).
    void set_edge(int i, int j, double w);

    /// Consensus term of feather i: sum_{j in N_i} b_ij (beta_i - beta_j).
    double disagreement(int i, std::span<const double> beta) const;

private:
    size_t index(int i, int j) const {
        return static_cast<size_t>(i) * static_cast<size_t>(size_) + static_cast<size_t>(j);
    }
    void rebuild_neighbors(int i);

    int size_ = 0;
    std::vector<double> weights_;
    std::vector<std::vector<int>> neighbors_;
};

/**
 * Builds a topology over feathers in their given (span) order.
 *
 * ring and complete are regular and get exactly normalised rows; path and
 * k_nearest (|i - j| <= k) use Metropolis weights 1 / (1 + max(deg_i, deg_j)).
 */
Adjacency build_topology(TopologyKind kind, int size, int k = 1);

struct NetworkConstants {
    double chi = 0.0;     ///< sum_i sum_j b_ij (f_i - f_j)^2
    double lambda = 0.0;  ///< sum_i sum_j b_ij (phi_i - phi_j)^2

    bool singular() const noexcept { return chi == 0.0 || lambda == 0.0; }
};

NetworkConstants chi_lambda(const Adjacency& net, const ModeShapes& modes,
                            std::span<const double> stations);

}  // namespace featherwing
