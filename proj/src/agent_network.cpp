#include "featherwing/agent_network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "featherwing/errors.hpp"

namespace featherwing {

std::string_view to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::path: return "path";
        case TopologyKind::ring: return "ring";
        case TopologyKind::k_nearest: return "k_nearest";
        case TopologyKind::complete: return "complete";
        case TopologyKind::explicit_weights: return "explicit";
    }
    return "?";
}

TopologyKind topology_from_string(std::string_view text) {
    if (text == "path") return TopologyKind::path;
    if (text == "ring") return TopologyKind::ring;
    if (text == "k_nearest") return TopologyKind::k_nearest;
    if (text == "complete") return TopologyKind::complete;
    if (text == "explicit") return TopologyKind::explicit_weights;
    throw ParameterError("unknown topology kind '" + std::string(text) + "'");
}

Adjacency::Adjacency(int size)
    : size_(size),
      weights_(static_cast<size_t>(size) * static_cast<size_t>(size), 0.0),
      neighbors_(static_cast<size_t>(size)) {
    if (size < 0) throw ParameterError("adjacency size must be >= 0");
}

Adjacency Adjacency::from_weights(int size, std::span<const std::tuple<int, int, double>> entries) {
    Adjacency net(size);
    auto in_range = [&](int i) { return i >= 0 && i < size; };
    for (const auto& [i, j, w] : entries) {
        std::ostringstream os;
        os << "weight (" << i + 1 << ", " << j + 1 << ", " << w << "): ";
        if (!in_range(i) || !in_range(j)) throw ParameterError(os.str() + "index out of range");
        if (i == j) throw ParameterError(os.str() + "self weights must be zero");
        if (!(w >= 0.0) || !std::isfinite(w)) throw ParameterError(os.str() + "weight must be >= 0");
        net.weights_[net.index(i, j)] = w;
    }
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
            if (net.weight(i, j) != net.weight(j, i)) {
                std::ostringstream os;
                os << "weights not symmetric: b(" << i + 1 << "," << j + 1 << ")=" << net.weight(i, j)
                   << " but b(" << j + 1 << "," << i + 1 << ")=" << net.weight(j, i);
                throw ParameterError(os.str());
            }
    for (int i = 0; i < size; ++i) net.rebuild_neighbors(i);
    return net;
}

void Adjacency::rebuild_neighbors(int i) {
    auto& list = neighbors_[static_cast<size_t>(i)];
    list.clear();
    for (int j = 0; j < size_; ++j)
        if (weight(i, j) > 0.0) list.push_back(j);
}

void Adjacency::set_edge(int i, int j, double w) {
    if (i < 0 || j < 0 || i >= size_ || j >= size_ || i == j)
        throw ParameterError("set_edge: invalid pair");
    if (!(w >= 0.0)) throw ParameterError("set_edge: weight must be >= 0");
    weights_[index(i, j)] = w;
    weights_[index(j, i)] = w;
    rebuild_neighbors(i);
    rebuild_neighbors(j);
}

double Adjacency::row_sum(int i) const {
    double s = 0.0;
    for (int j : neighbors(i)) s += weight(i, j);
    return s;
}

std::vector<double> Adjacency::row_sums() const {
    std::vector<double> out(static_cast<size_t>(size_));
    for (int i = 0; i < size_; ++i) out[static_cast<size_t>(i)] = row_sum(i);
    return out;
}

double Adjacency::disagreement(int i, std::span<const double> beta) const {
    const double bi = beta[static_cast<size_t>(i)];
    double s = 0.0;
    for (int j : neighbors(i)) s += weight(i, j) * (bi - beta[static_cast<size_t>(j)]);
    return s;
}

namespace {

Adjacency metropolis(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> degree(static_cast<size_t>(n), 0);
    for (auto [i, j] : edges) {
        ++degree[static_cast<size_t>(i)];
        ++degree[static_cast<size_t>(j)];
    }
    Adjacency net(n);
    for (auto [i, j] : edges) {
        const int d = std::max(degree[static_cast<size_t>(i)], degree[static_cast<size_t>(j)]);
        net.set_edge(i, j, 1.0 / (1.0 + d));
    }
    return net;
}

}  // namespace

Adjacency build_topology(TopologyKind kind, int size, int k) {
    if (size < 1) throw ParameterError("topology needs at least one feather");
    const int n = size;
    Adjacency net(n);
    if (n == 1) return net;

    switch (kind) {
        case TopologyKind::path: {
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            return metropolis(n, edges);
        }
        case TopologyKind::ring: {
            if (n == 2) {
                net.set_edge(0, 1, 1.0);
                return net;
            }
            for (int i = 0; i < n; ++i) net.set_edge(i, (i + 1) % n, 0.5);
            return net;
        }
        case TopologyKind::k_nearest: {
            if (k < 1) throw ParameterError("k_nearest topology needs k >= 1");
            std::vector<std::pair<int, int>> edges;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n && j - i <= k; ++j) edges.emplace_back(i, j);
            return metropolis(n, edges);
        }
        case TopologyKind::complete: {
            const double w = 1.0 / (n - 1);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) net.set_edge(i, j, w);
            return net;
        }
        case TopologyKind::explicit_weights:
            throw ParameterError("explicit topology is built from a weight list");
    }
    throw ParameterError("unknown topology kind");
}

NetworkConstants chi_lambda(const Adjacency& net, const ModeShapes& modes,
                            std::span<const double> stations) {
    if (static_cast<int>(stations.size()) != net.size())
        throw ParameterError("chi_lambda: station count differs from network size");
    const size_t n = stations.size();
    std::vector<double> f(n), phi(n);
    for (size_t i = 0; i < n; ++i) {
        f[i] = modes.bending(stations[i]).f;
        phi[i] = modes.torsion(stations[i]).phi;
    }
    NetworkConstants out;
    for (int i = 0; i < net.size(); ++i)
        for (int j : net.neighbors(i)) {
            const double w = net.weight(i, j);
            const double df = f[static_cast<size_t>(i)] - f[static_cast<size_t>(j)];
            const double dp = phi[static_cast<size_t>(i)] - phi[static_cast<size_t>(j)];
            out.chi += w * df * df;
            out.lambda += w * dp * dp;
        }
    return out;
}

}  // namespace featherwing
