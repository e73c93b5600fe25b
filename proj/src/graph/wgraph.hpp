#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace daogov {

struct WEdge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double w = 1.0;
};

// Undirected weighted graph in CSR form. Callers pass simple edge lists
// (a != b, each unordered pair once); both arc directions are materialized.
class WGraph {
public:
    WGraph() = default;
    static WGraph from_edges(std::uint32_t n, std::span<const WEdge> edges);

    std::uint32_t node_count() const { return n_; }
    std::size_t edge_count() const { return adj_.size() / 2; }
    std::size_t degree(std::uint32_t u) const { return offsets_[u + 1] - offsets_[u]; }
    std::span<const std::uint32_t> neighbors(std::uint32_t u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }
    std::span<const double> weights(std::uint32_t u) const {
        return {w_.data() + offsets_[u], w_.data() + offsets_[u + 1]};
    }
    // Sum of incident edge weights.
    double strength(std::uint32_t u) const;
    double total_weight() const;  // sum over undirected edges

    std::vector<WEdge> edge_list() const;  // a < b, sorted
    bool has_edge(std::uint32_t u, std::uint32_t v) const;

private:
    std::uint32_t n_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> adj_;
    std::vector<double> w_;
};

// Connected component label per node plus component sizes (label-indexed).
struct Components {
    std::vector<std::uint32_t> label;
    std::vector<std::uint32_t> size;

    std::uint32_t giant_label() const;
};

Components connected_components(const WGraph& g);

// Giant-component subgraph with the mapping back to original node ids.
struct Subgraph {
    WGraph graph;
    std::vector<std::uint32_t> to_original;
};

Subgraph giant_component(const WGraph& g);

// Degree-preserving randomization by double-edge swaps; `attempts` proposals,
// rejecting self-loops and parallel edges. Edge weights follow their edges.
WGraph degree_preserving_rewire(const WGraph& g, std::mt19937_64& rng, std::size_t attempts);

}  // namespace daogov
