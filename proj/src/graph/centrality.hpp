#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "graph/wgraph.hpp"

namespace daogov {

// Weighted pagerank: transition probability proportional to edge weight.
std::vector<double> pagerank(const WGraph& g, double damping = 0.85, double tol = 1e-9,
                             std::size_t max_iter = 1000);

// Closeness on inverse-weight distances (stronger co-voting = shorter
// distance): (n-1) / sum of distances. Exact when n <= exact_max_nodes,
// otherwise estimated from `pivots` sampled sources.
std::vector<double> closeness(const WGraph& g, std::uint32_t exact_max_nodes,
                              std::uint32_t pivots, std::uint64_t seed);

// Weighted eigenvector centrality via (A + I) power iteration, L2-normalized.
std::vector<double> eigenvector_centrality(const WGraph& g, double tol = 1e-9,
                                           std::size_t max_iter = 1000);

// Brandes betweenness on inverse-weight distances; exact when
// n <= exact_max_nodes, otherwise pivot-sampled and rescaled by n/k.
// Undirected convention: each pair contributes once (scores halved).
std::vector<double> betweenness(const WGraph& g, std::uint32_t exact_max_nodes,
                                std::uint32_t pivots, std::uint64_t seed);

// Classic unweighted k-core decomposition by iterative degree peeling.
std::vector<std::uint32_t> kcore(const WGraph& g);

struct GroupSummary {
    double mean = 0.0;
    double ci95_half_width = 0.0;  // 1.96 * standard error
    std::uint64_t n = 0;
};

GroupSummary summarize_mean(std::span<const double> values);
// Geometric mean; requires strictly positive inputs, zeros are skipped.
GroupSummary summarize_geometric(std::span<const double> values);

// Per-node centrality table for one graph (typically a giant component).
struct CentralityTable {
    std::vector<double> pagerank;
    std::vector<double> closeness;
    std::vector<double> eigenvector;
    std::vector<double> betweenness;
    std::vector<std::uint32_t> kcore;
};

struct CentralityOptions {
    std::uint32_t closeness_exact_max_nodes = 100000;
    std::uint32_t closeness_pivots = 1000;
    std::uint32_t betweenness_exact_max_nodes = 10000;
    std::uint32_t betweenness_pivots = 500;
    std::uint64_t seed = 0;
};

// Throws ValidationError on an empty graph.
CentralityTable centralities(const WGraph& giant, const CentralityOptions& opts);

}  // namespace daogov
