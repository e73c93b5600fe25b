#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "graph/covote.hpp"
#include "graph/wgraph.hpp"
#include "json.hpp"

namespace daogov {

struct PathMetrics {
    double avg_path_length = 0.0;  // hops, over connected pairs
    std::uint32_t diameter = 0;
    bool exact = true;
};

struct PathOptions {
    std::uint32_t exact_max_nodes = 100000;
    std::uint32_t sample_sources = 1000;
    std::uint64_t seed = 0;
};

// BFS-based; exact all-sources below the cutoff, sampled above. Returns
// nullopt when the graph has no connected pair.
std::optional<PathMetrics> path_metrics(const WGraph& g, const PathOptions& opts);

// Average local clustering coefficient; degree<2 nodes count as 0.
double average_clustering(const WGraph& g);

// Degree assortativity (Pearson over edge endpoints); nullopt when degenerate
// (e.g. regular graphs with zero degree variance).
std::optional<double> degree_assortativity(const WGraph& g);

struct SmallWorldResult {
    double sw = 0.0;  // (CC/CC_rnd) / (APL/APL_rnd)
    double apl_test = 0.0, cc_test = 0.0;
    double apl_rnd = 0.0, cc_rnd = 0.0;
    std::uint32_t replicates = 0;
};

struct SmallWorldOptions {
    std::uint32_t replicates = 5;
    std::uint64_t seed = 0;
    PathOptions path;
};

// Small-worldliness against a degree-preserving rewired baseline (10|E| swap
// attempts per replicate, metrics taken on each replicate's giant component
// and averaged). nullopt when a ratio is undefined (zero baseline clustering
// or no paths).
std::optional<SmallWorldResult> small_worldliness(const WGraph& g, const SmallWorldOptions& opts);

// Descriptive statistics for one co-voting network.
struct NetworkStats {
    std::string variant;
    std::uint32_t threshold = 0;

    std::uint64_t num_nodes = 0;
    std::uint64_t num_edges = 0;
    std::uint64_t max_degree = 0;
    double avg_degree = 0.0;

    double contr_nodes_pct = 0.0;
    double contr_edges_pct = 0.0;  // edges incident to >= 1 contributor
    std::uint64_t contr_max_degree = 0;
    double contr_avg_degree = 0.0;

    double giant_component_pct = 0.0;
    std::optional<double> assortativity;
    std::optional<double> avg_path_length;
    std::optional<std::uint32_t> diameter;
    double clustering = 0.0;
    std::optional<double> small_worldliness;
    std::optional<std::uint64_t> louvain_communities;
    std::optional<double> largest_community_pct;
    std::optional<double> modularity;

    nlohmann::json to_json() const;
};

struct NetworkStatsOptions {
    PathOptions path;
    SmallWorldOptions small_world;
    std::uint64_t louvain_seed = 0;
};

// Assembles every NetworkStats field; path-based measures and communities are
// computed on the giant component. Throws ValidationError on an empty graph.
NetworkStats network_stats(const CoVoteGraph& g, const NetworkStatsOptions& opts);

// CSR view of a co-voting graph (weights = co-vote counts).
WGraph to_wgraph(const CoVoteGraph& g);

}  // namespace daogov
