#include "graph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "graph/community.hpp"
#include "util/errors.hpp"

namespace daogov {

namespace {

// BFS from `source`; returns (sum of hop distances, reached pairs, eccentricity).
struct BfsResult {
    double dist_sum = 0.0;
    std::uint64_t reached = 0;
    std::uint32_t eccentricity = 0;
};

BfsResult bfs_distances(const WGraph& g, std::uint32_t source, std::vector<std::uint32_t>& dist,
                        std::vector<std::uint32_t>& queue) {
    BfsResult res;
    std::fill(dist.begin(), dist.end(), UINT32_MAX);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t u = queue[head];
        for (std::uint32_t v : g.neighbors(u)) {
            if (dist[v] != UINT32_MAX) continue;
            dist[v] = dist[u] + 1;
            res.dist_sum += dist[v];
            ++res.reached;
            res.eccentricity = std::max(res.eccentricity, dist[v]);
            queue.push_back(v);
        }
    }
    return res;
}

}  // namespace

std::optional<PathMetrics> path_metrics(const WGraph& g, const PathOptions& opts) {
    std::uint32_t n = g.node_count();
    if (n < 2 || g.edge_count() == 0) return std::nullopt;

    bool exact = n <= opts.exact_max_nodes;
    std::vector<std::uint32_t> sources;
    if (exact) {
        sources.resize(n);
        std::iota(sources.begin(), sources.end(), 0u);
    } else {
        std::mt19937_64 rng(opts.seed);
        std::vector<std::uint32_t> ids(n);
        std::iota(ids.begin(), ids.end(), 0u);
        for (std::uint32_t i = 0; i < opts.sample_sources && i < n; ++i) {
            std::uniform_int_distribution<std::uint32_t> pick(i, n - 1);
            std::swap(ids[i], ids[pick(rng)]);
        }
        ids.resize(std::min(n, opts.sample_sources));
        sources = std::move(ids);
    }

    double total = 0.0;
    std::uint64_t pairs = 0;
    std::uint32_t ecc_max = 0;
    std::vector<std::uint32_t> dist(n), queue;
    queue.reserve(n);
    for (std::uint32_t s : sources) {
        BfsResult r = bfs_distances(g, s, dist, queue);
        total += r.dist_sum;
        pairs += r.reached;
        ecc_max = std::max(ecc_max, r.eccentricity);
    }
    if (pairs == 0) return std::nullopt;
    PathMetrics m;
    m.avg_path_length = total / static_cast<double>(pairs);
    m.diameter = ecc_max;
    m.exact = exact;
    return m;
}

double average_clustering(const WGraph& g) {
    std::uint32_t n = g.node_count();
    if (n == 0) return 0.0;
    double sum = 0.0;
    std::vector<bool> mark(n, false);
    for (std::uint32_t u = 0; u < n; ++u) {
        auto nb = g.neighbors(u);
        std::size_t d = nb.size();
        if (d < 2) continue;
        for (std::uint32_t v : nb) mark[v] = true;
        std::uint64_t links = 0;
        for (std::uint32_t v : nb)
            for (std::uint32_t w : g.neighbors(v))
                if (w > v && mark[w]) ++links;
        for (std::uint32_t v : nb) mark[v] = false;
        sum += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * (d - 1));
    }
    return sum / static_cast<double>(n);
}

std::optional<double> degree_assortativity(const WGraph& g) {
    if (g.edge_count() == 0) return std::nullopt;
    // Pearson correlation of endpoint degrees over all directed arcs
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    double m = 0;
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        double du = static_cast<double>(g.degree(u));
        for (std::uint32_t v : g.neighbors(u)) {
            double dv = static_cast<double>(g.degree(v));
            sx += du;
            sy += dv;
            sxy += du * dv;
            sxx += du * du;
            syy += dv * dv;
            m += 1;
        }
    }
    double cov = sxy / m - (sx / m) * (sy / m);
    double vx = sxx / m - (sx / m) * (sx / m);
    double vy = syy / m - (sy / m) * (sy / m);
    if (vx <= 0.0 || vy <= 0.0) return std::nullopt;
    return cov / std::sqrt(vx * vy);
}

std::optional<SmallWorldResult> small_worldliness(const WGraph& g, const SmallWorldOptions& opts) {
    auto pm = path_metrics(g, opts.path);
    if (!pm) return std::nullopt;
    double cc_test = average_clustering(g);
    if (cc_test <= 0.0) return std::nullopt;

    std::mt19937_64 rng(opts.seed);
    double apl_sum = 0.0, cc_sum = 0.0;
    std::uint32_t used = 0;
    for (std::uint32_t r = 0; r < opts.replicates; ++r) {
        WGraph rewired = degree_preserving_rewire(g, rng, 10 * g.edge_count());
        Subgraph rgc = giant_component(rewired);  // rewiring may disconnect
        auto rpm = path_metrics(rgc.graph, opts.path);
        if (!rpm) continue;
        apl_sum += rpm->avg_path_length;
        cc_sum += average_clustering(rgc.graph);
        ++used;
    }
    if (used == 0) return std::nullopt;

    SmallWorldResult res;
    res.apl_test = pm->avg_path_length;
    res.cc_test = cc_test;
    res.apl_rnd = apl_sum / used;
    res.cc_rnd = cc_sum / used;
    res.replicates = used;
    if (res.cc_rnd <= 0.0 || res.apl_rnd <= 0.0 || res.apl_test <= 0.0) return std::nullopt;
    res.sw = (res.cc_test / res.cc_rnd) / (res.apl_test / res.apl_rnd);
    return res;
}

WGraph to_wgraph(const CoVoteGraph& g) {
    std::vector<WEdge> edges;
    edges.reserve(g.edges.size());
    for (const auto& e : g.edges)
        edges.push_back({e.a, e.b, static_cast<double>(e.weight)});
    return WGraph::from_edges(static_cast<std::uint32_t>(g.nodes.size()), edges);
}

NetworkStats network_stats(const CoVoteGraph& g, const NetworkStatsOptions& opts) {
    if (g.nodes.empty()) throw ValidationError("network_stats requires a non-empty graph");
    WGraph wg = to_wgraph(g);

    NetworkStats s;
    s.variant = to_string(g.variant);
    s.threshold = g.threshold;
    s.num_nodes = g.nodes.size();
    s.num_edges = g.edges.size();

    std::uint64_t contr_nodes = 0;
    double deg_sum = 0.0, contr_deg_sum = 0.0;
    for (std::uint32_t u = 0; u < wg.node_count(); ++u) {
        std::uint64_t d = wg.degree(u);
        s.max_degree = std::max(s.max_degree, d);
        deg_sum += static_cast<double>(d);
        if (g.contributor[u]) {
            ++contr_nodes;
            s.contr_max_degree = std::max(s.contr_max_degree, d);
            contr_deg_sum += static_cast<double>(d);
        }
    }
    s.avg_degree = deg_sum / static_cast<double>(s.num_nodes);
    s.contr_nodes_pct = 100.0 * static_cast<double>(contr_nodes) / static_cast<double>(s.num_nodes);
    if (contr_nodes > 0) s.contr_avg_degree = contr_deg_sum / static_cast<double>(contr_nodes);
    std::uint64_t contr_edges = 0;
    for (const auto& e : g.edges)
        if (g.contributor[e.a] || g.contributor[e.b]) ++contr_edges;
    if (s.num_edges > 0)
        s.contr_edges_pct = 100.0 * static_cast<double>(contr_edges) / static_cast<double>(s.num_edges);

    Subgraph gc = giant_component(wg);
    s.giant_component_pct =
        100.0 * static_cast<double>(gc.graph.node_count()) / static_cast<double>(s.num_nodes);
    s.assortativity = degree_assortativity(wg);

    if (auto pm = path_metrics(gc.graph, opts.path)) {
        s.avg_path_length = pm->avg_path_length;
        s.diameter = pm->diameter;
    }
    s.clustering = average_clustering(gc.graph);
    if (auto sw = small_worldliness(gc.graph, opts.small_world)) s.small_worldliness = sw->sw;

    if (gc.graph.node_count() >= 2) {
        CommunityAssignment comm = louvain_communities(gc.graph, 1.0, opts.louvain_seed);
        s.louvain_communities = comm.community_count();
        std::vector<std::uint64_t> sizes(comm.community_count(), 0);
        for (std::uint32_t c : comm.community) ++sizes[c];
        std::uint64_t largest = *std::max_element(sizes.begin(), sizes.end());
        s.largest_community_pct =
            100.0 * static_cast<double>(largest) / static_cast<double>(gc.graph.node_count());
        s.modularity = comm.modularity;
    }
    return s;
}

nlohmann::json NetworkStats::to_json() const {
    nlohmann::json j{{"variant", variant},
                     {"threshold", threshold},
                     {"num_nodes", num_nodes},
                     {"num_edges", num_edges},
                     {"max_degree", max_degree},
                     {"avg_degree", avg_degree},
                     {"contr_nodes_pct", contr_nodes_pct},
                     {"contr_edges_pct", contr_edges_pct},
                     {"contr_max_degree", contr_max_degree},
                     {"contr_avg_degree", contr_avg_degree},
                     {"giant_component_pct", giant_component_pct},
                     {"clustering", clustering}};
    auto put = [&j](const char* key, const auto& opt) {
        if (opt)
            j[key] = *opt;
        else
            j[key] = nullptr;
    };
    put("assortativity", assortativity);
    put("avg_path_length", avg_path_length);
    put("diameter", diameter);
    put("small_worldliness", small_worldliness);
    put("louvain_communities", louvain_communities);
    put("largest_community_pct", largest_community_pct);
    put("modularity", modularity);
    return j;
}

}  // namespace daogov
