#include "graph/community.hpp"

#include <algorithm>
#include <numeric>

#include "util/errors.hpp"

namespace daogov {

namespace {

// One Louvain level: adjacency with self-loop weights from aggregation.
struct LevelGraph {
    std::uint32_t n = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
    std::vector<double> selfloop;
    double two_m = 0.0;  // sum of strengths

    double strength(std::uint32_t u) const {
        double s = 2.0 * selfloop[u];
        for (const auto& [v, w] : adj[u]) s += w;
        return s;
    }
};

LevelGraph level_from_wgraph(const WGraph& g) {
    LevelGraph lg;
    lg.n = g.node_count();
    lg.adj.resize(lg.n);
    lg.selfloop.assign(lg.n, 0.0);
    for (std::uint32_t u = 0; u < lg.n; ++u) {
        auto nb = g.neighbors(u);
        auto ws = g.weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i) lg.adj[u].emplace_back(nb[i], ws[i]);
    }
    for (std::uint32_t u = 0; u < lg.n; ++u) lg.two_m += lg.strength(u);
    return lg;
}

// Local-move phase; returns the community of each node and whether any node
// moved. Communities are compacted to 0..k-1.
bool one_level(const LevelGraph& g, double resolution, std::mt19937_64& rng,
               std::vector<std::uint32_t>& node2comm) {
    const double inv_2m = 1.0 / g.two_m;
    std::vector<double> comm_tot(g.n, 0.0);
    node2comm.resize(g.n);
    std::vector<double> strength(g.n);
    for (std::uint32_t u = 0; u < g.n; ++u) {
        node2comm[u] = u;
        strength[u] = g.strength(u);
        comm_tot[u] = strength[u];
    }

    std::vector<std::uint32_t> order(g.n);
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<double> neigh_w(g.n, 0.0);
    std::vector<std::uint32_t> neigh_comms;
    bool any_move = false;
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::uint32_t u : order) {
            std::uint32_t old_comm = node2comm[u];
            neigh_comms.clear();
            for (const auto& [v, w] : g.adj[u]) {
                std::uint32_t c = node2comm[v];
                if (neigh_w[c] == 0.0) neigh_comms.push_back(c);
                neigh_w[c] += w;
            }
            comm_tot[old_comm] -= strength[u];

            double best_gain = 0.0;
            std::uint32_t best_comm = old_comm;
            double base = neigh_w[old_comm] - resolution * comm_tot[old_comm] * strength[u] * inv_2m;
            for (std::uint32_t c : neigh_comms) {
                double gain = neigh_w[c] - resolution * comm_tot[c] * strength[u] * inv_2m;
                if (gain - base > best_gain + 1e-12) {
                    best_gain = gain - base;
                    best_comm = c;
                }
            }
            comm_tot[best_comm] += strength[u];
            node2comm[u] = best_comm;
            if (best_comm != old_comm) {
                moved = true;
                any_move = true;
            }
            for (std::uint32_t c : neigh_comms) neigh_w[c] = 0.0;
        }
    }

    // compact labels
    std::vector<std::uint32_t> remap(g.n, UINT32_MAX);
    std::uint32_t next = 0;
    for (auto& c : node2comm) {
        if (remap[c] == UINT32_MAX) remap[c] = next++;
        c = remap[c];
    }
    return any_move;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::uint32_t>& node2comm) {
    std::uint32_t k = *std::max_element(node2comm.begin(), node2comm.end()) + 1;
    LevelGraph ag;
    ag.n = k;
    ag.adj.resize(k);
    ag.selfloop.assign(k, 0.0);
    std::vector<double> acc(k, 0.0);
    std::vector<std::uint32_t> touched;
    for (std::uint32_t cu = 0; cu < k; ++cu) ag.adj[cu].reserve(4);
    std::vector<std::vector<std::uint32_t>> members(k);
    for (std::uint32_t u = 0; u < g.n; ++u) members[node2comm[u]].push_back(u);
    for (std::uint32_t cu = 0; cu < k; ++cu) {
        touched.clear();
        double self = 0.0;
        for (std::uint32_t u : members[cu]) {
            self += g.selfloop[u];
            for (const auto& [v, w] : g.adj[u]) {
                std::uint32_t cv = node2comm[v];
                if (cv == cu) {
                    self += w * 0.5;  // each internal edge visited twice
                } else {
                    if (acc[cv] == 0.0) touched.push_back(cv);
                    acc[cv] += w;
                }
            }
        }
        ag.selfloop[cu] = self;
        std::sort(touched.begin(), touched.end());
        for (std::uint32_t cv : touched) {
            ag.adj[cu].emplace_back(cv, acc[cv]);
            acc[cv] = 0.0;
        }
    }
    ag.two_m = g.two_m;  // aggregation preserves total weight
    return ag;
}

}  // namespace

double weighted_modularity(const WGraph& g, const std::vector<std::uint32_t>& community,
                           double resolution) {
    if (community.size() != g.node_count())
        throw ValidationError("community vector size mismatch");
    double two_m = 2.0 * g.total_weight();
    if (two_m <= 0.0) return 0.0;
    std::uint32_t k = *std::max_element(community.begin(), community.end()) + 1;
    std::vector<double> in(k, 0.0), tot(k, 0.0);
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        tot[community[u]] += g.strength(u);
        auto nb = g.neighbors(u);
        auto ws = g.weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            if (community[nb[i]] == community[u]) in[community[u]] += ws[i];
    }
    double q = 0.0;
    for (std::uint32_t c = 0; c < k; ++c)
        q += in[c] / two_m - resolution * (tot[c] / two_m) * (tot[c] / two_m);
    return q;
}

CommunityAssignment louvain_communities(const WGraph& g, double resolution, std::uint64_t seed) {
    CommunityAssignment result;
    std::uint32_t n = g.node_count();
    result.community.resize(n);
    std::iota(result.community.begin(), result.community.end(), 0u);
    if (n == 0 || g.edge_count() == 0) {
        result.modularity = weighted_modularity(g, result.community, resolution);
        return result;
    }

    std::mt19937_64 rng(seed);
    LevelGraph level = level_from_wgraph(g);
    std::vector<std::uint32_t> assignment(n);
    std::iota(assignment.begin(), assignment.end(), 0u);

    while (true) {
        std::vector<std::uint32_t> node2comm;
        bool improved = one_level(level, resolution, rng, node2comm);
        for (auto& c : assignment) c = node2comm[c];
        if (!improved) break;
        LevelGraph next = aggregate(level, node2comm);
        if (next.n == level.n) break;
        level = std::move(next);
    }

    // canonical ids: descending size, ties by smallest member node
    std::uint32_t k = *std::max_element(assignment.begin(), assignment.end()) + 1;
    std::vector<std::uint64_t> size(k, 0);
    std::vector<std::uint32_t> first_member(k, UINT32_MAX);
    for (std::uint32_t u = 0; u < n; ++u) {
        ++size[assignment[u]];
        first_member[assignment[u]] = std::min(first_member[assignment[u]], u);
    }
    std::vector<std::uint32_t> ids(k);
    std::iota(ids.begin(), ids.end(), 0u);
    std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (size[a] != size[b]) return size[a] > size[b];
        return first_member[a] < first_member[b];
    });
    std::vector<std::uint32_t> relabel(k);
    for (std::uint32_t i = 0; i < k; ++i) relabel[ids[i]] = i;
    for (auto& c : assignment) c = relabel[c];

    result.community = std::move(assignment);
    result.modularity = weighted_modularity(g, result.community, resolution);
    return result;
}

std::uint64_t CommunityAssignment::community_count() const {
    if (community.empty()) return 0;
    return *std::max_element(community.begin(), community.end()) + 1;
}

const char* hhi_band(double hhi_value) {
    if (hhi_value < 1500.0) return "well-mixed";
    if (hhi_value <= 2500.0) return "moderately-concentrated";
    return "highly-concentrated";
}

double hhi(const std::vector<std::uint64_t>& counts) {
    double total = 0.0;
    for (auto c : counts) total += static_cast<double>(c);
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (auto c : counts) {
        double pct = 100.0 * static_cast<double>(c) / total;
        h += pct * pct;
    }
    return h;
}

ConcentrationReport concentration(const std::vector<std::uint32_t>& community,
                                  const std::vector<bool>& contributor,
                                  std::uint64_t bootstrap_replicates, std::uint64_t seed) {
    if (community.size() != contributor.size())
        throw ValidationError("community/contributor size mismatch");
    ConcentrationReport rep;
    std::uint32_t n = static_cast<std::uint32_t>(community.size());
    if (n == 0) {
        rep.notice = "empty graph";
        return rep;
    }
    std::uint32_t k = *std::max_element(community.begin(), community.end()) + 1;
    std::vector<std::uint64_t> size(k, 0), obs(k, 0);
    std::uint64_t m = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
        ++size[community[u]];
        if (contributor[u]) {
            ++obs[community[u]];
            ++m;
        }
    }
    if (m > 0) rep.hhi_contributors = hhi(obs);
    if (m < n) {
        std::vector<std::uint64_t> non(k);
        for (std::uint32_t c = 0; c < k; ++c) non[c] = size[c] - obs[c];
        rep.hhi_noncontributors = hhi(non);
    }
    std::uint64_t with = 0;
    for (std::uint32_t c = 0; c < k; ++c)
        if (obs[c] > 0) ++with;
    rep.share_with_contributor = static_cast<double>(with) / static_cast<double>(k);

    auto chi2 = [&](const std::vector<std::uint64_t>& counts) {
        double stat = 0.0;
        for (std::uint32_t c = 0; c < k; ++c) {
            double expected = static_cast<double>(m) * static_cast<double>(size[c]) / n;
            double d = static_cast<double>(counts[c]) - expected;
            stat += d * d / expected;
        }
        return stat;
    };

    if (k < 2) {
        rep.notice = "fewer than 2 communities; chi-squared test skipped";
        return rep;
    }
    if (m == 0 || m == n) {
        rep.notice = "degenerate contributor set; chi-squared test skipped";
        return rep;
    }
    rep.observed_chi2 = chi2(obs);
    rep.bootstrap_replicates = bootstrap_replicates;

    // Null model: the m contributor labels land on uniformly random nodes.
    // Partial Fisher-Yates with undo keeps each replicate O(m).
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    std::vector<std::uint32_t> swaps(m);
    std::vector<std::uint64_t> counts(k);
    std::uint64_t at_least = 0;
    for (std::uint64_t r = 0; r < bootstrap_replicates; ++r) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint64_t i = 0; i < m; ++i) {
            std::uniform_int_distribution<std::uint32_t> pick(static_cast<std::uint32_t>(i), n - 1);
            std::uint32_t j = pick(rng);
            swaps[i] = j;
            std::swap(ids[i], ids[j]);
            ++counts[community[ids[i]]];
        }
        if (chi2(counts) >= rep.observed_chi2) ++at_least;
        for (std::uint64_t i = m; i-- > 0;) std::swap(ids[i], ids[swaps[i]]);
    }
    rep.chi2_p = static_cast<double>(at_least + 1) / static_cast<double>(bootstrap_replicates + 1);
    return rep;
}

}  // namespace daogov
