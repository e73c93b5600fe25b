#include "graph/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "util/errors.hpp"

namespace daogov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Single-source shortest paths with distance = 1/weight.
void dijkstra(const WGraph& g, std::uint32_t source, std::vector<double>& dist) {
    dist.assign(g.node_count(), kInf);
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        auto nb = g.neighbors(u);
        auto ws = g.weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            double nd = d + 1.0 / ws[i];
            if (nd < dist[nb[i]]) {
                dist[nb[i]] = nd;
                pq.push({nd, nb[i]});
            }
        }
    }
}

std::vector<std::uint32_t> sample_pivots(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
    std::vector<std::uint32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    std::mt19937_64 rng(seed);
    for (std::uint32_t i = 0; i < k && i < n; ++i) {
        std::uniform_int_distribution<std::uint32_t> pick(i, n - 1);
        std::swap(ids[i], ids[pick(rng)]);
    }
    ids.resize(std::min(n, k));
    return ids;
}

}  // namespace

std::vector<double> pagerank(const WGraph& g, double damping, double tol, std::size_t max_iter) {
    std::uint32_t n = g.node_count();
    if (n == 0) return {};
    std::vector<double> strength(n);
    for (std::uint32_t u = 0; u < n; ++u) strength[u] = g.strength(u);

    std::vector<double> pr(n, 1.0 / n), next(n);
    for (std::size_t it = 0; it < max_iter; ++it) {
        double dangling = 0.0;
        for (std::uint32_t u = 0; u < n; ++u)
            if (strength[u] == 0.0) dangling += pr[u];
        double base = (1.0 - damping) / n + damping * dangling / n;
        std::fill(next.begin(), next.end(), base);
        for (std::uint32_t u = 0; u < n; ++u) {
            if (strength[u] == 0.0) continue;
            double share = damping * pr[u] / strength[u];
            auto nb = g.neighbors(u);
            auto ws = g.weights(u);
            for (std::size_t i = 0; i < nb.size(); ++i) next[nb[i]] += share * ws[i];
        }
        double diff = 0.0;
        for (std::uint32_t u = 0; u < n; ++u) diff += std::abs(next[u] - pr[u]);
        pr.swap(next);
        if (diff < tol) break;
    }
    return pr;
}

std::vector<double> closeness(const WGraph& g, std::uint32_t exact_max_nodes,
                              std::uint32_t pivots, std::uint64_t seed) {
    std::uint32_t n = g.node_count();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;

    bool exact = n <= exact_max_nodes;
    std::vector<std::uint32_t> sources =
        exact ? [&] {
            std::vector<std::uint32_t> all(n);
            std::iota(all.begin(), all.end(), 0u);
            return all;
        }()
              : sample_pivots(n, pivots, seed);

    // Undirected: d(s, u) accumulates into u's total, so sampled sources give
    // every node a partial distance sum that is rescaled below.
    std::vector<double> total(n, 0.0);
    std::vector<std::uint32_t> reached(n, 0);
    std::vector<double> dist;
    for (std::uint32_t s : sources) {
        dijkstra(g, s, dist);
        for (std::uint32_t u = 0; u < n; ++u) {
            if (u == s || dist[u] == kInf) continue;
            total[u] += dist[u];
            ++reached[u];
        }
    }
    for (std::uint32_t u = 0; u < n; ++u) {
        if (total[u] <= 0.0) continue;
        double avg_dist = total[u] / reached[u];
        out[u] = exact ? static_cast<double>(reached[u]) / total[u] : 1.0 / avg_dist;
    }
    return out;
}

std::vector<double> eigenvector_centrality(const WGraph& g, double tol, std::size_t max_iter) {
    std::uint32_t n = g.node_count();
    if (n == 0) return {};
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), next(n);
    for (std::size_t it = 0; it < max_iter; ++it) {
        // x <- (A + I) x keeps the iteration convergent on bipartite parts
        for (std::uint32_t u = 0; u < n; ++u) next[u] = x[u];
        for (std::uint32_t u = 0; u < n; ++u) {
            auto nb = g.neighbors(u);
            auto ws = g.weights(u);
            for (std::size_t i = 0; i < nb.size(); ++i) next[nb[i]] += ws[i] * x[u];
        }
        double norm = std::sqrt(std::inner_product(next.begin(), next.end(), next.begin(), 0.0));
        if (norm == 0.0) return x;
        for (double& v : next) v /= norm;
        double diff = 0.0;
        for (std::uint32_t u = 0; u < n; ++u) diff += std::abs(next[u] - x[u]);
        x.swap(next);
        if (diff < n * tol) break;
    }
    return x;
}

std::vector<double> betweenness(const WGraph& g, std::uint32_t exact_max_nodes,
                                std::uint32_t pivots, std::uint64_t seed) {
    std::uint32_t n = g.node_count();
    std::vector<double> bc(n, 0.0);
    if (n < 3) return bc;

    bool exact = n <= exact_max_nodes;
    std::vector<std::uint32_t> sources =
        exact ? [&] {
            std::vector<std::uint32_t> all(n);
            std::iota(all.begin(), all.end(), 0u);
            return all;
        }()
              : sample_pivots(n, pivots, seed);

    std::vector<double> dist(n);
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<std::vector<std::uint32_t>> pred(n);
    std::vector<std::uint32_t> order;  // nodes by non-decreasing distance
    order.reserve(n);

    for (std::uint32_t s : sources) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : pred) p.clear();
        order.clear();

        using Item = std::pair<double, std::uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[s] = 0.0;
        sigma[s] = 1.0;
        pq.push({0.0, s});
        std::vector<bool> settled(n, false);
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (settled[u]) continue;
            settled[u] = true;
            order.push_back(u);
            auto nb = g.neighbors(u);
            auto ws = g.weights(u);
            for (std::size_t i = 0; i < nb.size(); ++i) {
                std::uint32_t v = nb[i];
                double nd = d + 1.0 / ws[i];
                double eps = 1e-15 * (1.0 + nd);  // nd is finite, dist[v] may not be
                if (nd < dist[v] - eps) {
                    dist[v] = nd;
                    sigma[v] = sigma[u];
                    pred[v].assign(1, u);
                    pq.push({nd, v});
                } else if (std::abs(nd - dist[v]) <= eps) {
                    sigma[v] += sigma[u];
                    pred[v].push_back(u);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::uint32_t w = *it;
            for (std::uint32_t v : pred[w])
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) bc[w] += delta[w];
        }
    }

    double scale = exact ? 0.5 : 0.5 * static_cast<double>(n) / sources.size();
    for (double& v : bc) v *= scale;
    return bc;
}

std::vector<std::uint32_t> kcore(const WGraph& g) {
    std::uint32_t n = g.node_count();
    std::vector<std::uint32_t> core(n, 0);
    if (n == 0) return core;

    std::vector<std::uint32_t> deg(n);
    std::uint32_t maxdeg = 0;
    for (std::uint32_t u = 0; u < n; ++u) {
        deg[u] = static_cast<std::uint32_t>(g.degree(u));
        maxdeg = std::max(maxdeg, deg[u]);
    }
    // bucket sort nodes by degree, then peel from the lowest bin
    std::vector<std::uint32_t> bin(maxdeg + 2, 0);
    for (std::uint32_t u = 0; u < n; ++u) ++bin[deg[u] + 1];
    for (std::uint32_t d = 1; d < bin.size(); ++d) bin[d] += bin[d - 1];
    std::vector<std::uint32_t> pos(n), vert(n);
    {
        std::vector<std::uint32_t> cursor(bin.begin(), bin.end() - 1);
        for (std::uint32_t u = 0; u < n; ++u) {
            pos[u] = cursor[deg[u]]++;
            vert[pos[u]] = u;
        }
    }
    std::vector<std::uint32_t> start(bin.begin(), bin.end() - 1);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t u = vert[i];
        core[u] = deg[u];
        for (std::uint32_t v : g.neighbors(u)) {
            if (deg[v] <= deg[u]) continue;
            // swap v to the front of its bin, then shrink its degree
            std::uint32_t dv = deg[v];
            std::uint32_t first = start[dv];
            std::uint32_t w = vert[first];
            if (w != v) {
                std::swap(vert[pos[v]], vert[first]);
                std::swap(pos[v], pos[w]);
            }
            ++start[dv];
            --deg[v];
        }
    }
    return core;
}

GroupSummary summarize_mean(std::span<const double> values) {
    GroupSummary s;
    s.n = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        s.ci95_half_width = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
    }
    return s;
}

GroupSummary summarize_geometric(std::span<const double> values) {
    GroupSummary s;
    double logsum = 0.0;
    std::vector<double> logs;
    for (double v : values) {
        if (v <= 0.0) continue;  // zero cores outside the giant component
        logs.push_back(std::log(v));
        logsum += logs.back();
    }
    s.n = logs.size();
    if (logs.empty()) return s;
    double logmean = logsum / static_cast<double>(logs.size());
    s.mean = std::exp(logmean);
    if (logs.size() >= 2) {
        double ss = 0.0;
        for (double lv : logs) ss += (lv - logmean) * (lv - logmean);
        double sd = std::sqrt(ss / static_cast<double>(logs.size() - 1));
        double half = 1.96 * sd / std::sqrt(static_cast<double>(logs.size()));
        // CI mapped back from log space; half-width reported as the upper gap
        s.ci95_half_width = std::exp(logmean + half) - s.mean;
    }
    return s;
}

CentralityTable centralities(const WGraph& giant, const CentralityOptions& opts) {
    if (giant.node_count() == 0)
        throw ValidationError("centralities require a non-empty giant component");
    CentralityTable t;
    t.pagerank = pagerank(giant);
    t.closeness = closeness(giant, opts.closeness_exact_max_nodes, opts.closeness_pivots,
                            opts.seed);
    t.eigenvector = eigenvector_centrality(giant);
    t.betweenness = betweenness(giant, opts.betweenness_exact_max_nodes,
                                opts.betweenness_pivots, opts.seed + 1);
    t.kcore = kcore(giant);
    return t;
}

}  // namespace daogov
