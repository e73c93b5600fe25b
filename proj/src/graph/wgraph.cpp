#include "graph/wgraph.hpp"

#include <algorithm>
#include <unordered_set>

#include "util/errors.hpp"

namespace daogov {

WGraph WGraph::from_edges(std::uint32_t n, std::span<const WEdge> edges) {
    WGraph g;
    g.n_ = n;
    g.offsets_.assign(n + 1, 0);
    for (const auto& e : edges) {
        if (e.a >= n || e.b >= n) throw ValidationError("edge endpoint out of range");
        if (e.a == e.b) throw ValidationError("self-loop in edge list");
        ++g.offsets_[e.a + 1];
        ++g.offsets_[e.b + 1];
    }
    for (std::uint32_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adj_.resize(edges.size() * 2);
    g.w_.resize(edges.size() * 2);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& e : edges) {
        g.adj_[cursor[e.a]] = e.b;
        g.w_[cursor[e.a]++] = e.w;
        g.adj_[cursor[e.b]] = e.a;
        g.w_[cursor[e.b]++] = e.w;
    }
    // sort adjacency per node for deterministic traversal and binary search
    for (std::uint32_t u = 0; u < n; ++u) {
        std::size_t lo = g.offsets_[u], hi = g.offsets_[u + 1];
        std::vector<std::pair<std::uint32_t, double>> nb;
        nb.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) nb.emplace_back(g.adj_[i], g.w_[i]);
        std::sort(nb.begin(), nb.end());
        for (std::size_t i = lo; i < hi; ++i) {
            g.adj_[i] = nb[i - lo].first;
            g.w_[i] = nb[i - lo].second;
        }
    }
    return g;
}

double WGraph::strength(std::uint32_t u) const {
    double s = 0.0;
    for (double w : weights(u)) s += w;
    return s;
}

double WGraph::total_weight() const {
    double s = 0.0;
    for (double w : w_) s += w;
    return s / 2.0;
}

std::vector<WEdge> WGraph::edge_list() const {
    std::vector<WEdge> out;
    out.reserve(edge_count());
    for (std::uint32_t u = 0; u < n_; ++u) {
        auto nb = neighbors(u);
        auto ws = weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            if (u < nb[i]) out.push_back({u, nb[i], ws[i]});
    }
    return out;
}

bool WGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Components connected_components(const WGraph& g) {
    Components c;
    c.label.assign(g.node_count(), UINT32_MAX);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < g.node_count(); ++s) {
        if (c.label[s] != UINT32_MAX) continue;
        std::uint32_t lbl = static_cast<std::uint32_t>(c.size.size());
        c.size.push_back(0);
        stack.push_back(s);
        c.label[s] = lbl;
        while (!stack.empty()) {
            std::uint32_t u = stack.back();
            stack.pop_back();
            ++c.size[lbl];
            for (std::uint32_t v : g.neighbors(u)) {
                if (c.label[v] == UINT32_MAX) {
                    c.label[v] = lbl;
                    stack.push_back(v);
                }
            }
        }
    }
    return c;
}

std::uint32_t Components::giant_label() const {
    std::uint32_t best = 0;
    for (std::uint32_t i = 1; i < size.size(); ++i)
        if (size[i] > size[best]) best = i;
    return best;
}

Subgraph giant_component(const WGraph& g) {
    Components c = connected_components(g);
    Subgraph sub;
    if (c.size.empty()) return sub;
    std::uint32_t giant = c.giant_label();
    std::vector<std::uint32_t> to_sub(g.node_count(), UINT32_MAX);
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        if (c.label[u] == giant) {
            to_sub[u] = static_cast<std::uint32_t>(sub.to_original.size());
            sub.to_original.push_back(u);
        }
    }
    std::vector<WEdge> edges;
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        if (to_sub[u] == UINT32_MAX) continue;
        auto nb = g.neighbors(u);
        auto ws = g.weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            if (u < nb[i]) edges.push_back({to_sub[u], to_sub[nb[i]], ws[i]});
    }
    sub.graph = WGraph::from_edges(static_cast<std::uint32_t>(sub.to_original.size()), edges);
    return sub;
}

WGraph degree_preserving_rewire(const WGraph& g, std::mt19937_64& rng, std::size_t attempts) {
    std::vector<WEdge> edges = g.edge_list();
    if (edges.size() < 2) return g;

    auto key = [](std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    for (const auto& e : edges) present.insert(key(e.a, e.b));

    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    for (std::size_t it = 0; it < attempts; ++it) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        WEdge& e1 = edges[i];
        WEdge& e2 = edges[j];
        // propose (a,d) and (c,b); flipping e2's orientation half the time
        std::uint32_t a = e1.a, b = e1.b, c = e2.a, d = e2.b;
        if (rng() & 1) std::swap(c, d);
        if (a == d || c == b || a == c || b == d) continue;
        std::uint64_t k1 = key(a, d), k2 = key(c, b);
        if (present.contains(k1) || present.contains(k2)) continue;
        present.erase(key(e1.a, e1.b));
        present.erase(key(e2.a, e2.b));
        present.insert(k1);
        present.insert(k2);
        e1 = {a, d, e1.w};
        e2 = {c, b, e2.w};
    }
    return WGraph::from_edges(g.node_count(), edges);
}

}  // namespace daogov
