#include "graph/contributors.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace daogov {

namespace {

constexpr std::size_t kMinComponentSize = 10;  // strictly larger survives

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::uint32_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

ContributorsNetwork contributors_network(std::span<const Contribution> contributions) {
    ContributorsNetwork net;
    std::unordered_map<std::string, std::uint32_t> space_idx;
    std::unordered_map<Address, std::uint32_t, AddressHash> user_idx;
    for (const auto& c : contributions) {
        auto [sit, si] = space_idx.emplace(c.space, static_cast<std::uint32_t>(net.spaces.size()));
        if (si) net.spaces.push_back(c.space);
        auto [uit, ui] = user_idx.emplace(c.user, static_cast<std::uint32_t>(net.users.size()));
        if (ui) net.users.push_back(c.user);
        net.edges.emplace_back(sit->second, uit->second);
    }
    std::sort(net.edges.begin(), net.edges.end());
    net.edges.erase(std::unique(net.edges.begin(), net.edges.end()), net.edges.end());

    // components over the joint node set: spaces [0, S), users [S, S+U)
    std::uint32_t n_spaces = static_cast<std::uint32_t>(net.spaces.size());
    std::uint32_t n_total = n_spaces + static_cast<std::uint32_t>(net.users.size());
    UnionFind uf(n_total);
    for (const auto& [s, u] : net.edges) uf.unite(s, n_spaces + u);

    std::vector<std::size_t> comp_size(n_total, 0);
    for (std::uint32_t v = 0; v < n_total; ++v) ++comp_size[uf.find(v)];
    for (std::uint32_t v = 0; v < n_total; ++v)
        if (uf.find(v) == v) ++net.component_size_histogram[comp_size[v]];

    // project onto spaces within the surviving components
    std::vector<std::vector<std::uint32_t>> spaces_of_user(net.users.size());
    for (const auto& [s, u] : net.edges)
        if (comp_size[uf.find(s)] > kMinComponentSize) spaces_of_user[u].push_back(s);

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> pair_count;
    for (const auto& spaces : spaces_of_user)
        for (std::size_t i = 0; i < spaces.size(); ++i)
            for (std::size_t j = i + 1; j < spaces.size(); ++j) {
                auto a = std::min(spaces[i], spaces[j]);
                auto b = std::max(spaces[i], spaces[j]);
                ++pair_count[{a, b}];
            }
    for (const auto& [key, count] : pair_count)
        net.space_projection.push_back({net.spaces[key.first], net.spaces[key.second], count});
    return net;
}

}  // namespace daogov
