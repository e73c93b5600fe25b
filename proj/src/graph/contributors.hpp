#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "model/types.hpp"

namespace daogov {

// Bipartite spaces-to-contributors network (roles ignored) plus its
// projection onto spaces. Before projecting, the network is restricted to
// connected components with more than ten nodes; smaller star-like components
// carry no structure worth projecting.
struct ContributorsNetwork {
    std::vector<std::string> spaces;
    std::vector<Address> users;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (space, user)

    std::map<std::size_t, std::uint64_t> component_size_histogram;  // size -> count

    struct SpaceEdge {
        std::string a;
        std::string b;
        std::uint32_t shared_contributors = 0;
    };
    std::vector<SpaceEdge> space_projection;  // only components with > 10 nodes
};

ContributorsNetwork contributors_network(std::span<const Contribution> contributions);

}  // namespace daogov
