#include "graph/covote.hpp"

#include <algorithm>

#include "util/errors.hpp"
#include "util/parallel.hpp"

namespace daogov {

namespace {

std::uint32_t dominant_option(const VoteChoice& choice) {
    if (choice.is_single()) return choice.single_index();
    const auto& m = choice.magnitudes();
    std::uint32_t best = 0;
    for (std::uint32_t i = 1; i < m.size(); ++i)
        if (m[i] > m[best]) best = i;
    return best;
}

}  // namespace

std::size_t BipartiteVoteGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& vp : votes_by_proposal) n += vp.size();
    return n;
}

std::vector<std::size_t> BipartiteVoteGraph::user_degrees() const {
    std::vector<std::size_t> deg(users.size(), 0);
    for (const auto& vp : votes_by_proposal)
        for (const auto& [u, opt] : vp) ++deg[u];
    return deg;
}

BipartiteVoteGraph build_bipartite(std::span<const Proposal> proposals,
                                   std::span<const Vote> votes) {
    BipartiteVoteGraph g;
    std::unordered_map<std::string, std::uint32_t> space_idx;
    std::unordered_map<std::string, std::uint32_t> proposal_idx;
    for (const auto& p : proposals) {
        auto [sit, sinserted] = space_idx.emplace(p.space, static_cast<std::uint32_t>(g.spaces.size()));
        if (sinserted) g.spaces.push_back(p.space);
        proposal_idx.emplace(p.id, static_cast<std::uint32_t>(g.proposal_ids.size()));
        g.proposal_ids.push_back(p.id);
        g.proposal_space.push_back(sit->second);
    }
    g.votes_by_proposal.resize(g.proposal_ids.size());

    std::unordered_map<Address, std::uint32_t, AddressHash> user_idx;
    // latest vote wins per (proposal, user); ties on timestamp keep input order
    std::vector<std::unordered_map<std::uint32_t, std::pair<std::int64_t, std::uint32_t>>>
        latest(g.proposal_ids.size());
    for (const auto& v : votes) {
        auto pit = proposal_idx.find(v.proposal);
        if (pit == proposal_idx.end())
            throw LookupError("vote references unknown proposal " + v.proposal);
        auto [uit, uinserted] = user_idx.emplace(v.user, static_cast<std::uint32_t>(g.users.size()));
        if (uinserted) g.users.push_back(v.user);
        auto& slot = latest[pit->second];
        auto it = slot.find(uit->second);
        if (it == slot.end() || v.timestamp >= it->second.first)
            slot[uit->second] = {v.timestamp, dominant_option(v.choice)};
    }
    for (std::size_t p = 0; p < latest.size(); ++p) {
        auto& out = g.votes_by_proposal[p];
        out.reserve(latest[p].size());
        for (const auto& [u, tsopt] : latest[p]) out.emplace_back(u, tsopt.second);
        std::sort(out.begin(), out.end());
    }
    return g;
}

const char* to_string(CovoteVariant v) {
    switch (v) {
        case CovoteVariant::AA: return "aa";
        case CovoteVariant::AW: return "aw";
        case CovoteVariant::TA: return "ta";
        case CovoteVariant::TW: return "tw";
    }
    return "aa";
}

CovoteVariant covote_variant_from_string(const std::string& s) {
    if (s == "aa") return CovoteVariant::AA;
    if (s == "aw") return CovoteVariant::AW;
    if (s == "ta") return CovoteVariant::TA;
    if (s == "tw") return CovoteVariant::TW;
    throw ConfigError("unknown co-voting variant '" + s + "' (expected aa/aw/ta/tw)");
}

CoVoteGraph project(const BipartiteVoteGraph& bipartite, CovoteVariant variant,
                    std::uint32_t threshold,
                    const std::unordered_map<std::string, std::uint32_t>* winning_options,
                    const std::unordered_set<std::string>* top_spaces,
                    const std::unordered_set<Address, AddressHash>& contributors,
                    unsigned workers) {
    bool winning_only = variant == CovoteVariant::AW || variant == CovoteVariant::TW;
    bool top_only = variant == CovoteVariant::TA || variant == CovoteVariant::TW;
    if (winning_only && winning_options == nullptr)
        throw ConfigError(std::string("variant ") + to_string(variant) +
                          " needs proposal outcomes");
    if (top_only && top_spaces == nullptr)
        throw ConfigError(std::string("variant ") + to_string(variant) +
                          " needs the top-TVL space set");

    std::uint32_t n_users = static_cast<std::uint32_t>(bipartite.users.size());
    std::uint32_t n_proposals = static_cast<std::uint32_t>(bipartite.proposal_ids.size());

    // Filtered participant lists per proposal.
    std::vector<std::vector<std::uint32_t>> participants(n_proposals);
    for (std::uint32_t p = 0; p < n_proposals; ++p) {
        if (top_only && !top_spaces->contains(bipartite.spaces[bipartite.proposal_space[p]]))
            continue;
        std::uint32_t win = 0;
        if (winning_only) {
            auto it = winning_options->find(bipartite.proposal_ids[p]);
            if (it == winning_options->end())
                throw ConfigError("no outcome available for proposal " +
                                  bipartite.proposal_ids[p]);
            win = it->second;
        }
        auto& out = participants[p];
        for (const auto& [u, opt] : bipartite.votes_by_proposal[p])
            if (!winning_only || opt == win) out.push_back(u);
    }

    // user -> filtered proposal list (CSR)
    std::vector<std::size_t> uoffsets(n_users + 1, 0);
    for (const auto& ps : participants)
        for (std::uint32_t u : ps) ++uoffsets[u + 1];
    for (std::uint32_t u = 0; u < n_users; ++u) uoffsets[u + 1] += uoffsets[u];
    std::vector<std::uint32_t> uproposals(uoffsets.back());
    {
        std::vector<std::size_t> cursor(uoffsets.begin(), uoffsets.end() - 1);
        for (std::uint32_t p = 0; p < n_proposals; ++p)
            for (std::uint32_t u : participants[p]) uproposals[cursor[u]++] = p;
    }

    // Scan users in ascending order; count co-votes against strictly larger
    // user ids with an epoch-stamped dense accumulator, so each unordered
    // pair is totalled exactly once and memory stays linear in the user count.
    unsigned k = std::max(1u, workers);
    std::vector<std::vector<CoVoteEdge>> chunk_edges(k);
    parallel_chunks(n_users, k, [&](std::size_t begin, std::size_t end, unsigned chunk) {
        std::vector<std::uint32_t> count(n_users, 0);
        std::vector<std::uint32_t> stamp(n_users, UINT32_MAX);
        std::vector<std::uint32_t> touched;
        auto& out = chunk_edges[chunk];
        for (std::uint32_t u = static_cast<std::uint32_t>(begin); u < end; ++u) {
            touched.clear();
            for (std::size_t i = uoffsets[u]; i < uoffsets[u + 1]; ++i) {
                for (std::uint32_t v : participants[uproposals[i]]) {
                    if (v <= u) continue;
                    if (stamp[v] != u) {
                        stamp[v] = u;
                        count[v] = 0;
                        touched.push_back(v);
                    }
                    ++count[v];
                }
            }
            std::sort(touched.begin(), touched.end());
            for (std::uint32_t v : touched)
                if (count[v] > threshold) out.push_back({u, v, count[v]});
        }
    });

    CoVoteGraph g;
    g.variant = variant;
    g.threshold = threshold;
    std::vector<CoVoteEdge> edges;
    for (auto& ce : chunk_edges) {
        edges.insert(edges.end(), ce.begin(), ce.end());
        ce.clear();
    }

    // Remap retained endpoints to dense node ids, ascending user index.
    std::vector<std::uint32_t> node_of(n_users, UINT32_MAX);
    std::vector<bool> used(n_users, false);
    for (const auto& e : edges) used[e.a] = used[e.b] = true;
    for (std::uint32_t u = 0; u < n_users; ++u) {
        if (!used[u]) continue;
        node_of[u] = static_cast<std::uint32_t>(g.nodes.size());
        g.nodes.push_back(bipartite.users[u]);
        g.contributor.push_back(contributors.contains(bipartite.users[u]));
    }
    g.edges.reserve(edges.size());
    for (const auto& e : edges) g.edges.push_back({node_of[e.a], node_of[e.b], e.weight});
    std::sort(g.edges.begin(), g.edges.end(), [](const CoVoteEdge& x, const CoVoteEdge& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return g;
}

}  // namespace daogov
