#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace daogov {

// One configuration drives every stage; all randomized procedures draw their
// seeds from here and the config hash is stamped into every artifact.
struct RunConfig {
    std::string input_dir;
    std::string out_dir;

    std::uint32_t threshold = 10;       // co-vote edge threshold T
    std::uint32_t lookback_days = 100;  // majority-shift window
    std::uint64_t seed = 42;
    std::uint32_t workers = 1;

    std::string provider = "fixture";  // fixture | rpc
    std::string rpc_endpoint;          // flag or DAOGOV_RPC_ENDPOINT

    std::vector<std::string> variants = {"aa", "aw", "ta", "tw"};
    std::uint32_t top_spaces = 100;  // top-TVL cut for ta/tw

    // sampling cutoffs (exact below, sampled above) and replicate counts
    std::uint32_t apl_exact_max_nodes = 100000;
    std::uint32_t apl_sources = 1000;
    std::uint32_t closeness_exact_max_nodes = 100000;
    std::uint32_t closeness_pivots = 1000;
    std::uint32_t betweenness_exact_max_nodes = 10000;
    std::uint32_t betweenness_pivots = 500;
    std::uint32_t rewire_replicates = 5;
    std::uint64_t bootstrap_replicates = 100000;

    double self_decision_display_threshold = 0.001;  // 0.1%, report-level filter

    static RunConfig from_json(const nlohmann::json& j);  // throws ConfigError
    nlohmann::json to_json() const;
    std::uint64_t config_hash() const;

    void validate() const;  // throws ConfigError
};

}  // namespace daogov
