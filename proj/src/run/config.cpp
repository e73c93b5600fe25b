#include "run/config.hpp"

#include "graph/covote.hpp"
#include "util/artifact.hpp"
#include "util/errors.hpp"

namespace daogov {

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    RunConfig c;
    try {
        c.input_dir = j.value("input_dir", c.input_dir);
        c.out_dir = j.value("out_dir", c.out_dir);
        c.threshold = j.value("threshold", c.threshold);
        c.lookback_days = j.value("lookback_days", c.lookback_days);
        c.seed = j.value("seed", c.seed);
        c.workers = j.value("workers", c.workers);
        c.provider = j.value("provider", c.provider);
        c.rpc_endpoint = j.value("rpc_endpoint", c.rpc_endpoint);
        if (j.contains("variants")) c.variants = j["variants"].get<std::vector<std::string>>();
        c.top_spaces = j.value("top_spaces", c.top_spaces);
        c.apl_exact_max_nodes = j.value("apl_exact_max_nodes", c.apl_exact_max_nodes);
        c.apl_sources = j.value("apl_sources", c.apl_sources);
        c.closeness_exact_max_nodes =
            j.value("closeness_exact_max_nodes", c.closeness_exact_max_nodes);
        c.closeness_pivots = j.value("closeness_pivots", c.closeness_pivots);
        c.betweenness_exact_max_nodes =
            j.value("betweenness_exact_max_nodes", c.betweenness_exact_max_nodes);
        c.betweenness_pivots = j.value("betweenness_pivots", c.betweenness_pivots);
        c.rewire_replicates = j.value("rewire_replicates", c.rewire_replicates);
        c.bootstrap_replicates = j.value("bootstrap_replicates", c.bootstrap_replicates);
        c.self_decision_display_threshold =
            j.value("self_decision_display_threshold", c.self_decision_display_threshold);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    c.validate();
    return c;
}

nlohmann::json RunConfig::to_json() const {
    return nlohmann::json{{"input_dir", input_dir},
                          {"out_dir", out_dir},
                          {"threshold", threshold},
                          {"lookback_days", lookback_days},
                          {"seed", seed},
                          {"workers", workers},
                          {"provider", provider},
                          {"rpc_endpoint", rpc_endpoint},
                          {"variants", variants},
                          {"top_spaces", top_spaces},
                          {"apl_exact_max_nodes", apl_exact_max_nodes},
                          {"apl_sources", apl_sources},
                          {"closeness_exact_max_nodes", closeness_exact_max_nodes},
                          {"closeness_pivots", closeness_pivots},
                          {"betweenness_exact_max_nodes", betweenness_exact_max_nodes},
                          {"betweenness_pivots", betweenness_pivots},
                          {"rewire_replicates", rewire_replicates},
                          {"bootstrap_replicates", bootstrap_replicates},
                          {"self_decision_display_threshold", self_decision_display_threshold}};
}

std::uint64_t RunConfig::config_hash() const {
    // hash the analytic knobs only: runs over the same inputs must be
    // byte-identical regardless of where the artifacts land
    nlohmann::json j = to_json();
    j.erase("input_dir");
    j.erase("out_dir");
    return fnv1a64(j.dump());
}

void RunConfig::validate() const {
    if (threshold < 1) throw ConfigError("threshold must be positive");
    if (lookback_days < 1) throw ConfigError("lookback_days must be positive");
    if (workers < 1) throw ConfigError("workers must be positive");
    if (provider != "fixture" && provider != "rpc")
        throw ConfigError("provider must be 'fixture' or 'rpc'");
    if (provider == "rpc" && rpc_endpoint.empty())
        throw ConfigError("rpc provider needs an endpoint (--rpc-endpoint or DAOGOV_RPC_ENDPOINT)");
    if (top_spaces < 1) throw ConfigError("top_spaces must be positive");
    if (apl_sources < 1 || closeness_pivots < 1 || betweenness_pivots < 1)
        throw ConfigError("sampling source counts must be positive");
    if (rewire_replicates < 1) throw ConfigError("rewire_replicates must be positive");
    if (bootstrap_replicates < 1) throw ConfigError("bootstrap_replicates must be positive");
    if (self_decision_display_threshold < 0.0 || self_decision_display_threshold > 1.0)
        throw ConfigError("self_decision_display_threshold must be within [0, 1]");
    for (const auto& v : variants) covote_variant_from_string(v);
}

}  // namespace daogov
