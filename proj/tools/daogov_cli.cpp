// Command-line front end; talks to the engine exclusively through the C API.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "daogov/daogov.h"
#include "json.hpp"

int main(int argc, char** argv) {
    CLI::App app{"daogov - DAO governance analytics pipeline"};
    app.footer("Stages exchange artifacts under --out-dir; run stages in order\n"
               "(ingest, clean, metrics, network, validate, shifts, report) or use\n"
               "--stage all.");

    std::string input_dir, out_dir;
    std::string stage = "all";
    unsigned threshold = 10;
    unsigned lookback_days = 100;
    std::uint64_t seed = 42;
    unsigned workers = 1;
    std::string provider = "fixture";
    std::string rpc_endpoint;
    std::vector<std::string> variants = {"aa", "aw", "ta", "tw"};

    app.add_option("--input-dir", input_dir, "Directory with the interchange JSONL files")
        ->required();
    app.add_option("--out-dir", out_dir, "Directory for stage artifacts")->required();
    app.add_option("--stage", stage,
                   "Stage to run: ingest|clean|metrics|network|validate|shifts|report|all")
        ->check(CLI::IsMember(
            {"ingest", "clean", "metrics", "network", "validate", "shifts", "report", "all"}));
    app.add_option("--threshold", threshold, "Co-vote edge threshold T (edges need weight > T)")
        ->check(CLI::PositiveNumber);
    app.add_option("--lookback-days", lookback_days, "Majority-shift lookback window in days")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for all randomized procedures");
    app.add_option("--workers", workers, "Worker threads for parallel sections")
        ->check(CLI::PositiveNumber);
    app.add_option("--provider", provider, "Balance provider")
        ->check(CLI::IsMember({"fixture", "rpc"}));
    app.add_option("--rpc-endpoint", rpc_endpoint,
                   "Archive-node JSON-RPC endpoint (or set DAOGOV_RPC_ENDPOINT)");
    app.add_option("--variant", variants, "Co-voting networks to build (aa aw ta tw)")
        ->check(CLI::IsMember({"aa", "aw", "ta", "tw"}));

    CLI11_PARSE(app, argc, argv);

    if (rpc_endpoint.empty())
        if (const char* env = std::getenv("DAOGOV_RPC_ENDPOINT")) rpc_endpoint = env;

    nlohmann::json config{{"input_dir", input_dir},
                          {"out_dir", out_dir},
                          {"threshold", threshold},
                          {"lookback_days", lookback_days},
                          {"seed", seed},
                          {"workers", workers},
                          {"provider", provider},
                          {"rpc_endpoint", rpc_endpoint},
                          {"variants", variants}};

    dg_engine* engine = nullptr;
    dg_status rc = dg_engine_create(config.dump().c_str(), &engine);
    if (rc != DG_OK) {
        std::fprintf(stderr, "error (%s): %s\n", dg_status_name(rc), dg_last_create_error());
        return 1;
    }

    char hash[17] = {0};
    dg_engine_config_hash(engine, hash, sizeof hash);
    std::fprintf(stderr, "daogov %s | config %s | seed %llu\n", dg_version(), hash,
                 static_cast<unsigned long long>(seed));

    std::vector<std::string> stages;
    if (stage == "all")
        stages = {"ingest", "clean", "metrics", "network", "validate", "shifts", "report"};
    else
        stages = {stage};

    for (const auto& s : stages) {
        std::fprintf(stderr, "running stage %s...\n", s.c_str());
        rc = dg_engine_run_stage(engine, s.c_str());
        if (rc != DG_OK) {
            std::fprintf(stderr, "stage %s failed (%s): %s\n", s.c_str(), dg_status_name(rc),
                         dg_engine_last_error(engine));
            dg_engine_destroy(engine);
            return 1;
        }
    }

    dg_engine_destroy(engine);
    return 0;
}
