#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "run/config.hpp"
#include "strategy/provider.hpp"
#include "util/artifact.hpp"

namespace daogov {

// Batch orchestration of the analysis stages. Each stage reads the previous
// stage's artifacts from disk and writes its own directory under out_dir;
// directories are staged and renamed so a failing stage leaves nothing
// behind. Reruns with identical inputs and seeds are byte-identical.
class Pipeline {
public:
    explicit Pipeline(RunConfig config);

    // stage: ingest | clean | metrics | network | validate | shifts | report
    // or "all" for the full sequence. Throws PrerequisiteError when an
    // earlier stage's artifacts are missing.
    void run_stage(const std::string& stage);

    static const std::vector<std::string>& stage_order();

    const RunConfig& config() const { return cfg_; }

private:
    std::filesystem::path stage_dir(const std::string& stage) const;
    void require_artifact(const std::string& stage, const std::filesystem::path& file,
                          const std::string& producing_stage) const;
    std::unique_ptr<BalanceProvider> make_provider() const;

    void stage_ingest();
    void stage_clean();
    void stage_metrics();
    void stage_network();
    void stage_validate();
    void stage_shifts();
    void stage_report();

    RunConfig cfg_;
    ArtifactMeta meta_;
};

}  // namespace daogov
