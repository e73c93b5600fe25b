#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "model/types.hpp"

namespace daogov {

// Raw TVL entry as exported from the protocol-tracking source.
struct TvlRecord {
    std::string protocol;    // display name
    std::string identifier;  // governance identifier, may equal a space id
    double tvl_usd = 0.0;
};

// In-memory dataset. load_bundle guarantees referential integrity:
// vote -> proposal -> space, contribution -> space.
struct DatasetBundle {
    std::vector<Space> spaces;
    std::vector<Proposal> proposals;
    std::vector<Vote> votes;
    std::vector<Contribution> contributions;
    std::vector<TvlRecord> tvl_records;

    const Space* find_space(const std::string& id) const;
    const Proposal* find_proposal(const std::string& id) const;
    std::unordered_map<std::string, std::size_t> proposal_index() const;
    std::unordered_map<std::string, std::size_t> space_index() const;

    // Votes grouped per proposal id, preserving input order.
    std::unordered_map<std::string, std::vector<const Vote*>> votes_by_proposal() const;
};

struct BundlePaths {
    std::filesystem::path spaces;
    std::filesystem::path proposals;
    std::filesystem::path votes;
    std::filesystem::path contributions;
    std::filesystem::path tvl;

    // Conventional file names under one directory; tvl is optional on disk.
    static BundlePaths in_dir(const std::filesystem::path& dir);
};

// Parses the JSON-Lines interchange files into a referentially-intact bundle.
// Duplicate (user, space) contributions merge by role union. Missing tvl file
// yields an empty tvl_records list; the other four files must exist.
DatasetBundle load_bundle(const BundlePaths& paths);

// Inverse of load_bundle, canonical field order and formatting. meta_line, if
// non-empty, is written as the first line of each file.
void save_bundle(const DatasetBundle& bundle, const BundlePaths& paths,
                 const std::string& meta_line = {});

// Single-entity (de)serialization, shared by load/save and tests.
nlohmann::json space_to_json(const Space&);
nlohmann::json proposal_to_json(const Proposal&);
nlohmann::json vote_to_json(const Vote&);
nlohmann::json contribution_to_json(const Contribution&);
nlohmann::json tvl_record_to_json(const TvlRecord&);
Space space_from_json(const nlohmann::json&);
Proposal proposal_from_json(const nlohmann::json&);
Vote vote_from_json(const nlohmann::json&);
Contribution contribution_from_json(const nlohmann::json&);
TvlRecord tvl_record_from_json(const nlohmann::json&);

}  // namespace daogov
