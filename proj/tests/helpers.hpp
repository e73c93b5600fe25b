#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "model/types.hpp"

namespace daogov::test {

inline Address addr(unsigned n) {
    Address a;
    a.bytes[16] = static_cast<std::uint8_t>(n >> 24);
    a.bytes[17] = static_cast<std::uint8_t>(n >> 16);
    a.bytes[18] = static_cast<std::uint8_t>(n >> 8);
    a.bytes[19] = static_cast<std::uint8_t>(n & 0xff);
    return a;
}

inline Vote make_vote(unsigned user, const std::string& proposal, std::uint32_t option,
                      double weight, std::int64_t timestamp = 0) {
    Vote v;
    v.user = addr(user);
    v.proposal = proposal;
    v.choice = VoteChoice(option);
    v.reported_weight = weight;
    v.timestamp = timestamp;
    return v;
}

inline Contribution make_contribution(unsigned user, const std::string& space,
                                      Role role = Role::Owner) {
    Contribution c;
    c.user = addr(user);
    c.space = space;
    c.roles.add(role);
    return c;
}

inline Proposal make_proposal(const std::string& id, const std::string& space,
                              std::uint32_t n_options = 2,
                              ProposalStatus status = ProposalStatus::Final) {
    Proposal p;
    p.id = id;
    p.space = space;
    for (std::uint32_t i = 0; i < n_options; ++i) p.options.push_back("option-" + std::to_string(i));
    p.block_height = 2000000;
    p.status = status;
    p.vote_type = "single-choice";
    return p;
}

// Unique scratch directory under the build tree, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("daogov_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_lines(const std::filesystem::path& file, const std::vector<std::string>& lines) {
    std::ofstream out(file);
    for (const auto& l : lines) out << l << '\n';
}

inline std::filesystem::path fixture_dir() {
    return std::filesystem::path(DAOGOV_TEST_DATA_DIR) / "fixture_small";
}

}  // namespace daogov::test
