#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graph/wgraph.hpp"

namespace daogov {

struct CommunityAssignment {
    std::vector<std::uint32_t> community;  // node -> community id
    double modularity = 0.0;

    std::uint64_t community_count() const;
};

// Weighted Louvain modularity optimization. Node visit order is shuffled by
// the seed; community ids are canonicalized by descending size so equal
// inputs yield identical reports.
CommunityAssignment louvain_communities(const WGraph& g, double resolution, std::uint64_t seed);

double weighted_modularity(const WGraph& g, const std::vector<std::uint32_t>& community,
                           double resolution);

// Herfindahl-Hirschman index over percentage shares (0..10000 scale).
double hhi(const std::vector<std::uint64_t>& counts);

// Interpretive band label: below 1500 well-mixed, 1500..2500 moderately
// concentrated, above 2500 highly concentrated.
const char* hhi_band(double hhi_value);

struct ConcentrationReport {
    std::optional<double> hhi_contributors;     // absent when no contributors
    std::optional<double> hhi_noncontributors;  // absent when all are contributors
    double share_with_contributor = 0.0;        // communities with >= 1 contributor
    double observed_chi2 = 0.0;
    std::optional<double> chi2_p;
    std::uint64_t bootstrap_replicates = 0;
    std::string notice;  // set when the chi-squared test is skipped
};

// Concentration of contributors over communities plus a bootstrap p-value:
// contributor labels are reassigned uniformly at random across nodes and the
// chi-squared statistic of per-community contributor counts (expected
// proportional to community size) is compared to the observed one.
ConcentrationReport concentration(const std::vector<std::uint32_t>& community,
                                  const std::vector<bool>& contributor,
                                  std::uint64_t bootstrap_replicates, std::uint64_t seed);

}  // namespace daogov
