#include "ingest/tvl_match.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace daogov {

std::vector<std::string> tokenize_name(const std::string& s) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    return tokens;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() && b.empty()) return 0.0;
    std::size_t inter = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

TvlMatchResult match_tvl(std::span<const Space> spaces, std::span<const TvlRecord> records) {
    constexpr double kNameThreshold = 0.5;
    constexpr double kIdentifierThreshold = 0.6;

    TvlMatchResult result;
    std::unordered_map<std::string, const Space*> by_id;
    for (const auto& s : spaces) by_id.emplace(s.id, &s);

    struct SpaceTokens {
        const Space* space;
        std::vector<std::string> tokens;  // of the space id
    };
    std::vector<SpaceTokens> space_tokens;
    space_tokens.reserve(spaces.size());
    for (const auto& s : spaces) space_tokens.push_back({&s, tokenize_name(s.id)});

    auto link = [&](const std::string& space_id, double tvl) {
        result.tvl_by_space[space_id] += tvl;  // versions of one protocol sum
    };

    for (const auto& rec : records) {
        // exact governance identifier short-circuits the fuzzy path
        if (auto it = by_id.find(rec.identifier); it != by_id.end()) {
            link(it->first, rec.tvl_usd);
            continue;
        }

        auto name_tokens = tokenize_name(rec.protocol);
        auto ident_tokens = tokenize_name(rec.identifier);
        struct Candidate {
            const Space* space;
            double name_sim;
            double ident_sim;
        };
        std::vector<Candidate> candidates;
        for (const auto& st : space_tokens) {
            double name_sim = jaccard(name_tokens, st.tokens);
            if (name_sim < kNameThreshold) continue;
            double ident_sim = jaccard(ident_tokens, st.tokens);
            if (ident_sim < kIdentifierThreshold) continue;
            candidates.push_back({st.space, name_sim, ident_sim});
        }
        if (candidates.empty()) {
            result.unmatched_identifiers.push_back(rec.identifier);
            continue;
        }
        std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
            if (a.name_sim != b.name_sim) return a.name_sim > b.name_sim;
            if (a.ident_sim != b.ident_sim) return a.ident_sim > b.ident_sim;
            return a.space->id < b.space->id;
        });
        link(candidates.front().space->id, rec.tvl_usd);
        if (candidates.size() > 1) {
            TvlMatchResult::AmbiguousMatch amb;
            amb.identifier = rec.identifier;
            amb.linked_space = candidates.front().space->id;
            for (const auto& c : candidates) amb.candidates.push_back(c.space->id);
            result.ambiguous.push_back(std::move(amb));
        }
    }
    return result;
}

}  // namespace daogov
