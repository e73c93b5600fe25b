#include "ingest/bundle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "util/artifact.hpp"
#include "util/errors.hpp"
#include "util/jsonl.hpp"

namespace daogov {

namespace {

const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("missing field '") + key + "' in " + obj.dump());
    return *it;
}

double require_finite_nonneg(const nlohmann::json& v, const char* what) {
    if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
    double d = v.get<double>();
    if (!std::isfinite(d) || d < 0.0)
        throw ValidationError(std::string(what) + " must be finite and non-negative, got " +
                              v.dump());
    return d;
}

template <typename T, typename FromJson>
std::vector<T> load_entities(const std::filesystem::path& path, FromJson&& from_json) {
    std::vector<T> out;
    for_each_jsonl(path, [&](std::size_t lineno, const nlohmann::json& obj) {
        try {
            out.push_back(from_json(obj));
        } catch (const Error& e) {
            throw ParseError(path.filename().string() + ":" + std::to_string(lineno) + ": " +
                             e.what());
        }
    });
    return out;
}

}  // namespace

nlohmann::json space_to_json(const Space& s) {
    nlohmann::json j{{"id", s.id}, {"follower_count", s.follower_count}};
    if (s.tvl_usd) j["tvl_usd"] = *s.tvl_usd;
    nlohmann::json accounts = nlohmann::json::array();
    for (const auto& a : s.token_accounts) accounts.push_back(a.to_string());
    j["token_accounts"] = std::move(accounts);
    return j;
}

Space space_from_json(const nlohmann::json& j) {
    Space s;
    s.id = require(j, "id").get<std::string>();
    if (s.id.empty()) throw ParseError("space id must be non-empty");
    s.follower_count = require(j, "follower_count").get<std::uint64_t>();
    if (j.contains("tvl_usd") && !j["tvl_usd"].is_null())
        s.tvl_usd = require_finite_nonneg(j["tvl_usd"], "tvl_usd");
    if (j.contains("token_accounts"))
        for (const auto& a : j["token_accounts"]) s.token_accounts.push_back(Address::parse(a.get<std::string>()));
    std::sort(s.token_accounts.begin(), s.token_accounts.end());
    s.token_accounts.erase(std::unique(s.token_accounts.begin(), s.token_accounts.end()),
                           s.token_accounts.end());
    return s;
}

nlohmann::json proposal_to_json(const Proposal& p) {
    nlohmann::json strategies = nlohmann::json::array();
    for (const auto& st : p.strategies) {
        nlohmann::json js{{"kind", st.kind_string()}};
        if (st.token_address) js["token_address"] = st.token_address->to_string();
        if (st.decimals) js["decimals"] = *st.decimals;
        strategies.push_back(std::move(js));
    }
    return nlohmann::json{{"id", p.id},
                          {"space", p.space},
                          {"options", p.options},
                          {"strategies", std::move(strategies)},
                          {"block_height", p.block_height},
                          {"status", to_string(p.status)},
                          {"vote_type", p.vote_type},
                          {"reported_scores", p.reported_scores}};
}

Proposal proposal_from_json(const nlohmann::json& j) {
    Proposal p;
    p.id = require(j, "id").get<std::string>();
    p.space = require(j, "space").get<std::string>();
    p.options = require(j, "options").get<std::vector<std::string>>();
    for (const auto& js : j.value("strategies", nlohmann::json::array())) {
        StrategySpec st;
        std::string kind = require(js, "kind").get<std::string>();
        st.kind = StrategySpec::kind_from_string(kind);
        if (st.kind == StrategyKind::Other) st.other_name = kind;
        if (js.contains("token_address"))
            st.token_address = Address::parse(js["token_address"].get<std::string>());
        if (js.contains("decimals") && !js["decimals"].is_null())
            st.decimals = js["decimals"].get<int>();
        if ((st.kind == StrategyKind::Erc20BalanceOf || st.kind == StrategyKind::Erc721) &&
            !st.token_address)
            throw ParseError("strategy '" + kind + "' requires token_address");
        p.strategies.push_back(std::move(st));
    }
    p.block_height = require(j, "block_height").get<std::uint64_t>();
    if (p.block_height == 0) throw ValidationError("proposal " + p.id + ": block_height must be > 0");
    p.status = proposal_status_from_string(require(j, "status").get<std::string>());
    p.vote_type = require(j, "vote_type").get<std::string>();
    if (j.contains("reported_scores"))
        for (const auto& v : j["reported_scores"])
            p.reported_scores.push_back(require_finite_nonneg(v, "reported score"));
    if (p.vote_type == "single-choice" && p.options.size() < 2)
        throw ValidationError("proposal " + p.id + ": single-choice needs >= 2 options");
    return p;
}

nlohmann::json vote_to_json(const Vote& v) {
    nlohmann::json j{{"user", v.user.to_string()},
                     {"proposal", v.proposal},
                     {"reported_weight", v.reported_weight},
                     {"timestamp", v.timestamp}};
    if (v.choice.is_single())
        j["choice"] = v.choice.single_index();
    else
        j["choice"] = v.choice.magnitudes();
    return j;
}

Vote vote_from_json(const nlohmann::json& j) {
    Vote v;
    v.user = Address::parse(require(j, "user").get<std::string>());
    v.proposal = require(j, "proposal").get<std::string>();
    const auto& choice = require(j, "choice");
    if (choice.is_array()) {
        v.choice = VoteChoice(choice.get<std::vector<double>>());
    } else if (choice.is_number_unsigned()) {
        v.choice = VoteChoice(choice.get<std::uint32_t>());
    } else {
        throw ParseError("vote choice must be an option index or a magnitude array");
    }
    v.reported_weight = require_finite_nonneg(require(j, "reported_weight"), "reported_weight");
    v.timestamp = require(j, "timestamp").get<std::int64_t>();
    return v;
}

nlohmann::json contribution_to_json(const Contribution& c) {
    return nlohmann::json{
        {"user", c.user.to_string()}, {"space", c.space}, {"roles", c.roles.names()}};
}

Contribution contribution_from_json(const nlohmann::json& j) {
    Contribution c;
    c.user = Address::parse(require(j, "user").get<std::string>());
    c.space = require(j, "space").get<std::string>();
    for (const auto& r : require(j, "roles"))
        c.roles.add(RoleSet::role_from_string(r.get<std::string>()));
    if (c.roles.empty()) throw ValidationError("contribution with empty role set");
    return c;
}

nlohmann::json tvl_record_to_json(const TvlRecord& r) {
    return nlohmann::json{
        {"protocol", r.protocol}, {"identifier", r.identifier}, {"tvl_usd", r.tvl_usd}};
}

TvlRecord tvl_record_from_json(const nlohmann::json& j) {
    TvlRecord r;
    r.protocol = require(j, "protocol").get<std::string>();
    r.identifier = require(j, "identifier").get<std::string>();
    if (r.protocol.empty() || r.identifier.empty())
        throw ParseError("tvl record needs non-empty protocol and identifier");
    r.tvl_usd = require_finite_nonneg(require(j, "tvl_usd"), "tvl_usd");
    return r;
}

BundlePaths BundlePaths::in_dir(const std::filesystem::path& dir) {
    return BundlePaths{dir / "spaces.jsonl", dir / "proposals.jsonl", dir / "votes.jsonl",
                       dir / "contributions.jsonl", dir / "tvl.jsonl"};
}

const Space* DatasetBundle::find_space(const std::string& id) const {
    for (const auto& s : spaces)
        if (s.id == id) return &s;
    return nullptr;
}

const Proposal* DatasetBundle::find_proposal(const std::string& id) const {
    for (const auto& p : proposals)
        if (p.id == id) return &p;
    return nullptr;
}

std::unordered_map<std::string, std::size_t> DatasetBundle::proposal_index() const {
    std::unordered_map<std::string, std::size_t> idx;
    idx.reserve(proposals.size());
    for (std::size_t i = 0; i < proposals.size(); ++i) idx.emplace(proposals[i].id, i);
    return idx;
}

std::unordered_map<std::string, std::size_t> DatasetBundle::space_index() const {
    std::unordered_map<std::string, std::size_t> idx;
    idx.reserve(spaces.size());
    for (std::size_t i = 0; i < spaces.size(); ++i) idx.emplace(spaces[i].id, i);
    return idx;
}

std::unordered_map<std::string, std::vector<const Vote*>> DatasetBundle::votes_by_proposal()
    const {
    std::unordered_map<std::string, std::vector<const Vote*>> by;
    for (const auto& v : votes) by[v.proposal].push_back(&v);
    return by;
}

DatasetBundle load_bundle(const BundlePaths& paths) {
    DatasetBundle b;
    b.spaces = load_entities<Space>(paths.spaces, space_from_json);
    b.proposals = load_entities<Proposal>(paths.proposals, proposal_from_json);
    b.votes = load_entities<Vote>(paths.votes, vote_from_json);

    // Merge duplicate (user, space) contributions by role union, keeping
    // first-seen order.
    auto raw = load_entities<Contribution>(paths.contributions, contribution_from_json);
    std::unordered_map<std::string, std::size_t> seen;
    for (auto& c : raw) {
        std::string key = c.user.to_string() + "|" + c.space;
        auto [it, inserted] = seen.emplace(key, b.contributions.size());
        if (inserted)
            b.contributions.push_back(std::move(c));
        else
            b.contributions[it->second].roles.merge(c.roles);
    }

    if (std::filesystem::exists(paths.tvl))
        b.tvl_records = load_entities<TvlRecord>(paths.tvl, tvl_record_from_json);

    // Referential integrity: collect all offenders before failing.
    std::unordered_set<std::string> space_ids, proposal_ids;
    std::vector<std::string> offenders;
    for (const auto& s : b.spaces)
        if (!space_ids.insert(s.id).second) offenders.push_back("duplicate space " + s.id);
    for (const auto& p : b.proposals) {
        if (!proposal_ids.insert(p.id).second) offenders.push_back("duplicate proposal " + p.id);
        if (!space_ids.contains(p.space))
            offenders.push_back("proposal " + p.id + " references unknown space " + p.space);
    }
    for (const auto& v : b.votes)
        if (!proposal_ids.contains(v.proposal))
            offenders.push_back("vote by " + v.user.to_string() + " references unknown proposal " +
                                v.proposal);
    for (const auto& c : b.contributions)
        if (!space_ids.contains(c.space))
            offenders.push_back("contribution by " + c.user.to_string() +
                                " references unknown space " + c.space);
    if (!offenders.empty()) {
        std::string msg = "bundle integrity violated:";
        for (const auto& o : offenders) msg += "\n  " + o;
        throw IntegrityError(msg);
    }

    // Validate vote choices against their proposals up front so downstream
    // stages can assume well-formed choices.
    auto pidx = b.proposal_index();
    for (const auto& v : b.votes) {
        const Proposal& p = b.proposals[pidx.at(v.proposal)];
        v.choice.validate(p.n_options(), v.user.to_string() + " on " + v.proposal);
    }
    return b;
}

namespace {

template <typename T, typename ToJson>
void save_entities(const std::filesystem::path& path, const std::vector<T>& items,
                   ToJson&& to_json, const std::string& meta_line) {
    std::string content;
    if (!meta_line.empty()) content += meta_line + "\n";
    for (const auto& item : items) {
        content += jsonl_line(to_json(item));
        content += "\n";
    }
    write_file_atomic(path, content);
}

}  // namespace

void save_bundle(const DatasetBundle& bundle, const BundlePaths& paths,
                 const std::string& meta_line) {
    save_entities(paths.spaces, bundle.spaces, space_to_json, meta_line);
    save_entities(paths.proposals, bundle.proposals, proposal_to_json, meta_line);
    save_entities(paths.votes, bundle.votes, vote_to_json, meta_line);
    save_entities(paths.contributions, bundle.contributions, contribution_to_json, meta_line);
    save_entities(paths.tvl, bundle.tvl_records, tvl_record_to_json, meta_line);
}

}  // namespace daogov
