#include "run/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "graph/centrality.hpp"
#include "graph/community.hpp"
#include "graph/contributors.hpp"
#include "graph/covote.hpp"
#include "graph/stats.hpp"
#include "ingest/bundle.hpp"
#include "ingest/clean.hpp"
#include "ingest/tvl_match.hpp"
#include "metrics/metrics.hpp"
#include "shift/shift.hpp"
#include "strategy/rpc_provider.hpp"
#include "strategy/validate.hpp"
#include "util/errors.hpp"
#include "util/jsonl.hpp"

namespace daogov {

namespace fs = std::filesystem;

namespace {

// Collects a stage's files in a temp directory, renamed into place on commit.
class StageWriter {
public:
    StageWriter(const fs::path& final_dir, const ArtifactMeta& meta)
        : final_dir_(final_dir), tmp_dir_(final_dir.string() + ".staging"), meta_(meta) {
        std::error_code ec;
        fs::remove_all(tmp_dir_, ec);
        fs::create_directories(tmp_dir_);
    }
    ~StageWriter() {
        if (!committed_) {
            std::error_code ec;
            fs::remove_all(tmp_dir_, ec);
        }
    }

    const fs::path& dir() const { return tmp_dir_; }

    void csv(const std::string& name, std::string_view body) {
        write_csv_artifact(tmp_dir_ / name, meta_, body);
    }
    void json(const std::string& name, nlohmann::json body) {
        write_json_artifact(tmp_dir_ / name, meta_, std::move(body));
    }
    void jsonl(const std::string& name, std::string_view body) {
        write_jsonl_artifact(tmp_dir_ / name, meta_, body);
    }

    void commit() {
        std::error_code ec;
        fs::remove_all(final_dir_, ec);
        fs::rename(tmp_dir_, final_dir_);
        committed_ = true;
    }

private:
    fs::path final_dir_;
    fs::path tmp_dir_;
    ArtifactMeta meta_;
    bool committed_ = false;
};

std::string meta_jsonl_line(const ArtifactMeta& meta) {
    return nlohmann::json{{"_meta", meta.json_block()}}.dump();
}

// Effective TVL: matched record first, then the space's own field, then 0.
double effective_tvl(const Space& s, const std::map<std::string, double>& tvl) {
    if (auto it = tvl.find(s.id); it != tvl.end()) return it->second;
    return s.tvl_usd.value_or(0.0);
}

std::map<std::string, double> load_tvl_map(const fs::path& tvl_match_json) {
    nlohmann::json j = nlohmann::json::parse(read_file(tvl_match_json));
    std::map<std::string, double> out;
    for (const auto& [space, tvl] : j.at("tvl_by_space").items()) out[space] = tvl.get<double>();
    return out;
}

std::string opt_cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

// Latest vote per user, the electorate the outcome ranking runs on.
std::vector<Vote> dedup_votes(const std::vector<const Vote*>& votes) {
    std::unordered_map<Address, const Vote*, AddressHash> latest;
    for (const Vote* v : votes) {
        auto it = latest.find(v->user);
        if (it == latest.end() || v->timestamp >= it->second->timestamp) latest[v->user] = v;
    }
    std::vector<Vote> out;
    out.reserve(latest.size());
    for (const auto& [user, v] : latest) out.push_back(*v);
    std::sort(out.begin(), out.end(), [](const Vote& a, const Vote& b) { return a.user < b.user; });
    return out;
}

struct YearMonth {
    int year = 1970;
    unsigned month = 1;
    auto operator<=>(const YearMonth&) const = default;
    std::string str() const {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%04d-%02u", year, month);
        return buf;
    }
};

// civil-from-days (Hinnant) for UTC month bucketing
YearMonth year_month_utc(std::int64_t timestamp) {
    std::int64_t z = timestamp / 86400;
    if (timestamp % 86400 < 0) --z;
    z += 719468;
    std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    std::uint64_t doe = static_cast<std::uint64_t>(z - era * 146097);
    std::uint64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    std::uint64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    std::uint64_t mp = (5 * doy + 2) / 153;
    unsigned m = static_cast<unsigned>(mp < 10 ? mp + 3 : mp - 9);
    if (m <= 2) ++y;
    return {static_cast<int>(y), m};
}

}  // namespace

Pipeline::Pipeline(RunConfig config) : cfg_(std::move(config)) {
    cfg_.validate();
    if (cfg_.out_dir.empty()) throw ConfigError("out_dir must be set");
    meta_.config_hash = cfg_.config_hash();
    meta_.seed = cfg_.seed;
}

const std::vector<std::string>& Pipeline::stage_order() {
    static const std::vector<std::string> order = {"ingest",   "clean",  "metrics", "network",
                                                   "validate", "shifts", "report"};
    return order;
}

fs::path Pipeline::stage_dir(const std::string& stage) const {
    return fs::path(cfg_.out_dir) / stage;
}

void Pipeline::require_artifact(const std::string& stage, const fs::path& file,
                                const std::string& producing_stage) const {
    if (!fs::exists(file))
        throw PrerequisiteError("stage '" + stage + "' requires " + file.string() +
                                " produced by stage '" + producing_stage + "'; run that first");
}

std::unique_ptr<BalanceProvider> Pipeline::make_provider() const {
    if (cfg_.provider == "rpc")
        return std::make_unique<RpcBalanceProvider>(cfg_.rpc_endpoint);
    fs::path balances = fs::path(cfg_.input_dir) / "balances.jsonl";
    if (!fs::exists(balances))
        throw ConfigError("fixture provider needs " + balances.string());
    return std::make_unique<FixtureBalanceProvider>(FixtureBalanceProvider::load(balances));
}

void Pipeline::run_stage(const std::string& stage) {
    if (stage == "all") {
        for (const auto& s : stage_order()) run_stage(s);
        return;
    }
    if (stage == "ingest") return stage_ingest();
    if (stage == "clean") return stage_clean();
    if (stage == "metrics") return stage_metrics();
    if (stage == "network") return stage_network();
    if (stage == "validate") return stage_validate();
    if (stage == "shifts") return stage_shifts();
    if (stage == "report") return stage_report();
    throw ConfigError("unknown stage '" + stage + "'");
}

void Pipeline::stage_ingest() {
    if (cfg_.input_dir.empty()) throw ConfigError("input_dir must be set for ingest");
    BundlePaths in = BundlePaths::in_dir(cfg_.input_dir);
    for (const fs::path* p : {&in.spaces, &in.proposals, &in.votes, &in.contributions})
        if (!fs::exists(*p)) throw IoError("missing input file " + p->string());

    DatasetBundle bundle = load_bundle(in);
    TvlMatchResult tvl = match_tvl(bundle.spaces, bundle.tvl_records);

    StageWriter w(stage_dir("ingest"), meta_);
    save_bundle(bundle, BundlePaths::in_dir(w.dir()), meta_jsonl_line(meta_));

    nlohmann::json tvl_by_space = nlohmann::json::object();
    for (const auto& [space, v] : tvl.tvl_by_space) tvl_by_space[space] = v;
    nlohmann::json ambiguous = nlohmann::json::array();
    for (const auto& a : tvl.ambiguous)
        ambiguous.push_back({{"identifier", a.identifier},
                             {"linked_space", a.linked_space},
                             {"candidates", a.candidates}});
    w.json("tvl_match.json", {{"tvl_by_space", std::move(tvl_by_space)},
                              {"ambiguous", std::move(ambiguous)},
                              {"unmatched", tvl.unmatched_identifiers}});
    w.json("manifest.json", {{"stage", "ingest"},
                             {"spaces", bundle.spaces.size()},
                             {"proposals", bundle.proposals.size()},
                             {"votes", bundle.votes.size()},
                             {"contributions", bundle.contributions.size()},
                             {"tvl_records", bundle.tvl_records.size()}});
    w.commit();
}

void Pipeline::stage_clean() {
    fs::path in_dir = stage_dir("ingest");
    require_artifact("clean", in_dir / "spaces.jsonl", "ingest");
    DatasetBundle bundle = load_bundle(BundlePaths::in_dir(in_dir));
    auto tvl = load_tvl_map(in_dir / "tvl_match.json");

    CleanResult res = clean(bundle, tvl);

    StageWriter w(stage_dir("clean"), meta_);
    save_bundle(res.bundle, BundlePaths::in_dir(w.dir()), meta_jsonl_line(meta_));
    w.json("cleaning_report.json", res.report.to_json());
    w.json("manifest.json", {{"stage", "clean"},
                             {"spaces", res.bundle.spaces.size()},
                             {"proposals", res.bundle.proposals.size()},
                             {"votes", res.bundle.votes.size()},
                             {"contributions", res.bundle.contributions.size()}});
    w.commit();
}

void Pipeline::stage_metrics() {
    fs::path in_dir = stage_dir("clean");
    require_artifact("metrics", in_dir / "spaces.jsonl", "clean");
    DatasetBundle bundle = load_bundle(BundlePaths::in_dir(in_dir));

    ContributionIndex contributions(bundle.contributions);
    auto by_proposal = bundle.votes_by_proposal();

    std::vector<NormalizedProposal> prepared;
    prepared.reserve(bundle.proposals.size());
    std::uint64_t degenerate = 0;
    for (const auto& p : bundle.proposals) {
        std::vector<Vote> votes;
        if (auto it = by_proposal.find(p.id); it != by_proposal.end())
            for (const Vote* v : it->second) votes.push_back(*v);
        prepared.push_back(prepare_proposal(p, votes, contributions));
        if (prepared.back().degenerate) ++degenerate;
    }

    std::vector<std::string> space_ids;
    for (const auto& s : bundle.spaces) space_ids.push_back(s.id);
    std::sort(space_ids.begin(), space_ids.end());

    std::ostringstream inv_csv;
    inv_csv << "space,n_proposals,involvement_mean,involvement_max,involvement_std,"
               "involvement_min,involvement_median,self_decisions,self_n_decided,"
               "self_n_proposals,self_excluded_ties\n";
    std::ostringstream other_csv;
    other_csv << "space,proposal,flagged,w_decisive_other,w_complement,w_same_second\n";
    nlohmann::json summary_rows = nlohmann::json::array();
    std::uint64_t spaces_without_metrics = 0;

    for (const auto& sid : space_ids) {
        bool usable = std::any_of(prepared.begin(), prepared.end(), [&](const auto& p) {
            return p.space == sid && !p.degenerate;
        });
        if (!usable) {
            ++spaces_without_metrics;
            continue;
        }
        SpaceInvolvement inv = contributor_involvement(sid, prepared);
        SelfDecisionScore self = self_decisions(sid, prepared);
        inv_csv << sid << ',' << inv.n_proposals << ',' << format_double(inv.mean) << ','
                << format_double(inv.max) << ',' << opt_cell(inv.std_dev) << ','
                << format_double(inv.min) << ',' << format_double(inv.median) << ','
                << format_double(self.delta) << ',' << self.n_decided << ',' << self.n_proposals
                << ',' << self.n_excluded_ties << '\n';
        for (const auto& f : other_decisions(sid, prepared))
            other_csv << sid << ',' << f.proposal_id << ',' << (f.flagged ? 1 : 0) << ','
                      << format_double(f.w_decisive_other) << ',' << format_double(f.w_complement)
                      << ',' << format_double(f.w_same_second) << '\n';
        summary_rows.push_back({{"space", sid},
                                {"n_proposals", inv.n_proposals},
                                {"involvement_mean", inv.mean},
                                {"involvement_median", inv.median},
                                {"self_decisions", self.delta},
                                {"self_n_decided", self.n_decided},
                                {"self_excluded_ties", self.n_excluded_ties}});
    }

    StageWriter w(stage_dir("metrics"), meta_);
    w.csv("involvement.csv", inv_csv.str());
    w.csv("other_decisions.csv", other_csv.str());
    w.json("metrics_summary.json", {{"rows", std::move(summary_rows)}});
    w.json("manifest.json", {{"stage", "metrics"},
                             {"proposals", prepared.size()},
                             {"degenerate_proposals", degenerate},
                             {"spaces_without_metrics", spaces_without_metrics}});
    w.commit();
}

void Pipeline::stage_network() {
    fs::path clean_dir = stage_dir("clean");
    require_artifact("network", clean_dir / "spaces.jsonl", "clean");
    fs::path ingest_dir = stage_dir("ingest");
    require_artifact("network", ingest_dir / "tvl_match.json", "ingest");

    DatasetBundle bundle = load_bundle(BundlePaths::in_dir(clean_dir));
    auto tvl = load_tvl_map(ingest_dir / "tvl_match.json");

    BipartiteVoteGraph bip = build_bipartite(bundle.proposals, bundle.votes);

    std::unordered_map<std::string, std::uint32_t> winning;
    auto by_proposal = bundle.votes_by_proposal();
    for (const auto& p : bundle.proposals) {
        std::vector<Vote> electorate;
        if (auto it = by_proposal.find(p.id); it != by_proposal.end())
            electorate = dedup_votes(it->second);
        winning[p.id] = rank_outcome(electorate, p.n_options()).decision();
    }

    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& s : bundle.spaces) ranked.emplace_back(effective_tvl(s, tvl), s.id);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::unordered_set<std::string> top_spaces;
    for (std::size_t i = 0; i < ranked.size() && i < cfg_.top_spaces; ++i)
        top_spaces.insert(ranked[i].second);

    std::unordered_set<Address, AddressHash> contributors;
    for (const auto& c : bundle.contributions) contributors.insert(c.user);

    StageWriter w(stage_dir("network"), meta_);
    nlohmann::json manifest{{"stage", "network"}};

    for (const auto& vname : cfg_.variants) {
        CovoteVariant variant = covote_variant_from_string(vname);
        CoVoteGraph g =
            project(bip, variant, cfg_.threshold, &winning, &top_spaces, contributors,
                    cfg_.workers);

        std::ostringstream edges_csv;
        edges_csv << "src,dst,weight\n";
        for (const auto& e : g.edges)
            edges_csv << g.nodes[e.a].to_string() << ',' << g.nodes[e.b].to_string() << ','
                      << e.weight << '\n';
        w.csv("edges_" + vname + ".csv", edges_csv.str());

        if (g.nodes.empty()) {
            w.csv("nodes_" + vname + ".csv",
                  "address,contributor,community,pagerank,closeness,eigenvector,betweenness,"
                  "kcore\n");
            w.json("stats_" + vname + ".json",
                   {{"variant", vname}, {"threshold", cfg_.threshold}, {"num_nodes", 0}});
            manifest["variant_" + vname] = {{"nodes", 0}, {"edges", 0}};
            continue;
        }

        NetworkStatsOptions sopts;
        sopts.path = {cfg_.apl_exact_max_nodes, cfg_.apl_sources, cfg_.seed};
        sopts.small_world.replicates = cfg_.rewire_replicates;
        sopts.small_world.seed = cfg_.seed;
        sopts.small_world.path = sopts.path;
        sopts.louvain_seed = cfg_.seed;
        NetworkStats stats = network_stats(g, sopts);

        WGraph wg = to_wgraph(g);
        Subgraph gc = giant_component(wg);
        CentralityOptions copts;
        copts.closeness_exact_max_nodes = cfg_.closeness_exact_max_nodes;
        copts.closeness_pivots = cfg_.closeness_pivots;
        copts.betweenness_exact_max_nodes = cfg_.betweenness_exact_max_nodes;
        copts.betweenness_pivots = cfg_.betweenness_pivots;
        copts.seed = cfg_.seed;
        CentralityTable cent = centralities(gc.graph, copts);
        std::vector<std::uint32_t> core_full = kcore(wg);
        CommunityAssignment comm = louvain_communities(gc.graph, 1.0, cfg_.seed);

        // node-aligned views for the table
        std::vector<std::uint32_t> gc_index(g.nodes.size(), UINT32_MAX);
        for (std::uint32_t i = 0; i < gc.to_original.size(); ++i)
            gc_index[gc.to_original[i]] = i;

        std::ostringstream nodes_csv;
        nodes_csv << "address,contributor,community,pagerank,closeness,eigenvector,betweenness,"
                     "kcore\n";
        for (std::uint32_t u = 0; u < g.nodes.size(); ++u) {
            nodes_csv << g.nodes[u].to_string() << ',' << (g.contributor[u] ? 1 : 0) << ',';
            std::uint32_t gi = gc_index[u];
            if (gi != UINT32_MAX)
                nodes_csv << comm.community[gi] << ',' << format_double(cent.pagerank[gi]) << ','
                          << format_double(cent.closeness[gi]) << ','
                          << format_double(cent.eigenvector[gi]) << ','
                          << format_double(cent.betweenness[gi]);
            else
                nodes_csv << ",,,,";
            nodes_csv << ',' << core_full[u] << '\n';
        }
        w.csv("nodes_" + vname + ".csv", nodes_csv.str());

        std::vector<bool> gc_contributor(gc.graph.node_count());
        for (std::uint32_t i = 0; i < gc.to_original.size(); ++i)
            gc_contributor[i] = g.contributor[gc.to_original[i]];
        ConcentrationReport conc =
            concentration(comm.community, gc_contributor, cfg_.bootstrap_replicates, cfg_.seed);

        auto group_stats = [&](auto values, bool geometric) {
            std::vector<double> c, nc;
            for (std::uint32_t i = 0; i < gc.graph.node_count(); ++i)
                (gc_contributor[i] ? c : nc).push_back(static_cast<double>(values[i]));
            GroupSummary gs_c = geometric ? summarize_geometric(c) : summarize_mean(c);
            GroupSummary gs_n = geometric ? summarize_geometric(nc) : summarize_mean(nc);
            auto to_json = [](const GroupSummary& s) {
                return nlohmann::json{
                    {"mean", s.mean}, {"ci95_half_width", s.ci95_half_width}, {"n", s.n}};
            };
            return nlohmann::json{{"contributors", to_json(gs_c)},
                                  {"non_contributors", to_json(gs_n)}};
        };

        nlohmann::json conc_json{
            {"share_communities_with_contributor", conc.share_with_contributor},
            {"observed_chi2", conc.observed_chi2},
            {"bootstrap_replicates", conc.bootstrap_replicates}};
        if (conc.hhi_contributors) {
            conc_json["hhi_contributors"] = *conc.hhi_contributors;
            conc_json["hhi_contributors_band"] = hhi_band(*conc.hhi_contributors);
        }
        if (conc.hhi_noncontributors) {
            conc_json["hhi_noncontributors"] = *conc.hhi_noncontributors;
            conc_json["hhi_noncontributors_band"] = hhi_band(*conc.hhi_noncontributors);
        }
        if (conc.chi2_p) conc_json["chi2_p"] = *conc.chi2_p;
        if (!conc.notice.empty()) conc_json["notice"] = conc.notice;

        w.json("stats_" + vname + ".json",
               {{"stats", stats.to_json()},
                {"concentration", std::move(conc_json)},
                {"centrality_summary",
                 {{"pagerank", group_stats(cent.pagerank, false)},
                  {"closeness", group_stats(cent.closeness, false)},
                  {"eigenvector", group_stats(cent.eigenvector, false)},
                  {"betweenness", group_stats(cent.betweenness, false)},
                  {"kcore_geometric", group_stats(cent.kcore, true)}}}});
        manifest["variant_" + vname] = {{"nodes", g.nodes.size()}, {"edges", g.edges.size()}};
    }

    // contributors network on the full ingested relation, pre-cleaning
    require_artifact("network", ingest_dir / "contributions.jsonl", "ingest");
    DatasetBundle raw = load_bundle(BundlePaths::in_dir(ingest_dir));
    ContributorsNetwork cn = contributors_network(raw.contributions);
    std::ostringstream comp_csv;
    comp_csv << "component_size,count\n";
    for (const auto& [size, count] : cn.component_size_histogram)
        comp_csv << size << ',' << count << '\n';
    w.csv("contributors_components.csv", comp_csv.str());
    std::ostringstream proj_csv;
    proj_csv << "space_a,space_b,shared_contributors\n";
    for (const auto& e : cn.space_projection)
        proj_csv << e.a << ',' << e.b << ',' << e.shared_contributors << '\n';
    w.csv("contributors_projection.csv", proj_csv.str());
    manifest["contributors_network"] = {{"spaces", cn.spaces.size()},
                                        {"users", cn.users.size()},
                                        {"projection_edges", cn.space_projection.size()}};

    w.json("manifest.json", std::move(manifest));
    w.commit();
}

void Pipeline::stage_validate() {
    fs::path clean_dir = stage_dir("clean");
    require_artifact("validate", clean_dir / "proposals.jsonl", "clean");
    DatasetBundle bundle = load_bundle(BundlePaths::in_dir(clean_dir));
    auto provider = make_provider();

    ValidationOutcome outcome = validate(bundle.votes, bundle.proposals, *provider);

    std::set<std::string> validated_spaces(outcome.fully_validated_spaces.begin(),
                                           outcome.fully_validated_spaces.end());
    std::set<std::string> unsupported(outcome.unsupported_proposals.begin(),
                                      outcome.unsupported_proposals.end());

    DatasetBundle validated;
    for (const auto& s : bundle.spaces)
        if (validated_spaces.contains(s.id)) validated.spaces.push_back(s);
    std::set<std::string> kept_proposals;
    for (const auto& p : bundle.proposals)
        if (validated_spaces.contains(p.space) && !unsupported.contains(p.id)) {
            kept_proposals.insert(p.id);
            validated.proposals.push_back(p);
        }
    for (const auto& v : bundle.votes)
        if (kept_proposals.contains(v.proposal)) validated.votes.push_back(v);
    for (const auto& c : bundle.contributions)
        if (validated_spaces.contains(c.space)) validated.contributions.push_back(c);

    StageWriter w(stage_dir("validate"), meta_);
    save_bundle(validated, BundlePaths::in_dir(w.dir()), meta_jsonl_line(meta_));
    w.json("validation_report.json", outcome.to_json());
    std::ostringstream table_csv;
    table_csv << "space,token,error_class,count\n";
    for (const auto& r : outcome.table)
        table_csv << r.space << ',' << r.token << ',' << r.error_class << ',' << r.count << '\n';
    w.csv("mismatch_table.csv", table_csv.str());
    w.json("manifest.json",
           {{"stage", "validate"},
            {"votes_checked", outcome.votes.size()},
            {"consistent", outcome.count(VoteValidationStatus::Consistent)},
            {"corrected", outcome.count(VoteValidationStatus::Corrected)},
            {"mismatch", outcome.count(VoteValidationStatus::Mismatch)},
            {"indeterminate", outcome.count(VoteValidationStatus::Indeterminate)},
            {"validated_spaces", validated.spaces.size()},
            {"validated_proposals", validated.proposals.size()},
            {"validated_votes", validated.votes.size()}});
    w.commit();
}

void Pipeline::stage_shifts() {
    fs::path val_dir = stage_dir("validate");
    require_artifact("shifts", val_dir / "proposals.jsonl", "validate");
    DatasetBundle bundle = load_bundle(BundlePaths::in_dir(val_dir));
    auto provider = make_provider();
    ContributionIndex contributions(bundle.contributions);
    auto by_proposal = bundle.votes_by_proposal();

    std::vector<const Proposal*> ordered;
    for (const auto& p : bundle.proposals) ordered.push_back(&p);
    std::sort(ordered.begin(), ordered.end(),
              [](const Proposal* a, const Proposal* b) { return a->id < b->id; });

    std::vector<ShiftSeries> series;
    series.reserve(ordered.size());
    std::string series_lines;
    for (const Proposal* p : ordered) {
        std::vector<Vote> votes;
        if (auto it = by_proposal.find(p->id); it != by_proposal.end())
            for (const Vote* v : it->second) votes.push_back(*v);
        series.push_back(detect_shifts(*p, votes, *provider, cfg_.lookback_days, &contributions));
        series_lines += series.back().to_json().dump();
        series_lines += '\n';
    }

    auto hist = aggregate_shifts(series, cfg_.lookback_days);
    ShiftSummary summary = summarize_shifts(series);
    std::uint64_t shifted_with_contributor = 0;
    for (const auto& s : series)
        if (s.n_shifts > 0 && s.contributor_voted) ++shifted_with_contributor;

    StageWriter w(stage_dir("shifts"), meta_);
    w.jsonl("shift_series.jsonl", series_lines);
    std::ostringstream hist_csv;
    hist_csv << "day_offset,shift_count\n";
    for (std::uint32_t t = 0; t < hist.size(); ++t) hist_csv << t << ',' << hist[t] << '\n';
    w.csv("shift_histogram.csv", hist_csv.str());
    w.json("shift_summary.json",
           {{"histogram", hist},
            {"n_proposals", summary.n_proposals},
            {"proposals_with_shift", summary.proposals_with_shift},
            {"median_shifts", summary.median_shifts},
            {"std_shifts", summary.std_shifts},
            {"max_shifts", summary.max_shifts},
            {"shifted_proposals_with_contributor_vote", shifted_with_contributor}});
    w.json("manifest.json", {{"stage", "shifts"}, {"series", series.size()}});
    w.commit();
}

void Pipeline::stage_report() {
    require_artifact("report", stage_dir("ingest") / "votes.jsonl", "ingest");
    require_artifact("report", stage_dir("metrics") / "metrics_summary.json", "metrics");
    require_artifact("report", stage_dir("validate") / "validation_report.json", "validate");
    require_artifact("report", stage_dir("shifts") / "shift_summary.json", "shifts");
    for (const auto& v : cfg_.variants)
        require_artifact("report", stage_dir("network") / ("stats_" + v + ".json"), "network");

    StageWriter w(stage_dir("report"), meta_);

    // involvement ranking and self-decision ranking
    nlohmann::json metrics_summary =
        nlohmann::json::parse(read_file(stage_dir("metrics") / "metrics_summary.json"));
    struct Row {
        std::string space;
        double involvement;
        double delta;
    };
    std::vector<Row> rows;
    for (const auto& r : metrics_summary.at("rows"))
        rows.push_back({r.at("space").get<std::string>(), r.at("involvement_mean").get<double>(),
                        r.at("self_decisions").get<double>()});

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.involvement != b.involvement ? a.involvement > b.involvement
                                              : a.space < b.space;
    });
    std::ostringstream fig2;
    fig2 << "rank,space,involvement_mean\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
        fig2 << i + 1 << ',' << rows[i].space << ',' << format_double(rows[i].involvement) << '\n';
    w.csv("fig2_involvement_ranking.csv", fig2.str());

    std::vector<Row> decided;
    for (const auto& r : rows)
        if (r.delta > cfg_.self_decision_display_threshold) decided.push_back(r);
    std::stable_sort(decided.begin(), decided.end(), [](const Row& a, const Row& b) {
        return a.delta != b.delta ? a.delta > b.delta : a.space < b.space;
    });
    std::ostringstream fig3;
    fig3 << "rank,space,self_decisions\n";
    for (std::size_t i = 0; i < decided.size(); ++i)
        fig3 << i + 1 << ',' << decided[i].space << ',' << format_double(decided[i].delta) << '\n';
    w.csv("fig3_self_decisions.csv", fig3.str());

    // network stats table and HHI/donut data
    nlohmann::json stats_all = nlohmann::json::array();
    std::ostringstream fig4;
    fig4 << "variant,hhi_contributors,hhi_band,hhi_noncontributors,"
            "share_communities_with_contributor,chi2_p\n";
    for (const auto& vname : cfg_.variants) {
        nlohmann::json sj =
            nlohmann::json::parse(read_file(stage_dir("network") / ("stats_" + vname + ".json")));
        sj.erase("_meta");
        stats_all.push_back(sj);
        if (!sj.contains("concentration")) continue;
        const auto& c = sj["concentration"];
        fig4 << vname << ',';
        if (c.contains("hhi_contributors"))
            fig4 << format_double(c["hhi_contributors"].get<double>()) << ','
                 << c["hhi_contributors_band"].get<std::string>() << ',';
        else
            fig4 << ",,";
        if (c.contains("hhi_noncontributors"))
            fig4 << format_double(c["hhi_noncontributors"].get<double>());
        fig4 << ',' << format_double(c["share_communities_with_contributor"].get<double>()) << ',';
        if (c.contains("chi2_p")) fig4 << format_double(c["chi2_p"].get<double>());
        fig4 << '\n';
    }
    w.json("table_network_stats.json", {{"networks", std::move(stats_all)}});
    w.csv("fig4_hhi.csv", fig4.str());

    // shift histogram
    nlohmann::json shift_summary =
        nlohmann::json::parse(read_file(stage_dir("shifts") / "shift_summary.json"));
    std::ostringstream fig6;
    fig6 << "day_offset,shift_count\n";
    const auto& hist = shift_summary.at("histogram");
    for (std::size_t t = 0; t < hist.size(); ++t)
        fig6 << t << ',' << hist[t].get<std::uint64_t>() << '\n';
    w.csv("fig6_shift_histogram.csv", fig6.str());

    // validation mismatch table
    nlohmann::json validation =
        nlohmann::json::parse(read_file(stage_dir("validate") / "validation_report.json"));
    std::ostringstream mismatches;
    mismatches << "space,token,error_class,count\n";
    for (const auto& r : validation.at("mismatch_table"))
        mismatches << r.at("space").get<std::string>() << ','
                   << r.at("token").get<std::string>() << ','
                   << r.at("error_class").get<std::string>() << ','
                   << r.at("count").get<std::uint64_t>() << '\n';
    w.csv("table_mismatches.csv", mismatches.str());

    // monthly activity series: proposals bucketed by the
    // month of their first vote, with mean votes per proposal
    DatasetBundle raw = load_bundle(BundlePaths::in_dir(stage_dir("ingest")));
    std::unordered_map<std::string, std::pair<std::int64_t, std::uint64_t>> first_and_count;
    for (const auto& v : raw.votes) {
        auto [it, inserted] = first_and_count.emplace(v.proposal,
                                                      std::make_pair(v.timestamp, std::uint64_t{1}));
        if (!inserted) {
            it->second.first = std::min(it->second.first, v.timestamp);
            ++it->second.second;
        }
    }
    std::map<YearMonth, std::pair<std::uint64_t, std::uint64_t>> monthly;  // proposals, votes
    for (const auto& [pid, fc] : first_and_count) {
        auto& slot = monthly[year_month_utc(fc.first)];
        ++slot.first;
        slot.second += fc.second;
    }
    std::ostringstream figa1;
    figa1 << "month,n_proposals,avg_votes_per_proposal\n";
    for (const auto& [ym, pv] : monthly)
        figa1 << ym.str() << ',' << pv.first << ','
              << format_double(static_cast<double>(pv.second) / static_cast<double>(pv.first))
              << '\n';
    w.csv("figA1_monthly_activity.csv", figa1.str());

    w.json("manifest.json", {{"stage", "report"}});
    w.commit();
}

}  // namespace daogov
