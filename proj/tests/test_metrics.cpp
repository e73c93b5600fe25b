#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "metrics/metrics.hpp"
#include "util/errors.hpp"

using namespace daogov;
using namespace daogov::test;

namespace {

// Brute-force per-proposal oracle, written against the definitions directly:
// normalize, bucket by (option, class), evaluate the decision predicates.
struct OracleProposal {
    double contributor_share = 0.0;
    bool self_decided = false;
    bool other_decided = false;
    bool eligible = false;  // non-degenerate, >= 2 options, no top tie
};

OracleProposal oracle_eval(const std::vector<Vote>& votes,
                           const std::vector<VoteClass>& classes, std::uint32_t n_options) {
    OracleProposal o;
    double total = 0.0;
    for (const auto& v : votes) total += v.reported_weight;
    if (total <= 0.0) return o;

    for (std::size_t i = 0; i < votes.size(); ++i)
        if (classes[i] != VoteClass::NonContributor)
            o.contributor_share += votes[i].reported_weight / total;

    std::vector<double> per_option(n_options, 0.0);
    for (const auto& v : votes)
        for (std::uint32_t opt = 0; opt < n_options; ++opt)
            per_option[opt] += v.reported_weight * v.choice.mass_on(opt);
    std::uint32_t winner = 0, second = 1;
    for (std::uint32_t opt = 1; opt < n_options; ++opt)
        if (per_option[opt] > per_option[winner]) winner = opt;
    second = winner == 0 ? 1 : 0;
    for (std::uint32_t opt = 0; opt < n_options; ++opt) {
        if (opt == winner) continue;
        if (per_option[opt] > per_option[second]) second = opt;
    }
    if (n_options < 2) return o;
    double scale = std::max(std::abs(per_option[winner]), std::abs(per_option[second]));
    if (std::abs(per_option[winner] - per_option[second]) <= 1e-12 * scale) return o;
    o.eligible = true;

    auto mass = [&](VoteClass cls, std::uint32_t opt, bool invert) {
        double m = 0.0;
        for (std::size_t i = 0; i < votes.size(); ++i)
            if ((classes[i] == cls) != invert)
                m += (votes[i].reported_weight / total) * votes[i].choice.mass_on(opt);
        return m;
    };
    double w_d = mass(VoteClass::SameSpace, winner, false);
    double w_cv = mass(VoteClass::SameSpace, winner, true);
    double w_o2 = mass(VoteClass::SameSpace, second, false) +
                  mass(VoteClass::SameSpace, second, true);
    o.self_decided = w_d > w_cv && w_d > w_o2;

    double w_do = mass(VoteClass::OtherSpace, winner, false);
    double w_co = mass(VoteClass::OtherSpace, winner, true);
    double w_ss2 = mass(VoteClass::SameSpace, second, false);
    o.other_decided = w_do > w_co && w_do > w_ss2 && w_ss2 > 0.0;
    return o;
}

// Randomized proposal with planted contributor classes.
struct Generated {
    Proposal proposal;
    std::vector<Vote> votes;
    std::vector<Contribution> contributions;
};

Generated generate(std::mt19937_64& rng, const std::string& pid, unsigned max_voters = 20) {
    Generated g;
    std::uniform_int_distribution<unsigned> voters_dist(1, max_voters);
    std::uniform_int_distribution<std::uint32_t> options_dist(2, 4);
    std::uniform_real_distribution<double> weight_dist(0.0, 100.0);
    std::uint32_t n_options = options_dist(rng);
    g.proposal = make_proposal(pid, "space-x", n_options);
    unsigned n = voters_dist(rng);
    for (unsigned u = 0; u < n; ++u) {
        unsigned uid = 1000 * static_cast<unsigned>(std::hash<std::string>{}(pid) % 1000) + u;
        Vote v = make_vote(uid, pid, rng() % n_options, weight_dist(rng));
        g.votes.push_back(v);
        switch (rng() % 3) {
            case 0: g.contributions.push_back(make_contribution(uid, "space-x")); break;
            case 1: g.contributions.push_back(make_contribution(uid, "space-y")); break;
            default: break;
        }
    }
    return g;
}

}  // namespace

TEST_CASE("normalization of the worked example weights") {
    std::vector<Vote> votes{make_vote(1, "p", 0, 1.0), make_vote(2, "p", 0, 4.0),
                            make_vote(3, "p", 1, 3.0), make_vote(4, "p", 1, 2.0)};
    NormalizeResult r = normalize_proposal(votes);
    REQUIRE_FALSE(r.degenerate);
    REQUIRE(r.votes.size() == 4);
    CHECK(r.votes[0].w_tilde == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(r.votes[1].w_tilde == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(r.votes[2].w_tilde == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(r.votes[3].w_tilde == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("singleton normalizes to 1 and zero-total marks degenerate") {
    std::vector<Vote> one{make_vote(1, "p", 0, 7.0)};
    NormalizeResult r = normalize_proposal(one);
    CHECK(r.votes[0].w_tilde == doctest::Approx(1.0));

    std::vector<Vote> zero{make_vote(1, "p", 0, 0.0), make_vote(2, "p", 1, 0.0)};
    CHECK(normalize_proposal(zero).degenerate);
}

TEST_CASE("normalized weights sum to one on random proposals") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> weight_dist(0.001, 50.0);
    std::vector<Vote> votes;
    for (unsigned u = 0; u < 50; ++u) votes.push_back(make_vote(u, "p", 0, weight_dist(rng)));
    NormalizeResult r = normalize_proposal(votes);
    double sum = 0.0;
    for (const auto& v : r.votes) sum += v.w_tilde;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("contributor involvement on the worked example") {
    Proposal p = make_proposal("p", "space-a");
    std::vector<Vote> votes{make_vote(1, "p", 0, 1.0), make_vote(2, "p", 0, 4.0),
                            make_vote(3, "p", 1, 3.0), make_vote(4, "p", 1, 2.0)};
    std::vector<Contribution> contribs{make_contribution(1, "space-a"),
                                       make_contribution(2, "space-b")};
    ContributionIndex idx(contribs);
    std::vector<NormalizedProposal> prepared{prepare_proposal(p, votes, idx)};
    SpaceInvolvement inv = contributor_involvement("space-a", prepared);
    CHECK(inv.mean == doctest::Approx(0.5).epsilon(1e-12));  // .1 + .4
    CHECK(inv.n_proposals == 1);
    CHECK_FALSE(inv.std_dev.has_value());  // single proposal
}

TEST_CASE("involvement is 1 when every voter contributes") {
    Proposal p = make_proposal("p", "space-a");
    std::vector<Vote> votes{make_vote(1, "p", 0, 2.0), make_vote(2, "p", 1, 5.0)};
    std::vector<Contribution> contribs{make_contribution(1, "space-a"),
                                       make_contribution(2, "space-z")};
    ContributionIndex idx(contribs);
    std::vector<NormalizedProposal> prepared{prepare_proposal(p, votes, idx)};
    CHECK(contributor_involvement("space-a", prepared).mean == doctest::Approx(1.0));
}

TEST_CASE("involvement raises on empty domain") {
    CHECK_THROWS_AS(contributor_involvement("nowhere", {}), ValidationError);
}

TEST_CASE("self-decision boundary: exactly half of the winning weight is not decisive") {
    Proposal p = make_proposal("p", "space-a");
    // winner option 0 carries 4.0: contributor u1 holds 2.0, outsider u2 2.0
    std::vector<Vote> votes{make_vote(1, "p", 0, 2.0), make_vote(2, "p", 0, 2.0),
                            make_vote(3, "p", 1, 1.0)};
    ContributionIndex idx(std::vector<Contribution>{make_contribution(1, "space-a")});
    std::vector<NormalizedProposal> prepared{prepare_proposal(p, votes, idx)};
    SelfDecisionScore score = self_decisions("space-a", prepared);
    CHECK(score.n_proposals == 1);
    CHECK(score.n_decided == 0);  // strict inequality in both conjuncts
    CHECK(score.delta == doctest::Approx(0.0));
}

TEST_CASE("sole same-space winner with empty runner-up is decisive") {
    Proposal p = make_proposal("p", "space-a");
    std::vector<Vote> votes{make_vote(1, "p", 0, 3.0)};
    ContributionIndex idx(std::vector<Contribution>{make_contribution(1, "space-a")});
    std::vector<NormalizedProposal> prepared{prepare_proposal(p, votes, idx)};
    SelfDecisionScore score = self_decisions("space-a", prepared);
    CHECK(score.n_decided == 1);  // 1 > 0 and 1 > 0
    CHECK(score.delta == doctest::Approx(1.0));
}

TEST_CASE("planted decisive self-votes give delta 0.4") {
    // 15 proposals, 6 with a dominant same-space contributor
    ContributionIndex idx(std::vector<Contribution>{make_contribution(1, "space-a")});
    std::vector<NormalizedProposal> prepared;
    for (int i = 0; i < 15; ++i) {
        Proposal p = make_proposal("p" + std::to_string(i), "space-a");
        std::vector<Vote> votes;
        if (i < 6) {
            votes.push_back(make_vote(1, p.id, 0, 10.0));  // contributor dominates winner
            votes.push_back(make_vote(2, p.id, 0, 1.0));
            votes.push_back(make_vote(3, p.id, 1, 2.0));
        } else {
            votes.push_back(make_vote(2, p.id, 0, 10.0));  // outsiders decide
            votes.push_back(make_vote(1, p.id, 1, 1.0));
        }
        prepared.push_back(prepare_proposal(p, votes, idx));
    }
    SelfDecisionScore score = self_decisions("space-a", prepared);
    CHECK(score.n_proposals == 15);
    CHECK(score.n_decided == 6);
    CHECK(score.delta == doctest::Approx(0.4));
}

TEST_CASE("ties at the top are excluded and reported") {
    Proposal p = make_proposal("p", "space-a");
    std::vector<Vote> votes{make_vote(1, "p", 0, 2.0), make_vote(2, "p", 1, 2.0)};
    ContributionIndex idx{};
    std::vector<NormalizedProposal> prepared{prepare_proposal(p, votes, idx)};
    SelfDecisionScore score = self_decisions("space-a", prepared);
    CHECK(score.n_proposals == 0);
    CHECK(score.n_excluded_ties == 1);
}

TEST_CASE("other-decision conjunctions") {
    ContributionIndex idx(std::vector<Contribution>{make_contribution(1, "space-a"),
                                                    make_contribution(2, "space-b")});
    // u2 (other-space) fully carries the winner, u1 (same-space) backs second
    Proposal p1 = make_proposal("p1", "space-a");
    std::vector<Vote> v1{make_vote(2, "p1", 0, 5.0), make_vote(1, "p1", 1, 2.0)};
    // same shape but nobody same-space on second: w_ss2 = 0 blocks the flag
    Proposal p2 = make_proposal("p2", "space-a");
    std::vector<Vote> v2{make_vote(2, "p2", 0, 5.0), make_vote(3, "p2", 1, 2.0)};
    std::vector<NormalizedProposal> prepared{prepare_proposal(p1, v1, idx),
                                             prepare_proposal(p2, v2, idx)};
    auto flags = other_decisions("space-a", prepared);
    REQUIRE(flags.size() == 2);
    CHECK(flags[0].flagged);
    CHECK_FALSE(flags[1].flagged);
}

TEST_CASE("randomized proposals match the brute-force oracle") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 60; ++round) {
        Generated g = generate(rng, "rp" + std::to_string(round));
        ContributionIndex idx(g.contributions);
        std::vector<VoteClass> classes;
        for (const auto& v : g.votes) classes.push_back(classify_vote(v, idx, g.proposal.space));
        OracleProposal expect = oracle_eval(g.votes, classes, g.proposal.n_options());

        std::vector<NormalizedProposal> prepared{prepare_proposal(g.proposal, g.votes, idx)};
        const NormalizedProposal& np = prepared[0];
        if (np.degenerate) {
            CHECK_FALSE(expect.eligible);
            continue;
        }
        double share = 0.0;
        for (const auto& v : np.votes)
            if (v.cls != VoteClass::NonContributor) share += v.w_tilde;
        CHECK(share == doctest::Approx(expect.contributor_share).epsilon(1e-12));

        SelfDecisionScore self = self_decisions(g.proposal.space, prepared);
        auto others = other_decisions(g.proposal.space, prepared);
        if (!expect.eligible) {
            CHECK(self.n_proposals == 0);
        } else {
            CHECK(self.n_proposals == 1);
            CHECK((self.n_decided == 1) == expect.self_decided);
            REQUIRE(others.size() == 1);
            CHECK(others[0].flagged == expect.other_decided);
        }
    }
}

TEST_CASE("scale invariance under weight rescaling") {
    std::mt19937_64 rng(77);
    Generated g = generate(rng, "scale");
    ContributionIndex idx(g.contributions);
    std::vector<NormalizedProposal> a{prepare_proposal(g.proposal, g.votes, idx)};
    std::vector<Vote> scaled = g.votes;
    for (auto& v : scaled) v.reported_weight *= 1e6;
    std::vector<NormalizedProposal> b{prepare_proposal(g.proposal, scaled, idx)};
    if (!a[0].degenerate) {
        SelfDecisionScore sa = self_decisions(g.proposal.space, a);
        SelfDecisionScore sb = self_decisions(g.proposal.space, b);
        CHECK(sa.n_decided == sb.n_decided);
        SpaceInvolvement ia = contributor_involvement(g.proposal.space, a);
        SpaceInvolvement ib = contributor_involvement(g.proposal.space, b);
        CHECK(ia.mean == doctest::Approx(ib.mean).epsilon(1e-12));
    }
}

TEST_CASE("winning-option mass splits exactly into decisive and complement parts") {
    std::mt19937_64 rng(123);
    for (int round = 0; round < 20; ++round) {
        Generated g = generate(rng, "split" + std::to_string(round));
        ContributionIndex idx(g.contributions);
        NormalizedProposal np = prepare_proposal(g.proposal, g.votes, idx);
        if (np.degenerate || np.outcome.tie_at_top) continue;
        std::uint32_t winner = np.outcome.decision();
        double w_d = 0, w_cv = 0, w_total = 0;
        for (const auto& v : np.votes) {
            double m = v.w_tilde * v.choice.mass_on(winner);
            w_total += m;
            if (v.cls == VoteClass::SameSpace)
                w_d += m;
            else
                w_cv += m;
        }
        // the winning option's normalized mass also equals its ranked weight
        // divided by the proposal total
        CHECK(w_d + w_cv == doctest::Approx(w_total).epsilon(1e-12));
        CHECK(w_total ==
              doctest::Approx(np.outcome.weights[0] / np.total_weight).epsilon(1e-9));
    }
}

TEST_CASE("delta is monotone non-decreasing when a counted proposal is added") {
    ContributionIndex idx(std::vector<Contribution>{make_contribution(1, "space-a")});
    std::vector<NormalizedProposal> prepared;
    auto decided_proposal = [&](const std::string& pid) {
        Proposal p = make_proposal(pid, "space-a");
        std::vector<Vote> votes{make_vote(1, pid, 0, 9.0), make_vote(2, pid, 1, 1.0)};
        return prepare_proposal(p, votes, idx);
    };
    auto undecided_proposal = [&](const std::string& pid) {
        Proposal p = make_proposal(pid, "space-a");
        std::vector<Vote> votes{make_vote(2, pid, 0, 9.0), make_vote(1, pid, 1, 1.0)};
        return prepare_proposal(p, votes, idx);
    };
    prepared.push_back(undecided_proposal("u0"));
    prepared.push_back(decided_proposal("d0"));
    prepared.push_back(undecided_proposal("u1"));
    double prev = self_decisions("space-a", prepared).delta;
    CHECK(prev >= 0.0);
    CHECK(prev <= 1.0);
    for (int i = 0; i < 5; ++i) {
        prepared.push_back(decided_proposal("d" + std::to_string(i + 1)));
        double cur = self_decisions("space-a", prepared).delta;
        CHECK(cur >= prev);
        CHECK(cur <= 1.0);
        prev = cur;
    }
}

TEST_CASE("partition identity: class masses sum to one") {
    std::mt19937_64 rng(99);
    Generated g = generate(rng, "partition");
    ContributionIndex idx(g.contributions);
    NormalizedProposal np = prepare_proposal(g.proposal, g.votes, idx);
    if (!np.degenerate) {
        double same = 0, other = 0, non = 0;
        for (const auto& v : np.votes) {
            if (v.cls == VoteClass::SameSpace) same += v.w_tilde;
            else if (v.cls == VoteClass::OtherSpace) other += v.w_tilde;
            else non += v.w_tilde;
        }
        CHECK(same + other + non == doctest::Approx(1.0).epsilon(1e-9));
    }
}
