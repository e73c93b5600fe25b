#include <algorithm>
#include <random>

#include "doctest.h"
#include "model/types.hpp"
#include "util/errors.hpp"

using namespace daogov;

namespace {

Address addr(unsigned n) {
    Address a;
    a.bytes[18] = static_cast<std::uint8_t>(n >> 8);
    a.bytes[19] = static_cast<std::uint8_t>(n & 0xff);
    return a;
}

Vote single_vote(unsigned user, std::uint32_t option, double weight) {
    Vote v;
    v.user = addr(user);
    v.proposal = "p";
    v.choice = VoteChoice(option);
    v.reported_weight = weight;
    return v;
}

// Independent oracle: per-option totals by direct summation over all votes.
std::vector<double> sum_per_option_oracle(const std::vector<Vote>& votes,
                                          std::uint32_t n_options) {
    std::vector<double> totals(n_options, 0.0);
    for (const auto& v : votes)
        for (std::uint32_t o = 0; o < n_options; ++o)
            totals[o] += v.reported_weight * v.choice.mass_on(o);
    return totals;
}

}  // namespace

TEST_CASE("address canonical form") {
    Address a = Address::parse("0xAbCdEf0102030405060708090a0B0c0D0e0F1011");
    CHECK(a.to_string() == "0xabcdef0102030405060708090a0b0c0d0e0f1011");
    CHECK(Address::parse(a.to_string()) == a);
    CHECK_THROWS_AS(Address::parse("0x123"), ParseError);
    CHECK_THROWS_AS(Address::parse("zz" + a.to_string().substr(2)), ParseError);
}

TEST_CASE("classify_vote definitional cases") {
    std::vector<Contribution> contributions;
    Contribution c;
    c.user = addr(1);
    c.space = "space-a";
    c.roles.add(Role::Owner);
    contributions.push_back(c);
    ContributionIndex idx(contributions);

    Vote v = single_vote(1, 0, 1.0);
    CHECK(classify_vote(v, idx, "space-a") == VoteClass::SameSpace);
    CHECK(classify_vote(v, idx, "space-b") == VoteClass::OtherSpace);
    Vote stranger = single_vote(2, 0, 1.0);
    CHECK(classify_vote(stranger, idx, "space-a") == VoteClass::NonContributor);
}

TEST_CASE("classify_vote partition property") {
    std::mt19937_64 rng(7);
    std::vector<Contribution> contributions;
    for (unsigned u = 0; u < 10; ++u) {
        if (rng() % 2) continue;
        Contribution c;
        c.user = addr(u);
        c.space = "s" + std::to_string(rng() % 3);
        c.roles.add(Role::Developer);
        contributions.push_back(c);
    }
    ContributionIndex idx(contributions);
    for (unsigned u = 0; u < 10; ++u) {
        Vote v = single_vote(u, 0, 1.0);
        VoteClass cls = classify_vote(v, idx, "s0");
        bool is_contrib = idx.is_contributor(addr(u));
        CHECK((cls != VoteClass::NonContributor) == is_contrib);
    }
}

TEST_CASE("rank_outcome two-option aggregation") {
    std::vector<Vote> votes{single_vote(1, 0, 3.0), single_vote(2, 1, 5.0)};
    Outcome o = rank_outcome(votes, 2);
    CHECK(o.ranked_options == std::vector<std::uint32_t>{1, 0});
    CHECK(o.weights[0] == doctest::Approx(5.0));
    CHECK(o.weights[1] == doctest::Approx(3.0));
    CHECK_FALSE(o.tie_at_top);
}

TEST_CASE("rank_outcome symmetric tie breaks by index") {
    std::vector<Vote> votes{single_vote(1, 0, 2.0), single_vote(2, 1, 2.0)};
    Outcome o = rank_outcome(votes, 2);
    CHECK(o.ranked_options == std::vector<std::uint32_t>{0, 1});
    CHECK(o.tie_at_top);
}

TEST_CASE("rank_outcome out-of-range choice names the vote") {
    std::vector<Vote> votes{single_vote(1, 3, 1.0)};
    CHECK_THROWS_WITH_AS(rank_outcome(votes, 2),
                         doctest::Contains(addr(1).to_string().c_str()), ValidationError);
}

TEST_CASE("rank_outcome matches summation oracle with magnitudes") {
    // 5 voters, 3 options, mixed single and magnitude choices
    std::vector<Vote> votes;
    votes.push_back(single_vote(1, 0, 2.5));
    votes.push_back(single_vote(2, 2, 4.0));
    votes.push_back(single_vote(3, 1, 1.5));
    Vote m1 = single_vote(4, 0, 6.0);
    m1.choice = VoteChoice(std::vector<double>{0.5, 0.25, 0.25});
    votes.push_back(m1);
    Vote m2 = single_vote(5, 0, 2.0);
    m2.choice = VoteChoice(std::vector<double>{0.0, 1.0, 0.0});
    votes.push_back(m2);

    auto totals = sum_per_option_oracle(votes, 3);
    Outcome o = rank_outcome(votes, 3);
    // ranked weights must be the oracle totals sorted descending
    std::vector<double> sorted = totals;
    std::sort(sorted.rbegin(), sorted.rend());
    REQUIRE(o.weights.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(o.weights[i] == doctest::Approx(sorted[i]).epsilon(1e-12));
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(o.weights[i] == doctest::Approx(totals[o.ranked_options[i]]).epsilon(1e-12));
}

TEST_CASE("rank_outcome permutation invariance and weight conservation") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> wdist(0.0, 10.0);
    std::vector<Vote> votes;
    for (unsigned u = 0; u < 25; ++u) votes.push_back(single_vote(u, rng() % 4, wdist(rng)));

    Outcome base = rank_outcome(votes, 4);
    double in_sum = 0.0;
    for (const auto& v : votes) in_sum += v.reported_weight;
    double out_sum = 0.0;
    for (double w : base.weights) out_sum += w;
    CHECK(out_sum == doctest::Approx(in_sum).epsilon(1e-9));

    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(votes.begin(), votes.end(), rng);
        Outcome shuffled = rank_outcome(votes, 4);
        CHECK(shuffled.ranked_options == base.ranked_options);
        CHECK(shuffled.tie_at_top == base.tie_at_top);
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(shuffled.weights[i] == doctest::Approx(base.weights[i]).epsilon(1e-12));
    }
}

TEST_CASE("outcome weights non-increasing over all options") {
    std::vector<Vote> votes{single_vote(1, 2, 1.0)};
    Outcome o = rank_outcome(votes, 4);
    REQUIRE(o.ranked_options.size() == 4);
    for (std::size_t i = 1; i < o.weights.size(); ++i) CHECK(o.weights[i - 1] >= o.weights[i]);
    // every option appears exactly once
    std::vector<std::uint32_t> sorted = o.ranked_options;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("magnitude vector invariants enforced") {
    Vote v = single_vote(1, 0, 1.0);
    v.choice = VoteChoice(std::vector<double>{0.6, 0.6});
    CHECK_THROWS_AS(v.choice.validate(2, "v"), ValidationError);  // sums to 1.2
    v.choice = VoteChoice(std::vector<double>{0.5, 0.5});
    CHECK_NOTHROW(v.choice.validate(2, "v"));
    v.choice = VoteChoice(std::vector<double>{1.0});
    CHECK_THROWS_AS(v.choice.validate(2, "v"), ValidationError);  // wrong arity
}
