#include "doctest.h"
#include "helpers.hpp"
#include "shift/shift.hpp"
#include "util/errors.hpp"

using namespace daogov;
using namespace daogov::test;

namespace {

const Address kToken = addr(0xD000);

Proposal replay_proposal(std::uint64_t block_height = 1000000) {
    Proposal p = make_proposal("rp", "space-s");
    StrategySpec st;
    st.kind = StrategyKind::Erc20BalanceOf;
    st.token_address = kToken;
    st.decimals = 0;
    p.strategies = {st};
    p.block_height = block_height;
    return p;
}

void set_bal(FixtureBalanceProvider& p, unsigned user, std::uint64_t from_block, u128 amount) {
    p.set_balance(addr(user), Asset::erc(kToken), from_block, amount);
}

}  // namespace

TEST_CASE("sample_block arithmetic") {
    CHECK(sample_block(1000000, 0) == 1000000);
    CHECK(sample_block(1000000, 1) == 994240);  // 86400 / 15 blocks per day
    CHECK(sample_block(1000000, 100) == 424000);
    // underflow: history shorter than the lookback
    CHECK_FALSE(sample_block(5760, 1).has_value());
    CHECK(sample_block(5761, 1) == 1);
}

TEST_CASE("constant balances produce zero shifts") {
    FixtureBalanceProvider provider;
    set_bal(provider, 1, 1, 10);
    set_bal(provider, 2, 1, 5);
    Proposal p = replay_proposal();
    std::vector<Vote> votes{make_vote(1, "rp", 0, 10.0), make_vote(2, "rp", 1, 5.0)};
    ShiftSeries s = detect_shifts(p, votes, provider, 100);
    CHECK(s.n_shifts == 0);
    CHECK(s.shift_days.empty());
    CHECK_FALSE(s.truncated);
    // every sampled day resolved to the same decision as the poll
    for (const auto& d : s.decision_by_day) {
        REQUIRE(d.has_value());
        CHECK(*d == 0);
    }
}

TEST_CASE("planted acquisition three days before the poll yields shift_days [3]") {
    FixtureBalanceProvider provider;
    // voter 1 backs option 0 with 10 all along; voter 2 backs option 1 and
    // acquires a decisive 20 exactly at the block sampled 3 days out
    Proposal p = replay_proposal();
    std::uint64_t acquisition_block = *sample_block(p.block_height, 3);
    set_bal(provider, 1, 1, 10);
    set_bal(provider, 2, 1, 5);
    provider.set_balance(addr(2), Asset::erc(kToken), acquisition_block, 20);

    std::vector<Vote> votes{make_vote(1, "rp", 0, 10.0), make_vote(2, "rp", 1, 20.0)};
    ShiftSeries s = detect_shifts(p, votes, provider, 100);
    CHECK(s.shift_days == std::vector<std::uint32_t>{3});
    CHECK(s.n_shifts == 1);
    // hypothetical decision at the poll equals the actual outcome
    Outcome actual = rank_outcome(votes, 2);
    REQUIRE(s.decision_by_day[0].has_value());
    CHECK(*s.decision_by_day[0] == actual.decision());
}

TEST_CASE("oscillating whale matches a day-by-day oracle recomputation") {
    FixtureBalanceProvider provider;
    Proposal p = replay_proposal();
    set_bal(provider, 1, 1, 10);
    // whale flips between 5 and 25 every day
    for (std::uint32_t t = 0; t <= 100; ++t) {
        std::uint64_t block = *sample_block(p.block_height, t);
        provider.set_balance(addr(2), Asset::erc(kToken), block, t % 2 == 0 ? 25 : 5);
    }
    std::vector<Vote> votes{make_vote(1, "rp", 0, 10.0), make_vote(2, "rp", 1, 25.0)};
    ShiftSeries s = detect_shifts(p, votes, provider, 100);

    // independent replay: compute each day's winner directly
    std::vector<std::uint32_t> expected_days;
    std::uint32_t prev = UINT32_MAX;
    for (int t = 100; t >= 0; --t) {
        double w2 = t % 2 == 0 ? 25.0 : 5.0;
        std::uint32_t winner = w2 > 10.0 ? 1u : 0u;
        if (prev != UINT32_MAX && winner != prev) expected_days.push_back(t);
        prev = winner;
    }
    std::sort(expected_days.begin(), expected_days.end());
    CHECK(s.shift_days == expected_days);
    CHECK(s.n_shifts == 100);  // flips every single day
}

TEST_CASE("determinism: identical provider state gives identical series") {
    FixtureBalanceProvider provider;
    Proposal p = replay_proposal();
    set_bal(provider, 1, 1, 10);
    set_bal(provider, 2, 360000, 15);
    std::vector<Vote> votes{make_vote(1, "rp", 0, 10.0), make_vote(2, "rp", 1, 15.0)};
    ShiftSeries a = detect_shifts(p, votes, provider, 100);
    ShiftSeries b = detect_shifts(p, votes, provider, 100);
    CHECK(a.shift_days == b.shift_days);
    CHECK(a.decision_by_day == b.decision_by_day);
}

TEST_CASE("zero-power voters never change the series") {
    FixtureBalanceProvider provider;
    Proposal p = replay_proposal();
    set_bal(provider, 1, 1, 10);
    set_bal(provider, 2, 1, 5);
    std::vector<Vote> base{make_vote(1, "rp", 0, 10.0), make_vote(2, "rp", 1, 5.0)};
    ShiftSeries without = detect_shifts(p, base, provider, 50);
    std::vector<Vote> with_ghost = base;
    with_ghost.push_back(make_vote(3, "rp", 1, 0.0));  // no balance anywhere
    ShiftSeries with = detect_shifts(p, with_ghost, provider, 50);
    CHECK(without.decision_by_day == with.decision_by_day);
    CHECK(without.shift_days == with.shift_days);
}

TEST_CASE("short history truncates the series instead of failing") {
    FixtureBalanceProvider provider;
    Proposal p = replay_proposal(5760 * 10 + 1);  // only 10 full days of history
    set_bal(provider, 1, 1, 3);
    std::vector<Vote> votes{make_vote(1, "rp", 0, 3.0)};
    ShiftSeries s = detect_shifts(p, votes, provider, 100);
    CHECK(s.truncated);
    CHECK(s.decision_by_day[10].has_value());
    CHECK_FALSE(s.decision_by_day[11].has_value());
    CHECK(s.n_shifts == 0);
}

TEST_CASE("provider gaps break the comparison chain conservatively") {
    FixtureBalanceProvider provider;
    Proposal p = replay_proposal();
    set_bal(provider, 1, 1, 10);
    set_bal(provider, 2, 1, 5);
    // whale acquires decisive balance between day 6 and day 5, but day 5 and
    // day 6 are unreadable: the flip never pairs two determinate days
    std::uint64_t day5 = *sample_block(p.block_height, 5);
    std::uint64_t day6 = *sample_block(p.block_height, 6);
    provider.set_balance(addr(2), Asset::erc(kToken), day5, 20);
    provider.set_error(addr(2), Asset::erc(kToken), day6);
    provider.set_error(addr(2), Asset::erc(kToken), day5);
    // restore readability from day 4 onwards
    provider.set_balance(addr(2), Asset::erc(kToken), *sample_block(p.block_height, 4), 20);

    std::vector<Vote> votes{make_vote(1, "rp", 0, 10.0), make_vote(2, "rp", 1, 20.0)};
    ShiftSeries s = detect_shifts(p, votes, provider, 100);
    CHECK(s.indeterminate_days == 2);
    // the 7-vs-4 transition is not adjacent, so no shift is recorded there
    CHECK(s.shift_days == std::vector<std::uint32_t>{});
}

TEST_CASE("aggregation: empty input, single event, and 20-series summation oracle") {
    CHECK(aggregate_shifts({}, 100) == std::vector<std::uint64_t>(100, 0));

    ShiftSeries one;
    one.shift_days = {3};
    one.n_shifts = 1;
    std::vector<ShiftSeries> single{one};
    auto hist = aggregate_shifts(single, 100);
    CHECK(hist[3] == 1);
    std::uint64_t total = 0;
    for (auto c : hist) total += c;
    CHECK(total == 1);

    // 20 synthetic series vs elementwise-sum oracle
    std::vector<ShiftSeries> many;
    std::vector<std::uint64_t> oracle(50, 0);
    for (unsigned i = 0; i < 20; ++i) {
        ShiftSeries s;
        for (std::uint32_t d = i % 5; d < 50; d += (i % 7) + 3) {
            s.shift_days.push_back(d);
            ++oracle[d];
        }
        s.n_shifts = static_cast<std::uint32_t>(s.shift_days.size());
        many.push_back(s);
    }
    CHECK(aggregate_shifts(many, 50) == oracle);

    ShiftSummary sum = summarize_shifts(many);
    CHECK(sum.n_proposals == 20);
    CHECK(sum.max_shifts > 0);
}

TEST_CASE("revotes collapse to the latest choice before replay") {
    FixtureBalanceProvider provider;
    Proposal p = replay_proposal();
    set_bal(provider, 1, 1, 10);
    set_bal(provider, 2, 1, 4);
    std::vector<Vote> votes{make_vote(1, "rp", 0, 10.0, 100),
                            make_vote(1, "rp", 1, 10.0, 200),  // final choice: option 1
                            make_vote(2, "rp", 0, 4.0, 150)};
    ShiftSeries s = detect_shifts(p, votes, provider, 10);
    // option 1 wins with 10 vs 4 on every day
    for (const auto& d : s.decision_by_day) {
        REQUIRE(d.has_value());
        CHECK(*d == 1);
    }
}
