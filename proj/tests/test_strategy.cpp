#include "doctest.h"
#include "helpers.hpp"
#include "strategy/power.hpp"
#include "strategy/validate.hpp"
#include "util/errors.hpp"

using namespace daogov;
using namespace daogov::test;

namespace {

const Address kTokenA = addr(0xA000);
const Address kTokenB = addr(0xB000);

StrategySpec erc20(const Address& token, std::optional<int> decimals = std::nullopt) {
    StrategySpec s;
    s.kind = StrategyKind::Erc20BalanceOf;
    s.token_address = token;
    s.decimals = decimals;
    return s;
}

StrategySpec eth_balance() {
    StrategySpec s;
    s.kind = StrategyKind::EthBalance;
    return s;
}

StrategySpec erc721(const Address& token) {
    StrategySpec s;
    s.kind = StrategyKind::Erc721;
    s.token_address = token;
    return s;
}

Proposal proposal_with(const std::string& id, std::vector<StrategySpec> strategies) {
    Proposal p = make_proposal(id, "space-v");
    p.strategies = std::move(strategies);
    p.block_height = 1000;
    return p;
}

}  // namespace

TEST_CASE("decimal conversion: raw 10,000,000 with decimals 6 is exactly 10") {
    FixtureBalanceProvider provider;
    provider.set_balance(addr(1), Asset::erc(kTokenA), 1, 10000000);
    std::vector<StrategySpec> strategies{erc20(kTokenA, 6)};
    double power = compute_power(addr(1), strategies, provider, 1000);
    CHECK(power == 10.0);  // exact, not approximate
}

TEST_CASE("homogeneity: scaling raw by 10^k and decimals by k is invariant") {
    for (int k = 0; k <= 18; ++k) {
        FixtureBalanceProvider provider;
        u128 raw = static_cast<u128>(10000000) * pow10_u128(k);
        provider.set_balance(addr(1), Asset::erc(kTokenA), 1, raw);
        std::vector<StrategySpec> strategies{erc20(kTokenA, 6 + k)};
        CHECK(compute_power(addr(1), strategies, provider, 1000) == 10.0);
    }
}

TEST_CASE("zero balances across strategies give zero power") {
    FixtureBalanceProvider provider;
    std::vector<StrategySpec> strategies{erc20(kTokenA, 18), eth_balance(), erc721(kTokenB)};
    CHECK(compute_power(addr(1), strategies, provider, 1000) == 0.0);
}

TEST_CASE("multi-strategy sum equals per-strategy oracle values") {
    FixtureBalanceProvider provider;
    provider.set_balance(addr(1), Asset::erc(kTokenA), 1, parse_u128("2500000000000000000"));
    provider.set_balance(addr(1), Asset::eth(), 1, parse_u128("1500000000000000000"));
    std::vector<StrategySpec> both{erc20(kTokenA, 18), eth_balance()};
    // independent per-strategy conversions: 2.5 and 1.5
    double a = compute_power(addr(1), std::vector<StrategySpec>{erc20(kTokenA, 18)}, provider, 1000);
    double b = compute_power(addr(1), std::vector<StrategySpec>{eth_balance()}, provider, 1000);
    CHECK(a == doctest::Approx(2.5));
    CHECK(b == doctest::Approx(1.5));
    CHECK(compute_power(addr(1), both, provider, 1000) == doctest::Approx(a + b));
}

TEST_CASE("erc20 decimals fall back from strategy to contract to zero") {
    FixtureBalanceProvider provider;
    provider.set_balance(addr(1), Asset::erc(kTokenA), 1, 5000);
    // no strategy decimals, no contract decimals -> raw value
    CHECK(compute_power(addr(1), std::vector<StrategySpec>{erc20(kTokenA)}, provider, 1000) ==
          5000.0);
    // contract decimals take over when the strategy has none
    provider.set_decimals(kTokenA, 3);
    CHECK(compute_power(addr(1), std::vector<StrategySpec>{erc20(kTokenA)}, provider, 1000) ==
          5.0);
    // explicit strategy decimals win
    CHECK(compute_power(addr(1), std::vector<StrategySpec>{erc20(kTokenA, 1)}, provider, 1000) ==
          500.0);
}

TEST_CASE("unsupported strategy raises the skip marker error") {
    FixtureBalanceProvider provider;
    StrategySpec weird;
    weird.kind = StrategyKind::Other;
    weird.other_name = "delegation";
    CHECK_THROWS_AS(compute_power(addr(1), std::vector<StrategySpec>{weird}, provider, 1000),
                    UnsupportedStrategyError);
}

TEST_CASE("provider errors surface as transport errors") {
    FixtureBalanceProvider provider;
    provider.set_error(addr(1), Asset::erc(kTokenA), 1);
    CHECK_THROWS_AS(
        compute_power(addr(1), std::vector<StrategySpec>{erc20(kTokenA, 18)}, provider, 1000),
        TransportError);
}

TEST_CASE("validation: provider mirroring reported weights is fully consistent") {
    FixtureBalanceProvider provider;
    std::vector<Proposal> proposals{proposal_with("p1", {erc20(kTokenA, 6)})};
    std::vector<Vote> votes;
    for (unsigned u = 1; u <= 5; ++u) {
        double reported = 3.5 * u;
        provider.set_balance(addr(u), Asset::erc(kTokenA), 1,
                             static_cast<u128>(reported * 1e6));
        Vote v = make_vote(u, "p1", 0, reported);
        votes.push_back(v);
    }
    ValidationOutcome out = validate(votes, proposals, provider);
    CHECK(out.count(VoteValidationStatus::Consistent) == 5);
    CHECK(out.count(VoteValidationStatus::Corrected) == 0);
    CHECK(out.count(VoteValidationStatus::Mismatch) == 0);
    REQUIRE(out.fully_validated_spaces.size() == 1);
    CHECK(out.fully_validated_spaces[0] == "space-v");
    CHECK(out.table.empty());
}

TEST_CASE("wrong strategy decimals with correct contract decimals tag corrected(1)") {
    FixtureBalanceProvider provider;
    provider.set_decimals(kTokenA, 6);
    std::vector<Proposal> proposals{proposal_with("p1", {erc20(kTokenA, 12)})};  // wrong: 12
    std::vector<Vote> votes;
    for (unsigned u = 1; u <= 4; ++u) {
        provider.set_balance(addr(u), Asset::erc(kTokenA), 1, static_cast<u128>(u) * 1000000);
        votes.push_back(make_vote(u, "p1", 0, static_cast<double>(u)));
    }
    ValidationOutcome out = validate(votes, proposals, provider);
    CHECK(out.count(VoteValidationStatus::Corrected) == 4);
    for (const auto& v : out.votes) CHECK(v.solution == 1);
    CHECK(out.fully_validated_spaces.empty());  // corrections disqualify
    REQUIRE_FALSE(out.table.empty());
    CHECK(out.table[0].error_class == "1");
    CHECK(out.table[0].count == 4);
}

TEST_CASE("huge raw integer with absent decimals resolves by the decimals-18 rule") {
    FixtureBalanceProvider provider;
    // 1e21 raw vs 1000.0 reported: 1e21 / 10^18 = 1000 by hand
    provider.set_balance(addr(1), Asset::erc(kTokenA), 1, parse_u128("1000000000000000000000"));
    std::vector<Proposal> proposals{proposal_with("p1", {erc20(kTokenA)})};
    std::vector<Vote> votes{make_vote(1, "p1", 0, 1000.0)};
    ValidationOutcome out = validate(votes, proposals, provider);
    REQUIRE(out.votes.size() == 1);
    CHECK(out.votes[0].status == VoteValidationStatus::Corrected);
    CHECK(out.votes[0].solution == 2);  // contract decimals absent -> 18
}

TEST_CASE("solution order: contract decimals shadow the log comparison and forced 18") {
    FixtureBalanceProvider provider;
    // contract decimals 18 reconcile, and forcing 18 would too; solution 1
    // must win because it runs first
    provider.set_decimals(kTokenA, 18);
    provider.set_balance(addr(1), Asset::erc(kTokenA), 1, parse_u128("2000000000000000000"));
    std::vector<Proposal> proposals{proposal_with("p1", {erc20(kTokenA, 3)})};
    std::vector<Vote> votes{make_vote(1, "p1", 0, 2.0)};
    ValidationOutcome out = validate(votes, proposals, provider);
    REQUIRE(out.votes.size() == 1);
    CHECK(out.votes[0].status == VoteValidationStatus::Corrected);
    CHECK(out.votes[0].solution == 1);
}

TEST_CASE("log10 comparison rescues huge nearly-equal values") {
    FixtureBalanceProvider provider;
    // recomputed 1.0000001e12 vs reported 1.0000002e12: absolute gap 1e5
    // exceeds 1e-3 but the log10 gap is ~4e-8
    provider.set_balance(addr(1), Asset::erc(kTokenA), 1, parse_u128("1000000100000"));
    std::vector<Proposal> proposals{proposal_with("p1", {erc20(kTokenA, 0)})};
    std::vector<Vote> votes{make_vote(1, "p1", 0, 1.0000002e12)};
    ValidationOutcome out = validate(votes, proposals, provider);
    REQUIRE(out.votes.size() == 1);
    CHECK(out.votes[0].status == VoteValidationStatus::Corrected);
    CHECK(out.votes[0].solution == 3);
}

TEST_CASE("irreconcilable values stay mismatched; statuses partition the votes") {
    FixtureBalanceProvider provider;
    provider.set_balance(addr(1), Asset::erc(kTokenA), 1, 12345);
    provider.set_balance(addr(2), Asset::erc(kTokenA), 1, 777);
    std::vector<Proposal> proposals{proposal_with("p1", {erc20(kTokenA, 0)})};
    std::vector<Vote> votes{make_vote(1, "p1", 0, 9.0), make_vote(2, "p1", 0, 777.0)};
    ValidationOutcome out = validate(votes, proposals, provider);
    CHECK(out.count(VoteValidationStatus::Mismatch) == 1);
    CHECK(out.count(VoteValidationStatus::Consistent) == 1);
    CHECK(out.votes.size() == out.count(VoteValidationStatus::Consistent) +
                                  out.count(VoteValidationStatus::Corrected) +
                                  out.count(VoteValidationStatus::Mismatch) +
                                  out.count(VoteValidationStatus::Indeterminate));
    CHECK(out.mismatches_by_space.at("space-v") == 1);
}

TEST_CASE("unsupported proposals are excluded, not failed") {
    FixtureBalanceProvider provider;
    StrategySpec weird;
    weird.kind = StrategyKind::Other;
    weird.other_name = "ticket";
    std::vector<Proposal> proposals{proposal_with("p1", {weird}),
                                    proposal_with("p2", {erc20(kTokenA, 0)})};
    provider.set_balance(addr(1), Asset::erc(kTokenA), 1, 5);
    std::vector<Vote> votes{make_vote(1, "p1", 0, 1.0), make_vote(1, "p2", 0, 5.0)};
    ValidationOutcome out = validate(votes, proposals, provider);
    CHECK(out.votes.size() == 1);  // only the supported proposal's vote
    REQUIRE(out.unsupported_proposals.size() == 1);
    CHECK(out.unsupported_proposals[0] == "p1");
}

TEST_CASE("provider failures mark votes indeterminate, never mismatch") {
    FixtureBalanceProvider provider;
    provider.set_error(addr(1), Asset::erc(kTokenA), 1);
    provider.set_balance(addr(2), Asset::erc(kTokenA), 1, 4);
    std::vector<Proposal> proposals{proposal_with("p1", {erc20(kTokenA, 0)})};
    std::vector<Vote> votes{make_vote(1, "p1", 0, 1.0), make_vote(2, "p1", 0, 4.0)};
    ValidationOutcome out = validate(votes, proposals, provider);
    CHECK(out.count(VoteValidationStatus::Indeterminate) == 1);
    CHECK(out.count(VoteValidationStatus::Mismatch) == 0);
    CHECK(out.count(VoteValidationStatus::Consistent) == 1);
    // indeterminate taints the space for the validated dataset
    CHECK(out.fully_validated_spaces.empty());
}
