#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "theoria/enumerator.hpp"
#include "theoria/maxwell.hpp"
#include "theoria/validation.hpp"

using namespace theoria;

namespace {

WeightedAlphabet reference_alphabet() {
    return maxwell::standard_alphabet().alphabet();
}

// Frozen from the brute-force oracle (and the generating function
// (1+x)^2 (1+x^4)^4 (1+x^7)^6) before the squeeze enumerator existed.
const std::vector<std::size_t> kReferenceLevelCounts = {2, 1, 0, 4, 8, 4,  6,
                                                        18, 18, 6, 24, 52, 32, 19};

std::set<Theory> level_set(const TheoryLevels& levels, int q) {
    auto theories = levels.level_theories(q);
    return {theories.begin(), theories.end()};
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

std::uint64_t total_unions(const std::vector<EnumerationStats>& stats) {
    std::uint64_t total = 0;
    for (const auto& s : stats) total += s.unions_attempted;
    return total;
}

}  // namespace

TEST_CASE("seed_singletons places singletons at their weight level") {
    const auto a = reference_alphabet();
    const auto levels = seed_singletons(a, effective_max_q(a, 14));

    CHECK(levels.level_theories(1) == std::vector<Theory>{Theory{"A"}, Theory{"B"}});
    CHECK(levels.level_size(2) == 0);
    CHECK(levels.level_size(3) == 0);
    CHECK(levels.level_theories(4) ==
          std::vector<Theory>{Theory{"C"}, Theory{"D"}, Theory{"E"}, Theory{"F"}});
    CHECK(levels.level_theories(7) ==
          std::vector<Theory>{Theory{"G"}, Theory{"H"}, Theory{"I"}, Theory{"J"}, Theory{"K"},
                              Theory{"L"}});
}

TEST_CASE("seed_singletons skips symbols heavier than max_q") {
    const WeightedAlphabet a({{"A", 1}, {"Z", 20}});
    const auto levels = seed_singletons(a, effective_max_q(a, 5));
    CHECK(levels.max_q() == 5);
    CHECK(levels.total_theories() == 1);
    CHECK(levels.level_theories(1) == std::vector<Theory>{Theory{"A"}});
}

TEST_CASE("squeeze_level q=2 forms the one two-letter theory") {
    const auto a = reference_alphabet();
    auto levels = seed_singletons(a, effective_max_q(a, 14));
    squeeze_level(levels, 1);
    const auto stats = squeeze_level(levels, 2);

    CHECK(levels.level_theories(2) == std::vector<Theory>{Theory{"A", "B"}});
    CHECK(stats.q == 2);
    CHECK(stats.seeded == 0);
    CHECK(stats.unions_attempted == 4);   // {A,B} x {A,B}
    CHECK(stats.disjoint_kept == 2);      // (A,B) and (B,A)
    CHECK(stats.duplicates_rejected == 1);
    CHECK(stats.stored == 1);
}

TEST_CASE("squeeze_level q=5 and q=8 reproduce known level contents") {
    const auto a = reference_alphabet();
    auto levels = seed_singletons(a, effective_max_q(a, 14));
    for (int q = 1; q <= 8; ++q) squeeze_level(levels, q);

    const std::set<Theory> expected5 = {
        Theory{"A", "C"}, Theory{"B", "C"}, Theory{"A", "D"}, Theory{"B", "D"},
        Theory{"A", "E"}, Theory{"B", "E"}, Theory{"A", "F"}, Theory{"B", "F"}};
    CHECK(level_set(levels, 5) == expected5);
    CHECK(levels.level_size(8) == 18);
}

TEST_CASE("squeeze_level rejects out-of-range q and polluted levels") {
    const auto a = reference_alphabet();
    auto levels = seed_singletons(a, effective_max_q(a, 14));
    CHECK_THROWS_AS(squeeze_level(levels, 0), EnumerationError);
    CHECK_THROWS_AS(squeeze_level(levels, 15), EnumerationError);

    levels.insert(5, levels.to_mask(Theory{"A", "C"}));
    CHECK_THROWS_AS(squeeze_level(levels, 5), EnumerationError);
}

TEST_CASE("march: reference alphabet level counts") {
    const auto result = march(reference_alphabet(), 14, trivial_validator());
    REQUIRE(result.levels.max_q() == 14);
    for (int q = 1; q <= 14; ++q) {
        CHECK(result.levels.level_size(q) == kReferenceLevelCounts[static_cast<std::size_t>(q - 1)]);
    }
    CHECK(result.levels.total_theories() == 194);
    CHECK(result.records.size() == 194);  // trivial validator accepts everything
}

TEST_CASE("march: uniform alphabet obeys the binomial law") {
    const auto result = march(uniform_alphabet(12), 14, trivial_validator());
    REQUIRE(result.levels.max_q() == 12);
    for (int q = 1; q <= 12; ++q) {
        CHECK(result.levels.level_size(q) == binomial(12, q));
    }
    CHECK(result.levels.total_theories() == 4095);
}

TEST_CASE("march: always-false validator still enumerates everything") {
    const auto result = march(reference_alphabet(), 14,
                              [](const Theory&) { return ValidationOutcome::reject(); });
    CHECK(result.levels.total_theories() == 194);
    CHECK(result.records.empty());
}

TEST_CASE("march: validator exceptions carry the offending theory") {
    const Validator explosive = [](const Theory& t) {
        if (t == Theory{"A", "B"}) throw std::runtime_error("boom");
        return ValidationOutcome::accept();
    };
    try {
        march(reference_alphabet(), 14, explosive);
        FAIL("expected ValidationFailure");
    } catch (const ValidationFailure& e) {
        CHECK(e.q() == 2);
        CHECK(e.theory() == Theory{"A", "B"});
        CHECK(std::string(e.what()).find("{A,B}") != std::string::npos);
        CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
}

TEST_CASE("brute_force_oracle spot values") {
    const auto uniform = brute_force_oracle(uniform_alphabet(12), 14);
    CHECK(uniform.level_size(12) == 1);  // only the full set

    const auto reference = brute_force_oracle(reference_alphabet(), 14);
    CHECK(reference.level_size(11) == 24);  // weight-4 x weight-7 pairs
    CHECK(reference.level_size(14) == 19);  // C(6,2) + C(4,3)
}

TEST_CASE("march equals the oracle level by level") {
    auto check_equivalent = [](const WeightedAlphabet& a, int max_comp) {
        const auto marched = march(a, max_comp, trivial_validator());
        const auto oracle = brute_force_oracle(a, max_comp);
        const auto diff = first_level_difference(marched.levels, oracle);
        if (diff) MESSAGE(*diff);
        CHECK_FALSE(diff.has_value());
    };

    check_equivalent(reference_alphabet(), 14);
    check_equivalent(uniform_alphabet(12), 14);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto c = random_alphabet_case(1000 + seed);
        check_equivalent(c.alphabet, c.max_comp);
    }
    // a few larger alphabets (13..16 symbols), weights >= 2 to keep levels narrow
    for (int extra = 0; extra < 4; ++extra) {
        std::mt19937_64 rng(2000 + static_cast<std::uint64_t>(extra));
        std::vector<AlphabetEntry> entries;
        const int n = 13 + extra;
        for (int i = 0; i < n; ++i) {
            entries.push_back({std::string(1, static_cast<char>('a' + i)),
                               2 + static_cast<int>(rng() % 4)});
        }
        check_equivalent(WeightedAlphabet(entries), 14);
    }
}

TEST_CASE("every stored theory sits at its exact complexity level") {
    const auto c = random_alphabet_case(345);
    const auto result = march(c.alphabet, c.max_comp, trivial_validator());
    for (int q = 1; q <= result.levels.max_q(); ++q) {
        for (const TheoryMask mask : result.levels.level(q)) {
            CHECK(result.levels.mask_complexity(mask) == q);
            CHECK(complexity(result.levels.to_theory(mask), c.alphabet) == q);
        }
    }
}

TEST_CASE("no theory appears twice within or across levels") {
    const auto result = march(reference_alphabet(), 14, trivial_validator());
    std::set<Theory> seen;
    std::size_t count = 0;
    for (int q = 1; q <= result.levels.max_q(); ++q) {
        for (const auto& t : result.levels.level_theories(q)) {
            seen.insert(t);
            ++count;
        }
    }
    CHECK(seen.size() == count);
}

TEST_CASE("pair work: every block satisfies l + m = q with l <= m") {
    const auto result = march(reference_alphabet(), 14, trivial_validator());
    for (const auto& stats : result.stats) {
        std::uint64_t from_blocks = 0;
        for (const auto& block : stats.pair_work) {
            CHECK(block.l + block.m == stats.q);
            CHECK(block.l <= block.m);
            CHECK(block.l >= 1);
            CHECK(block.pairs == result.levels.level_size(block.m) *
                                     result.levels.level_size(block.l));
            from_blocks += block.pairs;
        }
        CHECK(stats.unions_attempted == from_blocks);
        CHECK(stats.stored == stats.seeded + stats.disjoint_kept - stats.duplicates_rejected);
        CHECK(stats.stored == result.levels.level_size(stats.q));
    }
}

TEST_CASE("level contents are independent of alphabet entry order") {
    const auto a = reference_alphabet();
    std::vector<AlphabetEntry> reversed(a.entries().rbegin(), a.entries().rend());
    const WeightedAlphabet permuted(reversed);

    const auto r1 = march(a, 14, trivial_validator());
    const auto r2 = march(permuted, 14, trivial_validator());
    for (int q = 1; q <= 14; ++q) {
        CHECK(r1.levels.level_theories_canonical(q) == r2.levels.level_theories_canonical(q));
    }
}

TEST_CASE("weighted alphabet does strictly less union work than uniform") {
    for (int max_comp : {12, 13, 14}) {
        const auto weighted = march(reference_alphabet(), max_comp, trivial_validator());
        const auto uniform = march(uniform_alphabet(12), max_comp, trivial_validator());
        CHECK(total_unions(weighted.stats) < total_unions(uniform.stats));
    }
}

TEST_CASE("worker count changes neither results nor counters") {
    auto snapshot = [](const MarchResult& r) {
        std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>> out;
        for (const auto& s : r.stats) {
            out.emplace_back(s.seeded, s.unions_attempted, s.disjoint_kept,
                             s.duplicates_rejected);
        }
        return out;
    };

    for (const auto& [alphabet, max_comp] :
         std::vector<std::pair<WeightedAlphabet, int>>{{reference_alphabet(), 14},
                                                       {uniform_alphabet(12), 12},
                                                       {random_alphabet_case(77).alphabet, 14}}) {
        const auto base = march(alphabet, max_comp, trivial_validator(), 1);
        for (int workers : {2, 4}) {
            const auto parallel = march(alphabet, max_comp, trivial_validator(), workers);
            CHECK(snapshot(parallel) == snapshot(base));
            for (int q = 1; q <= base.levels.max_q(); ++q) {
                CHECK(parallel.levels.level_theories(q) == base.levels.level_theories(q));
            }
        }
    }
}

TEST_CASE("enumeration and oracle size limits") {
    CHECK_THROWS_AS(march(uniform_alphabet(65), 3, trivial_validator()), EnumerationError);
    CHECK_THROWS_AS(brute_force_oracle(uniform_alphabet(25), 3), EnumerationError);
}

TEST_CASE("first_level_difference reports the first discrepancy") {
    const auto a = reference_alphabet();
    auto lhs = brute_force_oracle(a, 14);
    auto rhs = brute_force_oracle(a, 14);
    CHECK_FALSE(first_level_difference(lhs, rhs).has_value());

    rhs.insert(2, rhs.to_mask(Theory{"A"}));  // only in rhs (deliberately wrong level)
    const auto diff = first_level_difference(lhs, rhs);
    REQUIRE(diff.has_value());
    CHECK(diff->find("q=2") != std::string::npos);
}
