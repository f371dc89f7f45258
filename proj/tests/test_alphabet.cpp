#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "theoria/alphabet.hpp"
#include "theoria/maxwell.hpp"

using namespace theoria;

namespace {

WeightedAlphabet reference_alphabet() {
    return maxwell::standard_alphabet().alphabet();
}

}  // namespace

TEST_CASE("parse: two-entry alphabet") {
    const auto a = WeightedAlphabet::parse(std::string("A 1\nB 1"));
    REQUIRE(a.size() == 2);
    CHECK(a.entry(0).symbol == "A");
    CHECK(a.entry(0).weight == 1);
    CHECK(a.entry(1).symbol == "B");
    CHECK(a.entry(1).weight == 1);
}

TEST_CASE("parse: duplicate symbol reports its line") {
    try {
        WeightedAlphabet::parse(std::string("A 1\nA 2"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
}

TEST_CASE("parse: twelve-letter reference file") {
    const std::string text =
        "A 1\nB 1\nC 4\nD 4\nE 4\nF 4\nG 7\nH 7\nI 7\nJ 7\nK 7\nL 7\n";
    const auto a = WeightedAlphabet::parse(text);
    REQUIRE(a.size() == 12);
    CHECK(a.total_weight() == 60);  // 2*1 + 4*4 + 6*7
    CHECK(a == reference_alphabet());
}

TEST_CASE("parse: comments, blank lines, CRLF") {
    const std::string text = "# comment\n\nA 1\r\n   \nB 2\n";
    const auto a = WeightedAlphabet::parse(text);
    REQUIRE(a.size() == 2);
    CHECK(a.weight_of("B") == 2);
}

TEST_CASE("parse: malformed inputs report line numbers") {
    auto line_of = [](const std::string& text) {
        try {
            WeightedAlphabet::parse(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("A 0") == 1);            // non-positive weight
    CHECK(line_of("A -3") == 1);           // negative weight
    CHECK(line_of("B 1\nA x") == 2);       // non-integer weight
    CHECK(line_of("A 1.5") == 1);          // fractional weight
    CHECK(line_of("A") == 1);              // missing weight
    CHECK(line_of("A 1z") == 1);           // trailing junk
    CHECK(line_of("A 1\nB  2") == 2);      // double space
    CHECK(line_of("") == 0);               // empty file
    CHECK(line_of("# only a comment\n") == 1);
}

TEST_CASE("serialize then parse is the identity") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 25; ++i) {
        const auto a = random_alphabet(rng());
        const auto round_tripped = WeightedAlphabet::parse(a.serialize());
        CHECK(a == round_tripped);
    }
}

TEST_CASE("complexity: reference values") {
    const auto a = reference_alphabet();
    CHECK(complexity(Theory{"F", "G"}, a) == 11);
    CHECK(complexity(Theory{}, a) == 0);
    CHECK(complexity(Theory{"I", "K"}, a) == 14);
    CHECK_THROWS_AS(complexity(Theory{"Z"}, a), UnknownSymbolError);
}

TEST_CASE("complexity: additive over disjoint unions, order independent") {
    std::mt19937_64 rng(7);
    const auto a = reference_alphabet();
    std::vector<Symbol> pool;
    for (const auto& e : a.entries()) pool.push_back(e.symbol);

    for (int round = 0; round < 50; ++round) {
        std::shuffle(pool.begin(), pool.end(), rng);
        const auto cut1 = rng() % 5;
        const auto cut2 = cut1 + rng() % 5;
        Theory s(std::vector<Symbol>(pool.begin(), pool.begin() + cut1));
        Theory t(std::vector<Symbol>(pool.begin() + cut1, pool.begin() + cut2));
        REQUIRE(s.disjoint_with(t));
        CHECK(complexity(s.union_with(t), a) == complexity(s, a) + complexity(t, a));

        // same set built in reverse order compares and scores equal
        auto reversed = std::vector<Symbol>(pool.begin(), pool.begin() + cut2);
        std::reverse(reversed.begin(), reversed.end());
        CHECK(Theory(reversed) == s.union_with(t));
        CHECK(complexity(Theory(reversed), a) == complexity(s.union_with(t), a));
    }
}

TEST_CASE("effective_max_q") {
    CHECK(effective_max_q(reference_alphabet(), 14).max_q == 14);
    CHECK(effective_max_q(uniform_alphabet(12), 14).max_q == 12);
    CHECK(effective_max_q(WeightedAlphabet({{"S", 5}}), 100).max_q == 5);
    CHECK_THROWS_AS(effective_max_q(uniform_alphabet(3), 0), std::invalid_argument);
}

TEST_CASE("theory canonical form and set operations") {
    const Theory t{"G", "F"};
    CHECK(t.render() == "{F,G}");
    CHECK(t.members() == std::vector<Symbol>{"F", "G"});
    CHECK(Theory({"A", "A", "B"}).size() == 2);  // duplicates collapse

    CHECK(Theory{"C"}.proper_subset_of(Theory{"C", "D"}));
    CHECK_FALSE(Theory{"C", "D"}.proper_subset_of(Theory{"C", "D"}));
    CHECK(Theory{"C"}.subset_of(Theory{"C", "D"}));
    CHECK(Theory{"A", "B"}.disjoint_with(Theory{"C"}));
    CHECK_FALSE(Theory{"A", "B"}.disjoint_with(Theory{"B"}));
    CHECK(Theory{"A"}.union_with(Theory{"B"}) == Theory{"A", "B"});
    CHECK(Theory{"A", "B"}.without("A") == Theory{"B"});
    CHECK(Theory{}.render() == "{}");
}

TEST_CASE("alphabet constructor rejects bad entries") {
    CHECK_THROWS_AS(WeightedAlphabet({}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedAlphabet({{"A", 0}}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedAlphabet({{"A", 1}, {"A", 2}}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedAlphabet({{"a b", 1}}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedAlphabet({{"", 1}}), std::invalid_argument);
}

TEST_CASE("builtin alphabet factories") {
    const auto u = uniform_alphabet(12);
    REQUIRE(u.size() == 12);
    CHECK(u.total_weight() == 12);
    CHECK(u.entry(0).symbol == "A");
    CHECK(u.entry(11).symbol == "L");

    const auto big = uniform_alphabet(28);
    CHECK(big.entry(26).symbol == "AA");

    const auto r1 = random_alphabet(42);
    const auto r2 = random_alphabet(42);
    CHECK(r1 == r2);  // deterministic per seed

    const auto c = random_alphabet_case(42);
    CHECK(c.max_comp >= 1);
    CHECK(c.max_comp <= c.alphabet.total_weight());
}
