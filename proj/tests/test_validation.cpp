#include <doctest.h>

#include <algorithm>
#include <random>

#include "theoria/enumerator.hpp"
#include "theoria/maxwell.hpp"
#include "theoria/validation.hpp"

using namespace theoria;

namespace {

ValidationRecord record(int q, Theory t) {
    return {q, std::move(t), ValidationOutcome::accept()};
}

bool is_antichain(const std::vector<ValidationRecord>& records) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (std::size_t j = 0; j < records.size(); ++j) {
            if (i != j && records[i].theory.proper_subset_of(records[j].theory)) return false;
        }
    }
    return true;
}

bool same_theories(const std::vector<ValidationRecord>& a,
                   const std::vector<ValidationRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].q != b[i].q || !(a[i].theory == b[i].theory)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("trivial validator accepts everything, without coefficients") {
    const auto validate = trivial_validator();
    for (const Theory& t : {Theory{"A"}, Theory{}, Theory{"I", "K"}}) {
        const auto outcome = validate(t);
        CHECK(outcome.accepted);
        CHECK_FALSE(outcome.coefficients.has_value());
    }
}

TEST_CASE("prune_supersets drops theories containing earlier discoveries") {
    const std::vector<ValidationRecord> records = {record(4, Theory{"C"}),
                                                   record(8, Theory{"C", "D"})};
    const auto kept = prune_supersets(records);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].theory == Theory{"C"});
}

TEST_CASE("prune_supersets keeps unrelated theories") {
    const std::vector<ValidationRecord> records = {record(4, Theory{"C"}),
                                                   record(11, Theory{"F", "G"})};
    CHECK(prune_supersets(records).size() == 2);
    CHECK(prune_supersets({}).empty());
}

TEST_CASE("prune_supersets requires ascending q") {
    const std::vector<ValidationRecord> records = {record(11, Theory{"F", "G"}),
                                                   record(4, Theory{"C"})};
    CHECK_THROWS_AS(prune_supersets(records), std::invalid_argument);
}

TEST_CASE("prune_supersets output is an antichain and pruning is idempotent") {
    const auto alphabet = maxwell::standard_alphabet().alphabet();
    const auto everything = brute_force_oracle(alphabet, 14);
    std::mt19937_64 rng(4242);
    for (int round = 0; round < 30; ++round) {
        // random subset of all enumerable theories, sorted by q
        std::vector<ValidationRecord> records;
        for (int q = 1; q <= everything.max_q(); ++q) {
            for (const auto& t : everything.level_theories_canonical(q)) {
                if (rng() % 8 == 0) records.push_back(record(q, t));
            }
        }
        const auto pruned = prune_supersets(records);
        CHECK(is_antichain(pruned));
        CHECK(same_theories(prune_supersets(pruned), pruned));
    }
}

TEST_CASE("march with the trivial validator records one entry per theory") {
    const auto result = march(maxwell::standard_alphabet().alphabet(), 14, trivial_validator());
    std::size_t per_level_total = 0;
    for (int q = 1; q <= result.levels.max_q(); ++q) {
        const auto in_level = static_cast<std::size_t>(
            std::count_if(result.records.begin(), result.records.end(),
                          [&](const ValidationRecord& r) { return r.q == q; }));
        CHECK(in_level == result.levels.level_size(q));
        per_level_total += in_level;
    }
    CHECK(per_level_total == result.records.size());

    // records are normalized: ascending q, canonical theory order within a level
    for (std::size_t i = 1; i < result.records.size(); ++i) {
        const auto& prev = result.records[i - 1];
        const auto& curr = result.records[i];
        CHECK((prev.q < curr.q || (prev.q == curr.q && prev.theory < curr.theory)));
    }
}
