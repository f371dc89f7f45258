/**
 * @file enumerator.hpp
 * @brief Level-wise enumeration of theories by exact complexity.
 *
 * Theories of total weight q are built as disjoint unions of an l-level and an
 * m-level theory with l + m = q, l marching up from 1 while m marches down
 * from q - 1. Singletons seed their weight level; every other theory is
 * derived. A powerset brute force over the same alphabet serves as the
 * correctness oracle.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "theoria/alphabet.hpp"
#include "theoria/validation.hpp"

namespace theoria {

/// Bitmask over alphabet entry indices. Enumeration is limited to alphabets
/// of at most 64 symbols; anything larger is combinatorially out of reach.
using TheoryMask = std::uint64_t;

class EnumerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One (l, m) block visited while squeezing a level.
struct PairWork {
    int l = 0;
    int m = 0;
    std::uint64_t pairs = 0;  ///< |levels[m]| * |levels[l]|
};

struct EnumerationStats {
    int q = 0;
    std::uint64_t seeded = 0;               ///< singletons present before the squeeze
    std::uint64_t unions_attempted = 0;     ///< candidate pair unions formed
    std::uint64_t disjoint_kept = 0;        ///< unions passing the disjointness check
    std::uint64_t duplicates_rejected = 0;  ///< disjoint unions already present
    std::uint64_t stored = 0;               ///< final level size
    double elapsed_seconds = 0.0;
    std::vector<PairWork> pair_work;
};

/**
 * Theories bucketed by exact complexity q = 1..max_q. Level storage is a hash
 * set over canonical masks plus the insertion-ordered list; a level may be
 * empty. Reading is thread-safe once construction and insertion are done.
 */
class TheoryLevels {
public:
    TheoryLevels(WeightedAlphabet alphabet, ComplexityBudget budget);

    const WeightedAlphabet& alphabet() const noexcept { return alphabet_; }
    const ComplexityBudget& budget() const noexcept { return budget_; }
    int max_q() const noexcept { return budget_.max_q; }

    std::span<const TheoryMask> level(int q) const;  ///< insertion order
    std::size_t level_size(int q) const;
    std::size_t total_theories() const;
    bool level_contains(int q, TheoryMask mask) const;
    /// Adds `mask` to level q if not already present; returns true when new.
    bool insert(int q, TheoryMask mask);

    Theory to_theory(TheoryMask mask) const;
    TheoryMask to_mask(const Theory& theory) const;  ///< throws UnknownSymbolError
    int mask_complexity(TheoryMask mask) const;

    std::vector<Theory> level_theories(int q) const;            ///< insertion order
    std::vector<Theory> level_theories_canonical(int q) const;  ///< sorted

private:
    void check_q(int q) const;

    WeightedAlphabet alphabet_;
    ComplexityBudget budget_;
    std::vector<int> weights_;  // weight per entry index
    std::vector<std::vector<TheoryMask>> ordered_;       // [0] unused
    std::vector<std::unordered_set<TheoryMask>> present_;  // mirrors ordered_
};

/// Places each symbol's singleton at its weight level (weights above max_q
/// are skipped); all other levels start empty.
TheoryLevels seed_singletons(const WeightedAlphabet& alphabet, const ComplexityBudget& budget);

/**
 * Completes level q from the already-complete lower levels: every disjoint
 * union of an m-level and an l-level theory with l + m = q, deduplicated.
 * With workers > 1 the pair iteration is partitioned; results and counters
 * are identical to the sequential run.
 */
EnumerationStats squeeze_level(TheoryLevels& levels, int q, int workers = 1);

struct MarchResult {
    TheoryLevels levels;
    std::vector<ValidationRecord> records;  ///< accepted theories, sorted by (q, theory)
    std::vector<EnumerationStats> stats;    ///< one per level
};

/**
 * Seeds, squeezes q = 1..max_q in order, and validates each completed level.
 * Validator exceptions propagate as ValidationFailure with the offending
 * (q, theory) attached.
 */
MarchResult march(const WeightedAlphabet& alphabet, int max_comp, const Validator& validate,
                  int workers = 1);

/// Exhaustive powerset enumeration (alphabets up to 24 symbols), bucketed by
/// exact complexity. Independent of the squeeze path; used to verify it.
TheoryLevels brute_force_oracle(const WeightedAlphabet& alphabet, int max_comp);

/// First per-level discrepancy between two enumerations over the same
/// alphabet, rendered as text; std::nullopt when equivalent.
std::optional<std::string> first_level_difference(const TheoryLevels& lhs,
                                                  const TheoryLevels& rhs);

}  // namespace theoria
