#include "theoria/enumerator.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <mutex>
#include <thread>

namespace theoria {

namespace {

constexpr std::size_t kMaxEnumerableSymbols = 64;
constexpr std::size_t kMaxOracleSymbols = 24;
constexpr std::uint64_t kParallelPairThreshold = 4096;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

TheoryLevels::TheoryLevels(WeightedAlphabet alphabet, ComplexityBudget budget)
    : alphabet_(std::move(alphabet)), budget_(budget) {
    if (alphabet_.size() > kMaxEnumerableSymbols) {
        throw EnumerationError("alphabet too large for mask-based enumeration (limit 64 symbols)");
    }
    weights_.reserve(alphabet_.size());
    for (const auto& e : alphabet_.entries()) {
        weights_.push_back(e.weight);
    }
    ordered_.resize(static_cast<std::size_t>(budget_.max_q) + 1);
    present_.resize(static_cast<std::size_t>(budget_.max_q) + 1);
}

void TheoryLevels::check_q(int q) const {
    if (q < 1 || q > budget_.max_q) {
        throw EnumerationError("level q=" + std::to_string(q) + " out of range 1.." +
                               std::to_string(budget_.max_q));
    }
}

std::span<const TheoryMask> TheoryLevels::level(int q) const {
    check_q(q);
    return ordered_[static_cast<std::size_t>(q)];
}

std::size_t TheoryLevels::level_size(int q) const {
    check_q(q);
    return ordered_[static_cast<std::size_t>(q)].size();
}

std::size_t TheoryLevels::total_theories() const {
    std::size_t total = 0;
    for (const auto& lvl : ordered_) total += lvl.size();
    return total;
}

bool TheoryLevels::level_contains(int q, TheoryMask mask) const {
    check_q(q);
    return present_[static_cast<std::size_t>(q)].contains(mask);
}

bool TheoryLevels::insert(int q, TheoryMask mask) {
    check_q(q);
    auto& set = present_[static_cast<std::size_t>(q)];
    if (!set.insert(mask).second) return false;
    ordered_[static_cast<std::size_t>(q)].push_back(mask);
    return true;
}

Theory TheoryLevels::to_theory(TheoryMask mask) const {
    std::vector<Symbol> members;
    members.reserve(static_cast<std::size_t>(std::popcount(mask)));
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (mask & (TheoryMask{1} << i)) members.push_back(alphabet_.entry(i).symbol);
    }
    return Theory(std::move(members));
}

TheoryMask TheoryLevels::to_mask(const Theory& theory) const {
    TheoryMask mask = 0;
    for (const auto& m : theory.members()) {
        auto idx = alphabet_.index_of(m);
        if (!idx) throw UnknownSymbolError(m);
        mask |= TheoryMask{1} << *idx;
    }
    return mask;
}

int TheoryLevels::mask_complexity(TheoryMask mask) const {
    int total = 0;
    while (mask) {
        const int i = std::countr_zero(mask);
        total += weights_[static_cast<std::size_t>(i)];
        mask &= mask - 1;
    }
    return total;
}

std::vector<Theory> TheoryLevels::level_theories(int q) const {
    const auto masks = level(q);
    std::vector<Theory> theories;
    theories.reserve(masks.size());
    for (auto m : masks) theories.push_back(to_theory(m));
    return theories;
}

std::vector<Theory> TheoryLevels::level_theories_canonical(int q) const {
    auto theories = level_theories(q);
    std::sort(theories.begin(), theories.end());
    return theories;
}

TheoryLevels seed_singletons(const WeightedAlphabet& alphabet, const ComplexityBudget& budget) {
    TheoryLevels levels(alphabet, budget);
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        const int w = alphabet.entry(i).weight;
        if (w <= budget.max_q) {
            levels.insert(w, TheoryMask{1} << i);
        }
    }
    return levels;
}

namespace {

struct BlockCounters {
    std::uint64_t disjoint_kept = 0;
    std::vector<TheoryMask> kept;  // in pair-iteration order
};

// Forms every (upper[i], lower[j]) union for one chunk of the upper level,
// keeping the disjoint ones in iteration order. Dedup happens at merge time.
BlockCounters scan_chunk(std::span<const TheoryMask> upper, std::span<const TheoryMask> lower) {
    BlockCounters out;
    for (const TheoryMask x : upper) {
        const int x_size = std::popcount(x);
        for (const TheoryMask y : lower) {
            const TheoryMask u = x | y;
            if (std::popcount(u) == x_size + std::popcount(y)) {
                ++out.disjoint_kept;
                out.kept.push_back(u);
            }
        }
    }
    return out;
}

}  // namespace

EnumerationStats squeeze_level(TheoryLevels& levels, int q, int workers) {
    const auto start = std::chrono::steady_clock::now();
    EnumerationStats stats;
    stats.q = q;
    if (workers < 1) workers = 1;

    // Only seeded singletons may be present before the squeeze.
    for (const TheoryMask m : levels.level(q)) {
        if (std::popcount(m) != 1) {
            throw EnumerationError("level q=" + std::to_string(q) +
                                   " already holds composite theories");
        }
    }
    stats.seeded = levels.level_size(q);

    int l = 1;
    int m = q - 1;
    while (m >= l) {
        const auto upper = levels.level(m);  // m < q, so no aliasing with level q
        const auto lower = levels.level(l);
        const std::uint64_t pairs =
            static_cast<std::uint64_t>(upper.size()) * static_cast<std::uint64_t>(lower.size());
        stats.pair_work.push_back({l, m, pairs});
        stats.unions_attempted += pairs;

        if (pairs > 0) {
            std::vector<BlockCounters> results;
            if (workers == 1 || pairs < kParallelPairThreshold) {
                results.push_back(scan_chunk(upper, lower));
            } else {
                const std::size_t n_chunks =
                    std::min<std::size_t>(static_cast<std::size_t>(workers), upper.size());
                results.resize(n_chunks);
                std::vector<std::thread> threads;
                threads.reserve(n_chunks);
                const std::size_t chunk = (upper.size() + n_chunks - 1) / n_chunks;
                for (std::size_t c = 0; c < n_chunks; ++c) {
                    const std::size_t begin = c * chunk;
                    const std::size_t end = std::min(begin + chunk, upper.size());
                    threads.emplace_back([&, c, begin, end] {
                        results[c] = scan_chunk(upper.subspan(begin, end - begin), lower);
                    });
                }
                for (auto& t : threads) t.join();
            }
            // Merge in chunk order: identical insertion order, and therefore
            // identical duplicate counts, to the sequential scan.
            for (const auto& r : results) {
                stats.disjoint_kept += r.disjoint_kept;
                for (const TheoryMask u : r.kept) {
                    if (!levels.insert(q, u)) ++stats.duplicates_rejected;
                }
            }
        }
        --m;
        ++l;
    }

    stats.stored = levels.level_size(q);
    stats.elapsed_seconds = seconds_since(start);
    return stats;
}

namespace {

struct LevelValidation {
    std::vector<ValidationRecord> accepted;
};

void validate_level(const TheoryLevels& levels, int q, const Validator& validate, int workers,
                    std::vector<ValidationRecord>& records) {
    const auto theories = levels.level_theories(q);
    if (theories.empty()) return;

    std::vector<std::optional<ValidationOutcome>> outcomes(theories.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                outcomes[i] = validate(theories[i]);
            } catch (const std::exception& e) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::make_exception_ptr(
                        ValidationFailure(q, theories[i], e.what()));
                }
                return;
            }
        }
    };

    if (workers <= 1 || theories.size() < 2) {
        run_range(0, theories.size());
    } else {
        const std::size_t n_chunks =
            std::min<std::size_t>(static_cast<std::size_t>(workers), theories.size());
        const std::size_t chunk = (theories.size() + n_chunks - 1) / n_chunks;
        std::vector<std::thread> threads;
        threads.reserve(n_chunks);
        for (std::size_t c = 0; c < n_chunks; ++c) {
            const std::size_t begin = c * chunk;
            const std::size_t end = std::min(begin + chunk, theories.size());
            threads.emplace_back([&, begin, end] { run_range(begin, end); });
        }
        for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<ValidationRecord> accepted;
    for (std::size_t i = 0; i < theories.size(); ++i) {
        if (outcomes[i] && outcomes[i]->accepted) {
            accepted.push_back({q, theories[i], std::move(*outcomes[i])});
        }
    }
    // Record order is normalized so it cannot depend on worker partitioning.
    std::sort(accepted.begin(), accepted.end(),
              [](const ValidationRecord& a, const ValidationRecord& b) {
                  return a.theory < b.theory;
              });
    for (auto& r : accepted) records.push_back(std::move(r));
}

}  // namespace

MarchResult march(const WeightedAlphabet& alphabet, int max_comp, const Validator& validate,
                  int workers) {
    const auto budget = effective_max_q(alphabet, max_comp);
    auto levels = seed_singletons(alphabet, budget);
    std::vector<EnumerationStats> stats;
    stats.reserve(static_cast<std::size_t>(budget.max_q));
    std::vector<ValidationRecord> records;
    for (int q = 1; q <= budget.max_q; ++q) {
        stats.push_back(squeeze_level(levels, q, workers));
        validate_level(levels, q, validate, workers, records);
    }
    return {std::move(levels), std::move(records), std::move(stats)};
}

TheoryLevels brute_force_oracle(const WeightedAlphabet& alphabet, int max_comp) {
    if (alphabet.size() > kMaxOracleSymbols) {
        throw EnumerationError("alphabet too large for exhaustive enumeration (limit 24 symbols)");
    }
    const auto budget = effective_max_q(alphabet, max_comp);
    TheoryLevels levels(alphabet, budget);
    const TheoryMask end = TheoryMask{1} << alphabet.size();
    for (TheoryMask mask = 1; mask < end; ++mask) {
        const int c = levels.mask_complexity(mask);
        if (c <= budget.max_q) {
            levels.insert(c, mask);
        }
    }
    return levels;
}

std::optional<std::string> first_level_difference(const TheoryLevels& lhs,
                                                  const TheoryLevels& rhs) {
    if (!(lhs.alphabet() == rhs.alphabet())) {
        return "alphabets differ";
    }
    if (lhs.max_q() != rhs.max_q()) {
        return "max_q differs: " + std::to_string(lhs.max_q()) + " vs " +
               std::to_string(rhs.max_q());
    }
    for (int q = 1; q <= lhs.max_q(); ++q) {
        for (const TheoryMask m : lhs.level(q)) {
            if (!rhs.level_contains(q, m)) {
                return "q=" + std::to_string(q) + ": " + lhs.to_theory(m).render() +
                       " present only on the left";
            }
        }
        for (const TheoryMask m : rhs.level(q)) {
            if (!lhs.level_contains(q, m)) {
                return "q=" + std::to_string(q) + ": " + rhs.to_theory(m).render() +
                       " present only on the right";
            }
        }
    }
    return std::nullopt;
}

}  // namespace theoria
