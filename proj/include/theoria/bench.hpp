/**
 * @file bench.hpp
 * @brief Weighted-vs-uniform enumeration benchmark: deterministic operation
 *        counts plus local wall-clock timings.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "theoria/alphabet.hpp"

namespace theoria::bench {

struct BenchRow {
    std::string alphabet_label;  ///< "uniform" | "weighted"
    int q = 0;
    std::uint64_t stored = 0;
    std::uint64_t unions_attempted = 0;
    std::uint64_t duplicates_rejected = 0;
    double elapsed_seconds = 0.0;  ///< minimum over the timed repetitions
};

/// The weighted A..L alphabet used for discovery (weights 1,1,4,4,4,4,7,...,7).
WeightedAlphabet weighted_bench_alphabet();

/// Twelve weight-1 symbols; same size, no compactness structure.
WeightedAlphabet uniform_bench_alphabet();

/**
 * Enumerates both alphabets up to max_comp, once untimed for warm-up and then
 * `repetitions` timed runs; one row per reachable level. The uniform alphabet
 * tops out at level 12 regardless of max_comp, and unreachable levels produce
 * no row. Counts are identical across repetitions and worker counts.
 */
std::vector<BenchRow> run_bench(int max_comp, int repetitions, int workers = 1);

/// Header `alphabet,q,stored,unions_attempted,duplicates_rejected,elapsed_seconds`,
/// one line per row, sorted by (alphabet label, q).
std::string emit_csv(const std::vector<BenchRow>& rows);

/// Self-contained matplotlib script plotting elapsed-vs-q per alphabet on a
/// log-scale y axis; zero timings are clamped to the measurement floor.
std::string emit_plot_script(const std::vector<BenchRow>& rows,
                             const std::string& csv_path = "bench.csv");

}  // namespace theoria::bench
