#include "theoria/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>

#include "theoria/enumerator.hpp"
#include "theoria/maxwell.hpp"
#include "theoria/validation.hpp"

namespace theoria::bench {

WeightedAlphabet weighted_bench_alphabet() {
    return maxwell::standard_alphabet().alphabet();
}

WeightedAlphabet uniform_bench_alphabet() {
    return uniform_alphabet(12);
}

std::vector<BenchRow> run_bench(int max_comp, int repetitions, int workers) {
    if (max_comp < 1) throw std::invalid_argument("max_comp must be positive");
    if (repetitions < 1) throw std::invalid_argument("repetitions must be positive");

    std::vector<BenchRow> rows;
    const auto validator = trivial_validator();

    const std::vector<std::pair<std::string, WeightedAlphabet>> alphabets = {
        {"uniform", uniform_bench_alphabet()},
        {"weighted", weighted_bench_alphabet()},
    };

    for (const auto& [label, alphabet] : alphabets) {
        march(alphabet, max_comp, validator, workers);  // warm-up, discarded

        std::vector<EnumerationStats> counts;
        std::vector<double> best;
        for (int rep = 0; rep < repetitions; ++rep) {
            auto result = march(alphabet, max_comp, validator, workers);
            if (rep == 0) {
                counts = result.stats;
                best.assign(counts.size(), std::numeric_limits<double>::infinity());
            }
            for (std::size_t i = 0; i < result.stats.size(); ++i) {
                best[i] = std::min(best[i], result.stats[i].elapsed_seconds);
            }
        }
        for (std::size_t i = 0; i < counts.size(); ++i) {
            rows.push_back({label, counts[i].q, counts[i].stored, counts[i].unions_attempted,
                            counts[i].duplicates_rejected, best[i]});
        }
    }
    return rows;
}

std::string emit_csv(const std::vector<BenchRow>& rows) {
    auto sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const BenchRow& a, const BenchRow& b) {
        if (a.alphabet_label != b.alphabet_label) return a.alphabet_label < b.alphabet_label;
        return a.q < b.q;
    });
    std::string out = "alphabet,q,stored,unions_attempted,duplicates_rejected,elapsed_seconds\n";
    for (const auto& r : sorted) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s,%d,%llu,%llu,%llu,%.9e\n", r.alphabet_label.c_str(),
                      r.q, static_cast<unsigned long long>(r.stored),
                      static_cast<unsigned long long>(r.unions_attempted),
                      static_cast<unsigned long long>(r.duplicates_rejected), r.elapsed_seconds);
        out += buf;
    }
    return out;
}

std::string emit_plot_script(const std::vector<BenchRow>& rows, const std::string& csv_path) {
    std::string labels;
    {
        std::map<std::string, bool> seen;
        for (const auto& r : rows) seen[r.alphabet_label] = true;
        for (const auto& [label, _] : seen) {
            if (!labels.empty()) labels += ", ";
            labels += "\"" + label + "\"";
        }
    }
    std::string script;
    script += "#!/usr/bin/env python3\n";
    script += "# Plots per-level elapsed time for each alphabet (log-scale y).\n";
    script += "import csv\n";
    script += "import matplotlib\n";
    script += "matplotlib.use(\"Agg\")\n";
    script += "import matplotlib.pyplot as plt\n";
    script += "\n";
    script += "CSV_PATH = \"" + csv_path + "\"\n";
    script += "EXPECTED_LABELS = [" + labels + "]\n";
    script += "\n";
    script += "series = {}\n";
    script += "with open(CSV_PATH, newline=\"\") as f:\n";
    script += "    for row in csv.DictReader(f):\n";
    script += "        series.setdefault(row[\"alphabet\"], []).append(\n";
    script += "            (int(row[\"q\"]), float(row[\"elapsed_seconds\"])))\n";
    script += "\n";
    script += "positives = [e for pts in series.values() for _, e in pts if e > 0]\n";
    script += "floor = min(positives) if positives else 1e-9\n";
    script += "\n";
    script += "fig, ax = plt.subplots()\n";
    script += "for label in sorted(series):\n";
    script += "    pts = sorted(series[label])\n";
    script += "    qs = [q for q, _ in pts]\n";
    script += "    # zero timings sit at the measurement floor instead of vanishing\n";
    script += "    es = [max(e, floor) for _, e in pts]\n";
    script += "    ax.plot(qs, es, marker=\"o\", label=label)\n";
    script += "ax.set_yscale(\"log\")\n";
    script += "ax.set_xlabel(\"complexity level q\")\n";
    script += "ax.set_ylabel(\"elapsed seconds (min over repetitions)\")\n";
    script += "ax.set_title(\"Enumeration time per complexity level\")\n";
    script += "ax.legend()\n";
    script += "fig.savefig(\"bench.png\", dpi=150)\n";
    script += "print(\"wrote bench.png\")\n";
    return script;
}

}  // namespace theoria::bench
