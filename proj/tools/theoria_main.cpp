/**
 * @file theoria_main.cpp
 * @brief CLI: enumerate | discover | bench | oracle.
 *
 * Exit codes: 0 success, 1 semantic failure (oracle mismatch, expectation
 * mismatch), 2 usage or configuration error.
 */

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "theoria/alphabet.hpp"
#include "theoria/bench.hpp"
#include "theoria/enumerator.hpp"
#include "theoria/maxwell.hpp"
#include "theoria/validation.hpp"

namespace {

using namespace theoria;

WeightedAlphabet load_alphabet(const std::string& builtin, const std::string& path) {
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open alphabet file: " + path);
        return WeightedAlphabet::parse(in);
    }
    if (builtin == "paper" || builtin == "maxwell") {
        return maxwell::standard_alphabet().alphabet();
    }
    if (builtin == "uniform12") {
        return uniform_alphabet(12);
    }
    throw std::runtime_error("unknown builtin alphabet '" + builtin +
                             "' (expected paper, uniform12 or maxwell)");
}

struct EnumerateOptions {
    std::string builtin = "paper";
    std::string file;
    int max_comp = 14;
    bool list = false;
    bool prune = false;
    int workers = 1;
};

int run_enumerate(const EnumerateOptions& opt) {
    const auto alphabet = load_alphabet(opt.builtin, opt.file);
    auto result = march(alphabet, opt.max_comp, trivial_validator(), opt.workers);

    const std::string label = opt.file.empty() ? opt.builtin : opt.file;
    std::cout << "# alphabet=" << label << " symbols=" << alphabet.size()
              << " total_weight=" << alphabet.total_weight()
              << " max_q=" << result.levels.max_q() << "\n";
    for (int q = 1; q <= result.levels.max_q(); ++q) {
        std::cout << "q=" << q << " count=" << result.levels.level_size(q);
        if (opt.list && result.levels.level_size(q) > 0) {
            std::cout << ":";
            for (const auto& t : result.levels.level_theories_canonical(q)) {
                std::cout << " " << t.render();
            }
        }
        std::cout << "\n";
    }
    std::cout << "total=" << result.levels.total_theories() << "\n";
    if (opt.prune) {
        const auto minimal = prune_supersets(result.records);
        std::cout << "records=" << minimal.size() << " (minimal)\n";
    }
    return 0;
}

struct DiscoverOptions {
    maxwell::DiscoveryConfig config;
    std::string mode = "analytic";
    double tol_rank = -1.0;
    double tol_support = -1.0;
    double tol_zero = -1.0;
    double tol_coef = -1.0;
    bool no_prune = false;
    bool expect_maxwell = false;
};

int run_discover(DiscoverOptions opt) {
    opt.config.mode =
        opt.mode == "fd" ? maxwell::EvalMode::finite_difference : maxwell::EvalMode::analytic;
    auto tol = maxwell::Tolerances::defaults(opt.config.mode);
    if (opt.tol_rank >= 0) tol.rank = opt.tol_rank;
    if (opt.tol_support >= 0) tol.support = opt.tol_support;
    if (opt.tol_zero >= 0) tol.zero = opt.tol_zero;
    if (opt.tol_coef >= 0) tol.coef = opt.tol_coef;
    opt.config.tolerances = tol;
    opt.config.prune = !opt.no_prune;

    const auto report = maxwell::discover(opt.config);

    std::cout << "# mode=" << opt.mode << " seed=" << opt.config.seed
              << " waves=" << opt.config.wave_count << " samples=" << opt.config.sample_count
              << " max_comp=" << opt.config.max_comp
              << " prune=" << (opt.config.prune ? "on" : "off") << "\n";
    for (const auto& d : report.discoveries) {
        std::cout << maxwell::format_report_line(d) << "\n";
    }
    std::cout << "# discoveries=" << report.discoveries.size() << "\n";

    if (opt.expect_maxwell) {
        if (!maxwell::report_matches_expected(report)) {
            std::cout << "EXPECT-MAXWELL: FAIL (discovery set differs from the six vacuum relations)\n";
            return 1;
        }
        if (auto problem = maxwell::check_expected_coefficients(report, tol.coef)) {
            std::cout << "EXPECT-MAXWELL: FAIL (" << *problem << ")\n";
            return 1;
        }
        std::cout << "EXPECT-MAXWELL: PASS\n";
    }
    return 0;
}

struct BenchOptions {
    int max_comp = 14;
    int reps = 3;
    int workers = 1;
    std::string csv_path = "bench.csv";
    std::string plot_path = "bench_plot.py";
};

int run_bench_cmd(const BenchOptions& opt) {
    const auto rows = bench::run_bench(opt.max_comp, opt.reps, opt.workers);

    std::ofstream csv(opt.csv_path);
    if (!csv) throw std::runtime_error("cannot write " + opt.csv_path);
    csv << bench::emit_csv(rows);
    csv.close();

    std::ofstream plot(opt.plot_path);
    if (!plot) throw std::runtime_error("cannot write " + opt.plot_path);
    plot << bench::emit_plot_script(rows, opt.csv_path);
    plot.close();

    std::cout << "# wrote " << opt.csv_path << " (" << rows.size() << " rows)\n";
    std::cout << "# wrote " << opt.plot_path << "\n";
    for (const std::string label : {"uniform", "weighted"}) {
        std::uint64_t unions = 0;
        std::uint64_t stored = 0;
        double elapsed = 0.0;
        for (const auto& r : rows) {
            if (r.alphabet_label != label) continue;
            unions += r.unions_attempted;
            stored += r.stored;
            elapsed += r.elapsed_seconds;
        }
        std::cout << label << ": stored=" << stored << " unions_attempted=" << unions
                  << " elapsed=" << elapsed << "s\n";
    }
    return 0;
}

struct OracleOptions {
    std::string builtin;
    std::string file;
    bool alphabet_given = false;
    int max_comp = 14;
    int random_cases = 20;
    bool random_given = false;
    std::uint64_t seed = 1;
    int workers = 1;
};

int run_oracle(const OracleOptions& opt) {
    struct Case {
        std::string label;
        WeightedAlphabet alphabet;
        int max_comp;
    };
    std::vector<Case> cases;
    if (opt.alphabet_given) {
        auto alphabet = load_alphabet(opt.builtin.empty() ? "paper" : opt.builtin, opt.file);
        const std::string label = opt.file.empty() ? opt.builtin : opt.file;
        cases.push_back({label, std::move(alphabet), opt.max_comp});
        for (int i = 0; opt.random_given && i < opt.random_cases; ++i) {
            auto random_case = random_alphabet_case(opt.seed + static_cast<std::uint64_t>(i));
            cases.push_back({"random-" + std::to_string(i), std::move(random_case.alphabet),
                             random_case.max_comp});
        }
    } else {
        cases.push_back({"paper", load_alphabet("paper", ""), opt.max_comp});
        cases.push_back({"uniform12", load_alphabet("uniform12", ""), opt.max_comp});
        for (int i = 0; i < opt.random_cases; ++i) {
            auto random_case = random_alphabet_case(opt.seed + static_cast<std::uint64_t>(i));
            cases.push_back({"random-" + std::to_string(i), std::move(random_case.alphabet),
                             random_case.max_comp});
        }
    }

    bool all_equal = true;
    for (const auto& c : cases) {
        auto marched = march(c.alphabet, c.max_comp, trivial_validator(), opt.workers);
        auto oracle = brute_force_oracle(c.alphabet, c.max_comp);
        if (auto diff = first_level_difference(marched.levels, oracle)) {
            std::cout << "case " << c.label << ": MISMATCH " << *diff << "\n";
            all_equal = false;
            break;  // first discrepancy is enough
        }
        std::cout << "case " << c.label << ": EQUIVALENT (" << oracle.total_theories()
                  << " theories, max_q=" << oracle.max_q() << ")\n";
    }
    std::cout << (all_equal ? "EQUIVALENT" : "MISMATCH") << "\n";
    return all_equal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Level-wise enumeration of weighted symbol sets and "
                 "equation discovery from synthetic field data"};
    app.require_subcommand(1);
    int rc = 0;

    EnumerateOptions enum_opt;
    auto* cmd_enum = app.add_subcommand("enumerate", "Enumerate theories level by level");
    cmd_enum->add_option("--builtin", enum_opt.builtin,
                         "Builtin alphabet: paper, uniform12 or maxwell");
    cmd_enum->add_option("--alphabet-file", enum_opt.file, "Alphabet file (overrides --builtin)");
    cmd_enum->add_option("--max-comp", enum_opt.max_comp, "Complexity cap")
        ->check(CLI::PositiveNumber);
    cmd_enum->add_flag("--list", enum_opt.list, "List each level's theories in canonical order");
    cmd_enum->add_flag("--prune", enum_opt.prune, "Also report minimal-record count");
    cmd_enum->add_option("--workers", enum_opt.workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    cmd_enum->callback([&] { rc = run_enumerate(enum_opt); });

    DiscoverOptions disc_opt;
    auto* cmd_disc = app.add_subcommand("discover", "Search field data for vanishing equations");
    cmd_disc->add_option("--max-comp", disc_opt.config.max_comp, "Complexity cap")
        ->check(CLI::PositiveNumber);
    cmd_disc->add_option("--seed", disc_opt.config.seed, "Scene/sample seed");
    cmd_disc->add_option("--mode", disc_opt.mode, "Term evaluation mode")
        ->check(CLI::IsMember({"analytic", "fd"}));
    cmd_disc->add_option("--waves", disc_opt.config.wave_count, "Plane waves in the scene")
        ->check(CLI::PositiveNumber);
    cmd_disc->add_option("--samples", disc_opt.config.sample_count, "Sample points")
        ->check(CLI::PositiveNumber);
    cmd_disc->add_option("--fd-step", disc_opt.config.fd_step, "Finite-difference step h")
        ->check(CLI::PositiveNumber);
    cmd_disc->add_option("--tol-rank", disc_opt.tol_rank, "Rank tolerance override");
    cmd_disc->add_option("--tol-support", disc_opt.tol_support, "Support tolerance override");
    cmd_disc->add_option("--tol-zero", disc_opt.tol_zero, "Zero-column tolerance override");
    cmd_disc->add_option("--tol-coef", disc_opt.tol_coef, "Coefficient tolerance override");
    cmd_disc->add_flag("--no-prune", disc_opt.no_prune, "Keep superset discoveries");
    cmd_disc->add_flag("--expect-maxwell", disc_opt.expect_maxwell,
                       "Exit 0 only if exactly the six vacuum relations are found");
    cmd_disc->add_option("--workers", disc_opt.config.workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    cmd_disc->callback([&] { rc = run_discover(disc_opt); });

    BenchOptions bench_opt;
    auto* cmd_bench = app.add_subcommand("bench", "Weighted-vs-uniform enumeration benchmark");
    cmd_bench->add_option("--max-comp", bench_opt.max_comp, "Complexity cap")
        ->check(CLI::PositiveNumber);
    cmd_bench->add_option("--reps", bench_opt.reps, "Timed repetitions after warm-up")
        ->check(CLI::PositiveNumber);
    cmd_bench->add_option("--csv", bench_opt.csv_path, "CSV output path");
    cmd_bench->add_option("--plot", bench_opt.plot_path, "Plot script output path");
    cmd_bench->add_option("--workers", bench_opt.workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    cmd_bench->callback([&] { rc = run_bench_cmd(bench_opt); });

    OracleOptions oracle_opt;
    auto* cmd_oracle = app.add_subcommand(
        "oracle", "Cross-check the enumerator against the brute-force powerset");
    auto* ob = cmd_oracle->add_option("--builtin", oracle_opt.builtin,
                                      "Builtin alphabet: paper, uniform12 or maxwell");
    auto* of = cmd_oracle->add_option("--alphabet-file", oracle_opt.file, "Alphabet file");
    cmd_oracle->add_option("--max-comp", oracle_opt.max_comp, "Complexity cap")
        ->check(CLI::PositiveNumber);
    auto* orand = cmd_oracle->add_option("--random", oracle_opt.random_cases,
                                         "Number of seeded random alphabets")
                      ->check(CLI::NonNegativeNumber);
    cmd_oracle->add_option("--seed", oracle_opt.seed, "Base seed for random alphabets");
    cmd_oracle->add_option("--workers", oracle_opt.workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    cmd_oracle->callback([&] {
        oracle_opt.alphabet_given = ob->count() > 0 || of->count() > 0;
        oracle_opt.random_given = orand->count() > 0;
        rc = run_oracle(oracle_opt);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the parse error
        return code == 0 ? 0 : 2;
    } catch (const theoria::ParseError& e) {
        std::cerr << "error: alphabet " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
