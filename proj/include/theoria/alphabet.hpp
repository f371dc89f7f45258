/**
 * @file alphabet.hpp
 * @brief Weighted symbol alphabets, theories (symbol sets) and the complexity metric.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace theoria {

/// A symbol is any non-empty token without whitespace ("A", "dB/dt", ...).
using Symbol = std::string;

struct AlphabetEntry {
    Symbol symbol;
    int weight = 1;  ///< positive integer
};

/// Raised by WeightedAlphabet::parse; carries the 1-based input line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what_arg);
    int line() const noexcept { return line_; }

private:
    int line_;
};

class UnknownSymbolError : public std::runtime_error {
public:
    explicit UnknownSymbolError(const Symbol& symbol);
};

/**
 * An ordered list of (symbol, positive weight) pairs. Symbols are unique;
 * immutable after construction and safe to share across threads.
 */
class WeightedAlphabet {
public:
    /// Validates entries: at least one, unique symbols, weights in [1, kMaxWeight].
    explicit WeightedAlphabet(std::vector<AlphabetEntry> entries);

    /**
     * Parses the alphabet file format: one `<symbol> <weight>` per line
     * (single space separator), `#` comment lines and blank lines ignored.
     */
    static WeightedAlphabet parse(std::istream& in);
    static WeightedAlphabet parse(const std::string& text);

    /// Inverse of parse: one `<symbol> <weight>` line per entry, in order.
    std::string serialize() const;

    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<AlphabetEntry>& entries() const noexcept { return entries_; }
    const AlphabetEntry& entry(std::size_t i) const { return entries_.at(i); }
    std::optional<std::size_t> index_of(const Symbol& symbol) const;
    bool contains(const Symbol& symbol) const { return index_of(symbol).has_value(); }
    int weight_of(const Symbol& symbol) const;  ///< throws UnknownSymbolError
    long long total_weight() const noexcept { return total_weight_; }

    bool operator==(const WeightedAlphabet& other) const { return entries_same(other); }

    static constexpr int kMaxWeight = 1'000'000;

private:
    bool entries_same(const WeightedAlphabet& other) const;

    std::vector<AlphabetEntry> entries_;
    std::unordered_map<Symbol, std::size_t> index_;
    long long total_weight_ = 0;
};

/**
 * A set of distinct symbols. Members are kept sorted by name; that order is
 * canonical everywhere (rendering, coefficients, comparisons).
 */
class Theory {
public:
    Theory() = default;
    /// Accepts members in any order; duplicates collapse (set semantics).
    explicit Theory(std::vector<Symbol> members);
    Theory(std::initializer_list<Symbol> members);

    const std::vector<Symbol>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(const Symbol& symbol) const;
    bool subset_of(const Theory& other) const;
    bool proper_subset_of(const Theory& other) const;
    bool disjoint_with(const Theory& other) const;
    Theory union_with(const Theory& other) const;
    Theory without(const Symbol& symbol) const;

    /// Canonical rendering, e.g. "{F,G}".
    std::string render() const;

    bool operator==(const Theory&) const = default;
    auto operator<=>(const Theory&) const = default;

private:
    std::vector<Symbol> members_;  // sorted, unique
};

/// Sum of member weights; 0 for the empty theory. Throws UnknownSymbolError.
int complexity(const Theory& theory, const WeightedAlphabet& alphabet);

struct ComplexityBudget {
    int max_comp = 1;  ///< user cap
    int max_q = 1;     ///< min(sum of weights, max_comp)
};

/// max_q = min(total alphabet weight, max_comp); requires max_comp >= 1.
ComplexityBudget effective_max_q(const WeightedAlphabet& alphabet, int max_comp);

/// n weight-`weight` symbols named A, B, ..., Z, AA, AB, ...
WeightedAlphabet uniform_alphabet(int n, int weight = 1);

/// Deterministic pseudo-random alphabet: 1..max_symbols entries, weights 1..max_weight.
WeightedAlphabet random_alphabet(std::uint64_t seed, int max_symbols = 12, int max_weight = 5);

struct RandomAlphabetCase {
    WeightedAlphabet alphabet;
    int max_comp;  ///< in [1, total weight]
};

/// random_alphabet plus a compatible random complexity cap.
RandomAlphabetCase random_alphabet_case(std::uint64_t seed, int max_symbols = 12,
                                        int max_weight = 5);

}  // namespace theoria
