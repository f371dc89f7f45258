#include "theoria/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_set>

namespace theoria {

namespace {

bool is_space_char(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool blank_line(const std::string& line) {
    return std::all_of(line.begin(), line.end(), is_space_char);
}

std::string spreadsheet_name(int i) {
    // 0 -> A, 25 -> Z, 26 -> AA, ...
    std::string name;
    int n = i;
    do {
        name.insert(name.begin(), static_cast<char>('A' + n % 26));
        n = n / 26 - 1;
    } while (n >= 0);
    return name;
}

}  // namespace

ParseError::ParseError(int line, const std::string& what_arg)
    : std::runtime_error("line " + std::to_string(line) + ": " + what_arg), line_(line) {}

UnknownSymbolError::UnknownSymbolError(const Symbol& symbol)
    : std::runtime_error("unknown symbol '" + symbol + "'") {}

WeightedAlphabet::WeightedAlphabet(std::vector<AlphabetEntry> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw std::invalid_argument("alphabet must have at least one entry");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.symbol.empty() || std::any_of(e.symbol.begin(), e.symbol.end(), is_space_char)) {
            throw std::invalid_argument("invalid symbol token '" + e.symbol + "'");
        }
        if (e.weight < 1 || e.weight > kMaxWeight) {
            throw std::invalid_argument("weight out of range for symbol '" + e.symbol + "'");
        }
        if (!index_.emplace(e.symbol, i).second) {
            throw std::invalid_argument("duplicate symbol '" + e.symbol + "'");
        }
        total_weight_ += e.weight;
    }
}

WeightedAlphabet WeightedAlphabet::parse(std::istream& in) {
    std::vector<AlphabetEntry> entries;
    std::unordered_set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#' || blank_line(line)) continue;

        const auto space = line.find(' ');
        if (space == std::string::npos || space == 0 || space + 1 == line.size()) {
            throw ParseError(line_no, "expected '<symbol> <weight>'");
        }
        std::string symbol = line.substr(0, space);
        if (std::any_of(symbol.begin(), symbol.end(), is_space_char)) {
            throw ParseError(line_no, "symbol contains whitespace");
        }
        if (!seen.insert(symbol).second) {
            throw ParseError(line_no, "duplicate symbol '" + symbol + "'");
        }

        const char* first = line.data() + space + 1;
        const char* last = line.data() + line.size();
        long long value = 0;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) {
            throw ParseError(line_no, "weight is not a base-10 integer");
        }
        if (value < 1) {
            throw ParseError(line_no, "weight must be positive");
        }
        if (value > kMaxWeight) {
            throw ParseError(line_no, "weight exceeds the supported maximum");
        }
        entries.push_back({std::move(symbol), static_cast<int>(value)});
    }
    if (entries.empty()) {
        throw ParseError(line_no, "alphabet has no entries");
    }
    return WeightedAlphabet(std::move(entries));
}

WeightedAlphabet WeightedAlphabet::parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

std::string WeightedAlphabet::serialize() const {
    std::string out;
    for (const auto& e : entries_) {
        out += e.symbol;
        out += ' ';
        out += std::to_string(e.weight);
        out += '\n';
    }
    return out;
}

std::optional<std::size_t> WeightedAlphabet::index_of(const Symbol& symbol) const {
    auto it = index_.find(symbol);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int WeightedAlphabet::weight_of(const Symbol& symbol) const {
    auto idx = index_of(symbol);
    if (!idx) throw UnknownSymbolError(symbol);
    return entries_[*idx].weight;
}

bool WeightedAlphabet::entries_same(const WeightedAlphabet& other) const {
    if (entries_.size() != other.entries_.size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].symbol != other.entries_[i].symbol ||
            entries_[i].weight != other.entries_[i].weight) {
            return false;
        }
    }
    return true;
}

Theory::Theory(std::vector<Symbol> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Theory::Theory(std::initializer_list<Symbol> members)
    : Theory(std::vector<Symbol>(members)) {}

bool Theory::contains(const Symbol& symbol) const {
    return std::binary_search(members_.begin(), members_.end(), symbol);
}

bool Theory::subset_of(const Theory& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
}

bool Theory::proper_subset_of(const Theory& other) const {
    return size() < other.size() && subset_of(other);
}

bool Theory::disjoint_with(const Theory& other) const {
    auto a = members_.begin();
    auto b = other.members_.begin();
    while (a != members_.end() && b != other.members_.end()) {
        if (*a == *b) return false;
        if (*a < *b) ++a;
        else ++b;
    }
    return true;
}

Theory Theory::union_with(const Theory& other) const {
    std::vector<Symbol> merged;
    merged.reserve(size() + other.size());
    std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                   other.members_.end(), std::back_inserter(merged));
    Theory result;
    result.members_ = std::move(merged);  // already sorted and unique
    return result;
}

Theory Theory::without(const Symbol& symbol) const {
    std::vector<Symbol> rest;
    rest.reserve(members_.size());
    for (const auto& m : members_) {
        if (m != symbol) rest.push_back(m);
    }
    Theory result;
    result.members_ = std::move(rest);
    return result;
}

std::string Theory::render() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) out += ',';
        out += members_[i];
    }
    out += '}';
    return out;
}

int complexity(const Theory& theory, const WeightedAlphabet& alphabet) {
    long long total = 0;
    for (const auto& m : theory.members()) {
        total += alphabet.weight_of(m);
    }
    if (total > std::numeric_limits<int>::max()) {
        throw std::overflow_error("theory complexity exceeds int range");
    }
    return static_cast<int>(total);
}

ComplexityBudget effective_max_q(const WeightedAlphabet& alphabet, int max_comp) {
    if (max_comp < 1) {
        throw std::invalid_argument("max_comp must be a positive integer");
    }
    const long long capped = std::min<long long>(alphabet.total_weight(), max_comp);
    return ComplexityBudget{max_comp, static_cast<int>(capped)};
}

WeightedAlphabet uniform_alphabet(int n, int weight) {
    if (n < 1) throw std::invalid_argument("alphabet size must be positive");
    std::vector<AlphabetEntry> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        entries.push_back({spreadsheet_name(i), weight});
    }
    return WeightedAlphabet(std::move(entries));
}

WeightedAlphabet random_alphabet(std::uint64_t seed, int max_symbols, int max_weight) {
    if (max_symbols < 1 || max_weight < 1) {
        throw std::invalid_argument("max_symbols and max_weight must be positive");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size_dist(1, max_symbols);
    std::uniform_int_distribution<int> weight_dist(1, max_weight);
    const int n = size_dist(rng);
    std::vector<AlphabetEntry> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        entries.push_back({spreadsheet_name(i), weight_dist(rng)});
    }
    return WeightedAlphabet(std::move(entries));
}

RandomAlphabetCase random_alphabet_case(std::uint64_t seed, int max_symbols, int max_weight) {
    auto alphabet = random_alphabet(seed, max_symbols, max_weight);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<long long> cap_dist(1, alphabet.total_weight());
    const int max_comp = static_cast<int>(cap_dist(rng));
    return {std::move(alphabet), max_comp};
}

}  // namespace theoria
