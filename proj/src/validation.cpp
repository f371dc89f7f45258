#include "theoria/validation.hpp"

#include <algorithm>

namespace theoria {

ValidationOutcome ValidationOutcome::accept() {
    return ValidationOutcome{true, std::nullopt, std::nullopt};
}

ValidationOutcome ValidationOutcome::accept_with(std::vector<double> coefficients) {
    return ValidationOutcome{true, std::move(coefficients), std::nullopt};
}

ValidationOutcome ValidationOutcome::reject(std::string diagnostics) {
    ValidationOutcome out;
    out.accepted = false;
    if (!diagnostics.empty()) out.diagnostics = std::move(diagnostics);
    return out;
}

ValidationFailure::ValidationFailure(int q, Theory theory, const std::string& cause)
    : std::runtime_error("validator failed at q=" + std::to_string(q) + " on " +
                         theory.render() + ": " + cause),
      q_(q),
      theory_(std::move(theory)) {}

Validator trivial_validator() {
    return [](const Theory&) { return ValidationOutcome::accept(); };
}

std::vector<ValidationRecord> prune_supersets(const std::vector<ValidationRecord>& records) {
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i - 1].q > records[i].q) {
            throw std::invalid_argument("prune_supersets requires records sorted by ascending q");
        }
    }
    std::vector<ValidationRecord> kept;
    kept.reserve(records.size());
    for (const auto& record : records) {
        const bool minimal =
            std::none_of(kept.begin(), kept.end(), [&](const ValidationRecord& earlier) {
                return earlier.theory.proper_subset_of(record.theory);
            });
        if (minimal) kept.push_back(record);
    }
    return kept;
}

}  // namespace theoria
