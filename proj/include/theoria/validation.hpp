/**
 * @file validation.hpp
 * @brief Validator contract, validation records and minimality pruning.
 */

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "theoria/alphabet.hpp"

namespace theoria {

struct ValidationOutcome {
    bool accepted = false;
    /// One coefficient per theory member in canonical order; present only on
    /// acceptance, largest-magnitude entry equal to 1, no zero entries.
    std::optional<std::vector<double>> coefficients;
    std::optional<std::string> diagnostics;

    static ValidationOutcome accept();
    static ValidationOutcome accept_with(std::vector<double> coefficients);
    static ValidationOutcome reject(std::string diagnostics = {});
};

/// Deterministic predicate over theories; must not mutate its argument and
/// must be safe to invoke from several threads at once.
using Validator = std::function<ValidationOutcome(const Theory&)>;

struct ValidationRecord {
    int q = 0;  ///< complexity of `theory`
    Theory theory;
    ValidationOutcome outcome;
};

/// Wraps an exception thrown by a validator, identifying the offending theory.
class ValidationFailure : public std::runtime_error {
public:
    ValidationFailure(int q, Theory theory, const std::string& cause);
    int q() const noexcept { return q_; }
    const Theory& theory() const noexcept { return theory_; }

private:
    int q_;
    Theory theory_;
};

/// Accepts everything, no coefficients.
Validator trivial_validator();

/**
 * Keeps only records whose theory has no proper subset among earlier records.
 * Input must be sorted by ascending q; the output is an antichain under set
 * inclusion and the operation is idempotent.
 */
std::vector<ValidationRecord> prune_supersets(const std::vector<ValidationRecord>& records);

}  // namespace theoria
