/**
 * @file maxwell.hpp
 * @brief Vector-calculus operator alphabet over synthetic electromagnetic
 *        field data, and the null-space validator built on it.
 *
 * Twelve letters map to operator terms acting on the fields E and B
 * (identity, divergence, curl, laplacian, first and second time derivative).
 * Field data is a superposition of transverse plane waves with omega = |k|
 * (natural units, c = 1). A candidate theory is accepted when its term
 * matrix, evaluated over sampled space-time points, admits a nontrivial
 * null vector in which every term participates; the null vector doubles as
 * the equation's coefficient vector.
 */

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "theoria/alphabet.hpp"
#include "theoria/enumerator.hpp"
#include "theoria/validation.hpp"

namespace theoria::maxwell {

using Vec3 = Eigen::Vector3d;

enum class Operator { identity, divergence, curl, laplacian, dt, dtt };
enum class Field { electric, magnetic };
enum class TermShape { scalar, vector3 };

struct OperatorTerm {
    Symbol letter;
    Operator op = Operator::identity;
    Field field = Field::electric;

    TermShape shape() const noexcept;       ///< scalar iff divergence
    int derivative_count() const noexcept;  ///< component space-time derivatives
    int weight() const noexcept { return 1 + derivative_count(); }
    std::string render() const;  ///< e.g. "∇·E", "∂B/∂t"
};

/// A weighted alphabet whose letters are bound to operator terms.
class TermAlphabet {
public:
    explicit TermAlphabet(std::vector<OperatorTerm> terms);

    const WeightedAlphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<OperatorTerm>& terms() const noexcept { return terms_; }
    const OperatorTerm& term_of(const Symbol& letter) const;  ///< throws UnknownSymbolError

private:
    std::vector<OperatorTerm> terms_;
    WeightedAlphabet alphabet_;
};

/// The twelve-letter alphabet A..L: fields, divergences, time derivatives,
/// curls, laplacians and second time derivatives of E and B.
TermAlphabet standard_alphabet();

struct PlaneWave {
    Vec3 wave_vector = Vec3::UnitX();   ///< k
    Vec3 polarization = Vec3::UnitY();  ///< unit vector with e·k = 0
    double amplitude = 1.0;
    double phase = 0.0;

    double omega() const { return wave_vector.norm(); }  // c = 1
};

/**
 * Superposition of transverse plane waves. Each wave satisfies the vacuum
 * field equations on its own:
 *   E = sum_w amplitude · e · cos(k·x − ω t + phase)
 *   B = sum_w amplitude · (k̂ × e) · cos(k·x − ω t + phase)
 */
struct FieldScene {
    std::vector<PlaneWave> waves;

    Vec3 electric(const Vec3& x, double t) const;
    Vec3 magnetic(const Vec3& x, double t) const;
};

/**
 * wave_count >= 3 random waves with pairwise-distinct |k| (at least 10%
 * relative separation) and random transverse polarizations. Deterministic
 * for a fixed seed. Distinct frequencies are what reject spurious
 * single-frequency relations such as ∇²E = −k²E.
 */
FieldScene gen_scene(int wave_count, std::uint64_t seed);

/// All waves share one |k|. Deliberately admits the Helmholtz trap; used by
/// regression tests, never by discovery defaults.
FieldScene gen_monochromatic_scene(int wave_count, std::uint64_t seed);

struct SamplePoint {
    Vec3 x = Vec3::Zero();
    double t = 0.0;
};

struct SampleSet {
    std::vector<SamplePoint> points;
};

/// `count` points uniform over [0, 2π)³ × [0, 2π); deterministic per seed.
SampleSet gen_samples(int count, std::uint64_t seed);

enum class EvalMode { analytic, finite_difference };

inline constexpr double kDefaultFdStep = 1e-3;

/// Closed-form plane-wave derivatives, or second-order central differences
/// with step h on scene field evaluations.
Vec3 eval_vector_term(const OperatorTerm& term, const FieldScene& scene, const SamplePoint& p,
                      EvalMode mode, double h = kDefaultFdStep);
double eval_scalar_term(const OperatorTerm& term, const FieldScene& scene, const SamplePoint& p,
                        EvalMode mode, double h = kDefaultFdStep);

struct TermMatrix {
    bool shape_compatible = true;  ///< false: scalar and vector terms mixed
    TermShape shape = TermShape::vector3;
    /// Rows grouped by sample then component (3 per sample for vector terms,
    /// 1 for scalar); one column per theory member in canonical order.
    Eigen::MatrixXd values;
};

/// Throws on non-finite entries (bad step h or degenerate scene).
TermMatrix build_term_matrix(const Theory& theory, const TermAlphabet& terms,
                             const FieldScene& scene, const SampleSet& samples, EvalMode mode,
                             double h = kDefaultFdStep);

struct Tolerances {
    double rank = 1e-8;     ///< accept when σ_min/σ_max falls below this
    double support = 1e-3;  ///< min |entry| / max |entry| of the null vector
    double zero = 1e-8;     ///< column norm ratio below which a term is identically zero
    double coef = 1e-6;     ///< coefficient agreement used by report checks

    static Tolerances defaults(EvalMode mode);
};

/**
 * Validator over the cached per-letter term columns (each of the twelve
 * columns is evaluated once per scene/sample set, at construction). A theory
 * is accepted when
 *   - its members share one shape, and
 *   - the column-normalized term matrix is rank deficient
 *     (σ_min/σ_max < tol.rank) with a full-support null vector, or
 *   - it is the singleton of an identically-zero term (column norm below
 *     tol.zero times the largest cached column norm).
 * Coefficients are reported in canonical member order, scaled so the
 * largest-magnitude entry is 1. Safe for concurrent invocation.
 */
Validator make_validator(const TermAlphabet& terms, const FieldScene& scene,
                         const SampleSet& samples, EvalMode mode, const Tolerances& tol,
                         double h = kDefaultFdStep, std::uint64_t null_mix_seed = 7);

struct DiscoveryConfig {
    int max_comp = 14;
    int wave_count = 3;
    int sample_count = 64;
    std::uint64_t seed = 1;
    EvalMode mode = EvalMode::analytic;
    double fd_step = kDefaultFdStep;
    std::optional<Tolerances> tolerances;  ///< per-mode defaults when unset
    bool prune = true;                     ///< drop supersets of earlier discoveries
    int workers = 1;
};

struct Discovery {
    int q = 0;
    Theory theory;
    std::vector<double> coefficients;  ///< canonical member order, max-magnitude entry 1
    std::string equation;              ///< e.g. "∇×E + ∂B/∂t = 0"
};

struct DiscoveryReport {
    std::vector<Discovery> discoveries;  ///< sorted by (q, theory)
    std::vector<EnumerationStats> stats;
};

/// Enumerates by complexity, validates against a generated scene, prunes
/// supersets (unless disabled) and reports minimal valid theories.
DiscoveryReport discover(const DiscoveryConfig& config = {});

std::string render_equation(const Theory& theory, const TermAlphabet& terms,
                            const std::vector<double>& coefficients);

/// `q=4 theory={C} eq="∇·E = 0" coeffs=[1]`
std::string format_report_line(const Discovery& d);

/// The six vacuum relations: both divergences at q=4, both couplings at
/// q=11, both wave equations at q=14.
std::vector<std::pair<int, Theory>> expected_discoveries();

bool report_matches_expected(const DiscoveryReport& report);

/// Checks the expected coefficient structure (singletons [1]; pair ratios
/// +1 for ∇×E+∂B/∂t, −1 for the coupling and wave pairs); returns the first
/// problem found, or std::nullopt.
std::optional<std::string> check_expected_coefficients(const DiscoveryReport& report,
                                                       double tol_coef);

}  // namespace theoria::maxwell
