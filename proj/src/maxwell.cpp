#include "theoria/maxwell.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <random>

namespace theoria::maxwell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec3 wave_field_direction(const PlaneWave& w, Field field) {
    if (field == Field::electric) return w.polarization;
    return w.wave_vector.normalized().cross(w.polarization);
}

}  // namespace

TermShape OperatorTerm::shape() const noexcept {
    return op == Operator::divergence ? TermShape::scalar : TermShape::vector3;
}

int OperatorTerm::derivative_count() const noexcept {
    // Component space-time derivatives: 3 for first-order operators on a
    // 3-vector field, 6 for second-order ones.
    switch (op) {
        case Operator::identity: return 0;
        case Operator::divergence: return 3;
        case Operator::dt: return 3;
        case Operator::curl: return 6;
        case Operator::laplacian: return 6;
        case Operator::dtt: return 6;
    }
    return 0;
}

std::string OperatorTerm::render() const {
    const std::string f = field == Field::electric ? "E" : "B";
    switch (op) {
        case Operator::identity: return f;
        case Operator::divergence: return "∇·" + f;
        case Operator::curl: return "∇×" + f;
        case Operator::laplacian: return "∇²" + f;
        case Operator::dt: return "∂" + f + "/∂t";
        case Operator::dtt: return "∂²" + f + "/∂t²";
    }
    return f;
}

TermAlphabet::TermAlphabet(std::vector<OperatorTerm> terms)
    : terms_(std::move(terms)), alphabet_([&] {
          std::vector<AlphabetEntry> entries;
          entries.reserve(terms_.size());
          for (const auto& t : terms_) {
              entries.push_back({t.letter, t.weight()});
          }
          return WeightedAlphabet(std::move(entries));
      }()) {}

const OperatorTerm& TermAlphabet::term_of(const Symbol& letter) const {
    auto idx = alphabet_.index_of(letter);
    if (!idx) throw UnknownSymbolError(letter);
    return terms_[*idx];
}

TermAlphabet standard_alphabet() {
    using enum Operator;
    using enum Field;
    return TermAlphabet({
        {"A", identity, electric},
        {"B", identity, magnetic},
        {"C", divergence, electric},
        {"D", divergence, magnetic},
        {"E", dt, electric},
        {"F", dt, magnetic},
        {"G", curl, electric},
        {"H", curl, magnetic},
        {"I", laplacian, electric},
        {"J", laplacian, magnetic},
        {"K", dtt, electric},
        {"L", dtt, magnetic},
    });
}

Vec3 FieldScene::electric(const Vec3& x, double t) const {
    Vec3 total = Vec3::Zero();
    for (const auto& w : waves) {
        const double theta = w.wave_vector.dot(x) - w.omega() * t + w.phase;
        total += w.amplitude * std::cos(theta) * w.polarization;
    }
    return total;
}

Vec3 FieldScene::magnetic(const Vec3& x, double t) const {
    Vec3 total = Vec3::Zero();
    for (const auto& w : waves) {
        const double theta = w.wave_vector.dot(x) - w.omega() * t + w.phase;
        total += w.amplitude * std::cos(theta) * wave_field_direction(w, Field::magnetic);
    }
    return total;
}

namespace {

FieldScene make_scene(int wave_count, std::uint64_t seed, bool monochromatic) {
    if (wave_count < 3) {
        throw std::invalid_argument("wave_count must be at least 3");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto random_unit = [&] {
        Vec3 v;
        do {
            const double a = gauss(rng);
            const double b = gauss(rng);
            const double c = gauss(rng);
            v = Vec3(a, b, c);
        } while (v.norm() < 1e-6);
        return Vec3(v.normalized());
    };

    FieldScene scene;
    scene.waves.reserve(static_cast<std::size_t>(wave_count));
    for (int i = 0; i < wave_count; ++i) {
        const Vec3 dir = random_unit();
        // Geometric spacing with ratio 1.15 and at most 2% jitter keeps the
        // pairwise relative |k| separation above 10%.
        const double magnitude =
            monochromatic ? 1.0 : 0.9 * std::pow(1.15, i) * (1.0 + 0.02 * u01(rng));
        Vec3 pol;
        do {
            pol = random_unit();
            pol -= pol.dot(dir) * dir;
        } while (pol.norm() < 1e-3);
        pol.normalize();
        const double amplitude = 0.5 + u01(rng);
        const double phase = kTwoPi * u01(rng);
        scene.waves.push_back({magnitude * dir, pol, amplitude, phase});
    }
    return scene;
}

}  // namespace

FieldScene gen_scene(int wave_count, std::uint64_t seed) {
    return make_scene(wave_count, seed, false);
}

FieldScene gen_monochromatic_scene(int wave_count, std::uint64_t seed) {
    return make_scene(wave_count, seed, true);
}

SampleSet gen_samples(int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample count must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    SampleSet samples;
    samples.points.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double x = u(rng);
        const double y = u(rng);
        const double z = u(rng);
        const double t = u(rng);
        samples.points.push_back({Vec3(x, y, z), t});
    }
    return samples;
}

namespace {

Vec3 analytic_vector_term(const OperatorTerm& term, const FieldScene& scene,
                          const SamplePoint& p) {
    Vec3 total = Vec3::Zero();
    for (const auto& w : scene.waves) {
        const double theta = w.wave_vector.dot(p.x) - w.omega() * p.t + w.phase;
        const Vec3 a = w.amplitude * wave_field_direction(w, term.field);
        switch (term.op) {
            case Operator::identity:
                total += a * std::cos(theta);
                break;
            case Operator::curl:
                total -= w.wave_vector.cross(a) * std::sin(theta);
                break;
            case Operator::laplacian:
                total -= w.wave_vector.squaredNorm() * a * std::cos(theta);
                break;
            case Operator::dt:
                total += w.omega() * a * std::sin(theta);
                break;
            case Operator::dtt:
                total -= w.omega() * w.omega() * a * std::cos(theta);
                break;
            case Operator::divergence:
                break;  // scalar; handled separately
        }
    }
    return total;
}

double analytic_divergence(const OperatorTerm& term, const FieldScene& scene,
                           const SamplePoint& p) {
    double total = 0.0;
    for (const auto& w : scene.waves) {
        const double theta = w.wave_vector.dot(p.x) - w.omega() * p.t + w.phase;
        const Vec3 a = w.amplitude * wave_field_direction(w, term.field);
        total -= w.wave_vector.dot(a) * std::sin(theta);
    }
    return total;
}

Vec3 fd_vector_term(const OperatorTerm& term, const FieldScene& scene, const SamplePoint& p,
                    double h) {
    auto field = [&](const Vec3& x, double t) {
        return term.field == Field::electric ? scene.electric(x, t) : scene.magnetic(x, t);
    };
    switch (term.op) {
        case Operator::identity:
            return field(p.x, p.t);
        case Operator::curl: {
            Vec3 partial[3];
            for (int j = 0; j < 3; ++j) {
                Vec3 dx = Vec3::Zero();
                dx[j] = h;
                partial[j] = (field(p.x + dx, p.t) - field(p.x - dx, p.t)) / (2.0 * h);
            }
            return Vec3(partial[1][2] - partial[2][1], partial[2][0] - partial[0][2],
                        partial[0][1] - partial[1][0]);
        }
        case Operator::laplacian: {
            Vec3 total = -6.0 * field(p.x, p.t);
            for (int j = 0; j < 3; ++j) {
                Vec3 dx = Vec3::Zero();
                dx[j] = h;
                total += field(p.x + dx, p.t) + field(p.x - dx, p.t);
            }
            return total / (h * h);
        }
        case Operator::dt:
            return (field(p.x, p.t + h) - field(p.x, p.t - h)) / (2.0 * h);
        case Operator::dtt:
            return (field(p.x, p.t + h) - 2.0 * field(p.x, p.t) + field(p.x, p.t - h)) / (h * h);
        case Operator::divergence:
            break;
    }
    return Vec3::Zero();
}

double fd_divergence(const OperatorTerm& term, const FieldScene& scene, const SamplePoint& p,
                     double h) {
    auto field = [&](const Vec3& x, double t) {
        return term.field == Field::electric ? scene.electric(x, t) : scene.magnetic(x, t);
    };
    double total = 0.0;
    for (int j = 0; j < 3; ++j) {
        Vec3 dx = Vec3::Zero();
        dx[j] = h;
        total += (field(p.x + dx, p.t)[j] - field(p.x - dx, p.t)[j]) / (2.0 * h);
    }
    return total;
}

}  // namespace

Vec3 eval_vector_term(const OperatorTerm& term, const FieldScene& scene, const SamplePoint& p,
                      EvalMode mode, double h) {
    if (term.shape() != TermShape::vector3) {
        throw std::invalid_argument("term '" + term.render() + "' is scalar-valued");
    }
    return mode == EvalMode::analytic ? analytic_vector_term(term, scene, p)
                                      : fd_vector_term(term, scene, p, h);
}

double eval_scalar_term(const OperatorTerm& term, const FieldScene& scene, const SamplePoint& p,
                        EvalMode mode, double h) {
    if (term.shape() != TermShape::scalar) {
        throw std::invalid_argument("term '" + term.render() + "' is vector-valued");
    }
    return mode == EvalMode::analytic ? analytic_divergence(term, scene, p)
                                      : fd_divergence(term, scene, p, h);
}

namespace {

Eigen::VectorXd term_column(const OperatorTerm& term, const FieldScene& scene,
                            const SampleSet& samples, EvalMode mode, double h) {
    const auto P = static_cast<Eigen::Index>(samples.points.size());
    if (term.shape() == TermShape::scalar) {
        Eigen::VectorXd col(P);
        for (Eigen::Index i = 0; i < P; ++i) {
            col[i] = eval_scalar_term(term, scene, samples.points[static_cast<std::size_t>(i)],
                                      mode, h);
        }
        return col;
    }
    Eigen::VectorXd col(3 * P);
    for (Eigen::Index i = 0; i < P; ++i) {
        const Vec3 v =
            eval_vector_term(term, scene, samples.points[static_cast<std::size_t>(i)], mode, h);
        col.segment<3>(3 * i) = v;
    }
    return col;
}

}  // namespace

TermMatrix build_term_matrix(const Theory& theory, const TermAlphabet& terms,
                             const FieldScene& scene, const SampleSet& samples, EvalMode mode,
                             double h) {
    if (theory.empty()) {
        throw std::invalid_argument("empty theory has no term matrix");
    }
    std::vector<const OperatorTerm*> bound;
    bound.reserve(theory.size());
    for (const auto& member : theory.members()) {
        bound.push_back(&terms.term_of(member));
    }
    const TermShape shape = bound.front()->shape();
    for (const auto* t : bound) {
        if (t->shape() != shape) {
            return {false, shape, Eigen::MatrixXd()};
        }
    }
    const auto P = static_cast<Eigen::Index>(samples.points.size());
    const Eigen::Index rows = (shape == TermShape::scalar ? 1 : 3) * P;
    Eigen::MatrixXd values(rows, static_cast<Eigen::Index>(bound.size()));
    for (std::size_t j = 0; j < bound.size(); ++j) {
        values.col(static_cast<Eigen::Index>(j)) = term_column(*bound[j], scene, samples, mode, h);
    }
    if (!values.allFinite()) {
        throw std::runtime_error("non-finite term matrix entry; check the step h and the scene");
    }
    return {true, shape, std::move(values)};
}

Tolerances Tolerances::defaults(EvalMode mode) {
    if (mode == EvalMode::analytic) {
        return Tolerances{1e-8, 1e-3, 1e-8, 1e-6};
    }
    return Tolerances{1e-4, 1e-3, 1e-5, 1e-3};
}

namespace {

/// Holds the immutable per-letter columns and answers candidate queries.
class NullSpaceValidator {
public:
    NullSpaceValidator(const TermAlphabet& terms, const FieldScene& scene,
                       const SampleSet& samples, EvalMode mode, const Tolerances& tol, double h,
                       std::uint64_t null_mix_seed)
        : terms_(terms), sample_count_(samples.points.size()), tol_(tol),
          null_mix_seed_(null_mix_seed) {
        columns_.reserve(terms_.terms().size());
        norms_.reserve(terms_.terms().size());
        for (const auto& term : terms_.terms()) {
            columns_.push_back(term_column(term, scene, samples, mode, h));
            if (!columns_.back().allFinite()) {
                throw std::runtime_error("non-finite term column for '" + term.render() + "'");
            }
            norms_.push_back(columns_.back().norm());
        }
        scene_scale_ = *std::max_element(norms_.begin(), norms_.end());
    }

    ValidationOutcome operator()(const Theory& theory) const {
        if (theory.empty()) {
            return ValidationOutcome::reject("empty theory");
        }
        const std::size_t k = theory.size();
        if (sample_count_ < 4 * k) {
            throw std::invalid_argument("sample count " + std::to_string(sample_count_) +
                                        " too small for a theory of size " + std::to_string(k) +
                                        " (need at least 4x)");
        }
        if (scene_scale_ <= 0.0) {
            return ValidationOutcome::reject("scene carries no signal");
        }

        std::vector<std::size_t> idx;
        idx.reserve(k);
        for (const auto& member : theory.members()) {
            auto i = terms_.alphabet().index_of(member);
            if (!i) throw UnknownSymbolError(member);
            idx.push_back(*i);
        }

        const TermShape shape = terms_.terms()[idx.front()].shape();
        for (std::size_t i : idx) {
            if (terms_.terms()[i].shape() != shape) {
                return ValidationOutcome::reject("mixes scalar and vector terms");
            }
        }

        // A column indistinguishable from zero is a complete equation by
        // itself; anything stacked on top of it cannot have full support.
        std::size_t zero_columns = 0;
        for (std::size_t i : idx) {
            if (norms_[i] < tol_.zero * scene_scale_) ++zero_columns;
        }
        if (zero_columns > 0) {
            if (k == 1) {
                return ValidationOutcome::accept_with({1.0});
            }
            return ValidationOutcome::reject("contains an identically-zero term");
        }

        Eigen::MatrixXd normalized(columns_[idx.front()].size(),
                                   static_cast<Eigen::Index>(k));
        for (std::size_t j = 0; j < k; ++j) {
            normalized.col(static_cast<Eigen::Index>(j)) = columns_[idx[j]] / norms_[idx[j]];
        }

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(normalized, Eigen::ComputeThinV);
        const auto& sigma = svd.singularValues();
        if (!sigma.allFinite() || sigma(0) <= 0.0) {
            throw std::runtime_error("singular value factorization failed");
        }
        const auto kk = static_cast<Eigen::Index>(k);
        const double ratio = sigma(kk - 1) / sigma(0);
        if (!(ratio < tol_.rank)) {
            return ValidationOutcome::reject("no null space (σ_min/σ_max = " +
                                             std::to_string(ratio) + ")");
        }

        Eigen::Index null_dim = 0;
        for (Eigen::Index i = 0; i < kk; ++i) {
            if (sigma(i) < tol_.rank * sigma(0)) ++null_dim;
        }
        Eigen::VectorXd w;
        if (null_dim <= 1) {
            w = svd.matrixV().col(kk - 1);
        } else {
            // A generic fixed-seed combination inside the null space keeps
            // the full-support test reproducible.
            std::mt19937_64 rng(null_mix_seed_);
            std::normal_distribution<double> gauss(0.0, 1.0);
            w = Eigen::VectorXd::Zero(kk);
            for (Eigen::Index i = kk - null_dim; i < kk; ++i) {
                w += gauss(rng) * svd.matrixV().col(i);
            }
            w.normalize();
        }

        const double w_max = w.cwiseAbs().maxCoeff();
        const double w_min = w.cwiseAbs().minCoeff();
        if (w_min < tol_.support * w_max) {
            return ValidationOutcome::reject("null vector lacks full support");
        }

        // Back out of the column normalization, then scale so the entry of
        // largest magnitude is exactly 1.
        std::vector<double> coefficients(k);
        for (std::size_t j = 0; j < k; ++j) {
            coefficients[j] = w(static_cast<Eigen::Index>(j)) / norms_[idx[j]];
        }
        std::size_t pivot = 0;
        for (std::size_t j = 1; j < k; ++j) {
            if (std::abs(coefficients[j]) > std::abs(coefficients[pivot])) pivot = j;
        }
        const double scale = coefficients[pivot];
        for (auto& c : coefficients) c /= scale;
        return ValidationOutcome::accept_with(std::move(coefficients));
    }

private:
    TermAlphabet terms_;
    std::size_t sample_count_;
    Tolerances tol_;
    std::uint64_t null_mix_seed_;
    std::vector<Eigen::VectorXd> columns_;
    std::vector<double> norms_;
    double scene_scale_ = 0.0;
};

}  // namespace

Validator make_validator(const TermAlphabet& terms, const FieldScene& scene,
                         const SampleSet& samples, EvalMode mode, const Tolerances& tol, double h,
                         std::uint64_t null_mix_seed) {
    auto impl = std::make_shared<NullSpaceValidator>(terms, scene, samples, mode, tol, h,
                                                     null_mix_seed);
    return [impl](const Theory& theory) { return (*impl)(theory); };
}

DiscoveryReport discover(const DiscoveryConfig& config) {
    const auto terms = standard_alphabet();
    const auto scene = gen_scene(config.wave_count, config.seed);
    const auto samples =
        gen_samples(config.sample_count, config.seed + 0x9e3779b97f4a7c15ull);
    const auto tol = config.tolerances.value_or(Tolerances::defaults(config.mode));
    const auto validator =
        make_validator(terms, scene, samples, config.mode, tol, config.fd_step);

    auto result = march(terms.alphabet(), config.max_comp, validator, config.workers);
    const auto records = config.prune ? prune_supersets(result.records) : result.records;

    DiscoveryReport report;
    report.discoveries.reserve(records.size());
    for (const auto& r : records) {
        Discovery d;
        d.q = r.q;
        d.theory = r.theory;
        if (r.outcome.coefficients) d.coefficients = *r.outcome.coefficients;
        d.equation = render_equation(d.theory, terms, d.coefficients);
        report.discoveries.push_back(std::move(d));
    }
    report.stats = std::move(result.stats);
    return report;
}

namespace {

std::string format_coefficient(double c) {
    const double rounded = std::round(c);
    char buf[64];
    if (std::abs(c - rounded) < 1e-6 * std::max(1.0, std::abs(rounded))) {
        std::snprintf(buf, sizeof(buf), "%.0f", rounded);
    } else {
        std::snprintf(buf, sizeof(buf), "%.6g", c);
    }
    return buf;
}

}  // namespace

std::string render_equation(const Theory& theory, const TermAlphabet& terms,
                            const std::vector<double>& coefficients) {
    std::string out;
    const auto& members = theory.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
        const double c = i < coefficients.size() ? coefficients[i] : 1.0;
        const double mag = std::abs(c);
        std::string factor;
        if (std::abs(mag - 1.0) > 1e-9) factor = format_coefficient(mag) + "·";
        if (i == 0) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        out += factor + terms.term_of(members[i]).render();
    }
    out += " = 0";
    return out;
}

std::string format_report_line(const Discovery& d) {
    std::string coeffs;
    for (std::size_t i = 0; i < d.coefficients.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.10g", d.coefficients[i]);
        if (i) coeffs += ',';
        coeffs += buf;
    }
    return "q=" + std::to_string(d.q) + " theory=" + d.theory.render() + " eq=\"" + d.equation +
           "\" coeffs=[" + coeffs + "]";
}

std::vector<std::pair<int, Theory>> expected_discoveries() {
    return {
        {4, Theory{"C"}},       {4, Theory{"D"}},      {11, Theory{"E", "H"}},
        {11, Theory{"F", "G"}}, {14, Theory{"I", "K"}}, {14, Theory{"J", "L"}},
    };
}

bool report_matches_expected(const DiscoveryReport& report) {
    const auto expected = expected_discoveries();
    if (report.discoveries.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (report.discoveries[i].q != expected[i].first ||
            report.discoveries[i].theory != expected[i].second) {
            return false;
        }
    }
    return true;
}

std::optional<std::string> check_expected_coefficients(const DiscoveryReport& report,
                                                       double tol_coef) {
    for (const auto& d : report.discoveries) {
        if (d.coefficients.size() != d.theory.size()) {
            return "discovery " + d.theory.render() + " is missing coefficients";
        }
        if (d.theory.size() == 1) {
            if (std::abs(d.coefficients[0] - 1.0) > tol_coef) {
                return "singleton " + d.theory.render() + " coefficient is not 1";
            }
            continue;
        }
        if (d.theory.size() != 2) {
            return "unexpected discovery " + d.theory.render();
        }
        // Ratio of the second member's coefficient to the first, canonical
        // order: +1 for the ∇×E coupling, −1 for the ∇×B coupling and both
        // wave equations.
        double expected_ratio;
        if (d.theory == Theory{"F", "G"}) expected_ratio = 1.0;
        else if (d.theory == Theory{"E", "H"} || d.theory == Theory{"I", "K"} ||
                 d.theory == Theory{"J", "L"}) expected_ratio = -1.0;
        else return "unexpected discovery " + d.theory.render();
        const double ratio = d.coefficients[1] / d.coefficients[0];
        if (std::abs(ratio - expected_ratio) > tol_coef) {
            return "coefficient ratio for " + d.theory.render() + " is " +
                   std::to_string(ratio) + ", expected " + std::to_string(expected_ratio);
        }
    }
    return std::nullopt;
}

}  // namespace theoria::maxwell
