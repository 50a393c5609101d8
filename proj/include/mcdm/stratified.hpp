#pragma once

#include <span>
#include <string>
#include <vector>

#include "mcdm/core.hpp"

namespace mcdm {

/// Largest event count enumerate_states accepts (2^20 states).
inline constexpr int kMaxEvents = 20;

/**
 * States generated by k independent events, ordered by (number of events,
 * lexicographic event indices). State 0 is the empty baseline; stratum r
 * holds the C(k, r) states in which exactly r events occurred.
 */
struct StateSpace {
    int events = 0;
    std::vector<std::vector<int>> states;
    std::vector<std::vector<std::size_t>> strata;

    [[nodiscard]] std::size_t size() const noexcept { return states.size(); }
};

StateSpace enumerate_states(int events);

/**
 * Unique root in (0, 1] of
 *   (1 + e_1(r)) p + sum_{t=2..k} e_t(r) p^t - 1 = 0,
 * e_t the elementary symmetric polynomials of the event ratios r_j = w_j/w_0.
 * Bracketed bisection followed by two Newton polish steps.
 */
double solve_baseline_probability(std::span<const double> ratios);

/// Probability of every state given baseline + per-event weights (length k + 1, all > 0).
std::vector<double> state_probabilities(const StateSpace& space, std::span<const double> baseline_and_event_weights);

enum class ProbabilityMode { GivenProbabilities, IndependentEvents };

/**
 * Inputs of a stratified decision problem.
 *
 * GivenProbabilities: `likelihood` has one probability per state and sums to 1.
 * IndependentEvents: the state count must be 2^k and `likelihood` holds the
 * baseline weight followed by one weight per event (length k + 1). A
 * likelihood of full state length is also accepted; only its first k + 1
 * entries (baseline and single-event states) are used and a warning is kept.
 */
class StratifiedModel {
public:
    StratifiedModel(Matrix comparison, Matrix state_criteria, std::vector<double> likelihood, ProbabilityMode mode,
                    std::vector<std::string> alternative_names = {}, std::vector<std::string> criterion_names = {},
                    std::vector<std::string> state_names = {});

    [[nodiscard]] const Matrix& comparison() const noexcept { return comparison_; }
    [[nodiscard]] const Matrix& state_criteria() const noexcept { return state_criteria_; }
    [[nodiscard]] const std::vector<double>& likelihood() const noexcept { return likelihood_; }
    [[nodiscard]] ProbabilityMode mode() const noexcept { return mode_; }
    [[nodiscard]] const std::vector<std::string>& alternative_names() const noexcept { return alternatives_; }
    [[nodiscard]] const std::vector<std::string>& criterion_names() const noexcept { return criteria_; }
    [[nodiscard]] const std::vector<std::string>& state_names() const noexcept { return states_; }
    [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    [[nodiscard]] std::size_t alternatives() const noexcept { return static_cast<std::size_t>(comparison_.rows()); }
    [[nodiscard]] std::size_t criteria() const noexcept { return static_cast<std::size_t>(comparison_.cols()); }
    [[nodiscard]] std::size_t state_count() const noexcept { return static_cast<std::size_t>(state_criteria_.cols()); }

    /// Same data with a different probability mode (revalidated).
    [[nodiscard]] StratifiedModel with_mode(ProbabilityMode mode) const;

private:
    Matrix comparison_;
    Matrix state_criteria_;
    std::vector<double> likelihood_;
    ProbabilityMode mode_;
    std::vector<std::string> alternatives_;
    std::vector<std::string> criteria_;
    std::vector<std::string> states_;
    std::vector<std::string> warnings_;
};

/// Per-state probabilities implied by the model (given directly or solved from event weights).
std::vector<double> model_state_probabilities(const StratifiedModel& model);

struct SmcdmResult {
    RankResult ranking;
    /// state_criteria * probabilities, renormalized to unit sum.
    WeightVector aggregate_weights;
    std::vector<double> probabilities;
};

SmcdmResult apply_smcdm(const StratifiedModel& model);

/// Baseline node linked to every other state; edges carry state probabilities.
std::string emit_state_tree(const StratifiedModel& model);

/**
 * Stratified Best-Worst inputs. Column t of others_to_best supplies the
 * best-to-others judgments of state t and column t of others_to_worst the
 * others-to-worst judgments; the self-comparison of each state's best and
 * worst criterion must be 1.
 */
class SbwmModel {
public:
    SbwmModel(Matrix comparison, Matrix others_to_worst, Matrix others_to_best, std::vector<std::size_t> worst_per_state,
              std::vector<std::size_t> best_per_state, std::vector<double> likelihood,
              std::vector<std::string> alternative_names = {}, std::vector<std::string> criterion_names = {},
              std::vector<std::string> state_names = {});

    [[nodiscard]] const Matrix& comparison() const noexcept { return comparison_; }
    [[nodiscard]] const Matrix& others_to_worst() const noexcept { return others_to_worst_; }
    [[nodiscard]] const Matrix& others_to_best() const noexcept { return others_to_best_; }
    [[nodiscard]] const std::vector<std::size_t>& worst_per_state() const noexcept { return worst_; }
    [[nodiscard]] const std::vector<std::size_t>& best_per_state() const noexcept { return best_; }
    [[nodiscard]] const std::vector<double>& likelihood() const noexcept { return likelihood_; }
    [[nodiscard]] const std::vector<std::string>& alternative_names() const noexcept { return alternatives_; }
    [[nodiscard]] const std::vector<std::string>& criterion_names() const noexcept { return criteria_; }
    [[nodiscard]] const std::vector<std::string>& state_names() const noexcept { return states_; }

    [[nodiscard]] std::size_t alternatives() const noexcept { return static_cast<std::size_t>(comparison_.rows()); }
    [[nodiscard]] std::size_t criteria() const noexcept { return static_cast<std::size_t>(comparison_.cols()); }
    [[nodiscard]] std::size_t state_count() const noexcept { return likelihood_.size(); }

private:
    Matrix comparison_;
    Matrix others_to_worst_;
    Matrix others_to_best_;
    std::vector<std::size_t> worst_;
    std::vector<std::size_t> best_;
    std::vector<double> likelihood_;
    std::vector<std::string> alternatives_;
    std::vector<std::string> criteria_;
    std::vector<std::string> states_;
};

struct SbwmResult {
    RankResult ranking;
    /// n x s: column t is the BWM weight vector of state t.
    Matrix state_weights;
    std::vector<double> state_xi;
    WeightVector aggregate_weights;
};

SbwmResult apply_sbwm(const SbwmModel& model);

}  // namespace mcdm
