#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mcdm/core.hpp"

namespace mcdm {

/// Shannon-entropy objective weights. Throws ZeroColumnSum, NegativeEntry, AllColumnsUniform.
WeightVector apply_entropy(const DecisionMatrix& matrix);

/**
 * CRITIC weights: C_j = sigma_j * sum_k (1 - r_jk) over min-max normalized
 * columns (Cost columns mirrored), sigma the sample standard deviation and
 * r the Pearson correlation. Throws ConstantColumn.
 */
WeightVector apply_critic(const DecisionMatrix& matrix);

/// Best-to-others / others-to-worst judgments for one Best-Worst problem.
class BwmProblem {
public:
    BwmProblem(std::vector<double> best_to_others, std::vector<double> others_to_worst, std::size_t best_index,
               std::size_t worst_index, std::vector<std::string> criterion_names = {});

    [[nodiscard]] const std::vector<double>& best_to_others() const noexcept { return best_to_others_; }
    [[nodiscard]] const std::vector<double>& others_to_worst() const noexcept { return others_to_worst_; }
    [[nodiscard]] std::size_t best_index() const noexcept { return best_; }
    [[nodiscard]] std::size_t worst_index() const noexcept { return worst_; }
    [[nodiscard]] const std::vector<std::string>& criterion_names() const noexcept { return names_; }
    [[nodiscard]] std::size_t size() const noexcept { return best_to_others_.size(); }

private:
    std::vector<double> best_to_others_;
    std::vector<double> others_to_worst_;
    std::size_t best_;
    std::size_t worst_;
    std::vector<std::string> names_;
};

struct BwmSolution {
    WeightVector weights;
    /// Optimal consistency objective of the linear model.
    double xi;
};

/**
 * Linear Best-Worst model:
 *   min xi  s.t.  |w_B - a_Bj w_j| <= xi,  |w_j - a_jW w_W| <= xi,  sum w = 1,  w >= 0.
 * Solved with the dense simplex; returns the vertex it lands on.
 */
BwmSolution apply_bwm(const BwmProblem& problem);

/// Range [min, max] each weight takes over the optimal face of the linear model.
struct WeightInterval {
    double lower;
    double upper;
};

/**
 * Diagnostic for the multiple-optima issue: re-solves with xi fixed at its
 * optimum and each w_j minimized then maximized.
 */
std::vector<WeightInterval> bwm_weight_intervals(const BwmProblem& problem);

}  // namespace mcdm
