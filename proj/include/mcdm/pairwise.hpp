#pragma once

#include <span>
#include <string>
#include <vector>

#include "mcdm/core.hpp"

namespace mcdm {

/// Relative tolerance on a_ji = 1/a_ij.
inline constexpr double kReciprocityTolerance = 1e-9;

/**
 * Square positive reciprocal judgment matrix.
 *
 * Construction rejects non-square input, non-positive entries, a diagonal
 * other than 1 and reciprocity violations beyond kReciprocityTolerance. No
 * silent repair is attempted.
 */
class PairwiseMatrix {
public:
    explicit PairwiseMatrix(Matrix values, std::vector<std::string> labels = {});

    /// Builds the full matrix from the strict upper triangle (row-major, n(n-1)/2 values).
    static PairwiseMatrix from_upper_triangle(std::size_t n, std::span<const double> upper,
                                              std::vector<std::string> labels = {});

    /// Consistent matrix a_ij = w_i / w_j.
    static PairwiseMatrix from_weights(std::span<const double> weights, std::vector<std::string> labels = {});

    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }

private:
    Matrix values_;
    std::vector<std::string> labels_;
};

/// Saaty random index for n = 1..10.
std::vector<double> saaty_random_index();

struct PriorityOptions {
    double tolerance = 1e-12;
    int max_iterations = 10000;
};

struct Priority {
    WeightVector weights;
    double lambda_max;
};

/**
 * Principal right eigenvector (sum-normalized) and eigenvalue by power
 * iteration; stops when successive iterates differ by less than
 * options.tolerance in max norm. Throws NonConvergence.
 */
Priority priority_vector(const PairwiseMatrix& matrix, const PriorityOptions& options = {});

/**
 * CR = ((lambda_max - n)/(n - 1)) / RI[n]; 0 for n <= 2.
 * `random_index[k]` is RI for n = k + 1. Throws UnsupportedDimension when n
 * exceeds the table.
 */
double consistency_ratio(const PairwiseMatrix& matrix, std::span<const double> random_index);
double consistency_ratio(const PairwiseMatrix& matrix);

/// Conventional acceptability threshold for the consistency ratio.
inline constexpr double kAcceptableConsistency = 0.1;

struct AhpResult {
    /// CR of the criteria matrix.
    double consistency_ratio;
    /// m x n: column j holds the alternative priorities under criterion j.
    Matrix unweighted_scores;
    /// unweighted_scores with column j scaled by criteria weight j.
    Matrix weighted_scores;
    std::vector<double> final_scores;
    WeightVector criteria_weights;
    std::vector<std::string> alternative_names;
};

AhpResult apply_ahp(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion,
                    std::span<const double> random_index);
AhpResult apply_ahp(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion);

/// CR of the criteria matrix followed by each per-criterion matrix, in input order.
std::vector<double> ahp_consistency_report(const PairwiseMatrix& criteria,
                                           std::span<const PairwiseMatrix> per_criterion,
                                           std::span<const double> random_index);

/**
 * Supermatrix S of size (1 + n + m): index 0 is the goal, 1..n the criteria,
 * n+1..n+m the alternatives. S(1+j, 0) = criteria weight j,
 * S(n+1+i, 1+j) = priority of alternative i under criterion j, the
 * alternatives block is the identity and everything else is zero.
 */
Matrix anp_supermatrix(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion);

/// S^power, with S from anp_supermatrix. power >= 1.
Matrix apply_anp(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion, int power);

/// Goal -> criteria -> alternatives tree in DOT; edge labels carry weights/priorities.
std::string emit_decision_tree(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion);

}  // namespace mcdm
