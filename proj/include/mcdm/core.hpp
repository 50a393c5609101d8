#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mcdm/error.hpp"

namespace mcdm {

using Matrix = Eigen::MatrixXd;

enum class Direction { Benefit, Cost };
enum class ScoreDirection { HigherIsBetter, LowerIsBetter };

/// Absolute tolerance under which two scores are reported as tied.
inline constexpr double kTieTolerance = 1e-12;

/// Tolerance on the unit sum of a weight vector.
inline constexpr double kWeightSumTolerance = 1e-9;

std::string_view to_string(Direction d) noexcept;
std::string_view to_string(ScoreDirection d) noexcept;

/// Generates "<prefix>1" .. "<prefix>count".
std::vector<std::string> default_labels(std::string_view prefix, std::size_t count);

/**
 * Alternatives x criteria performance table.
 *
 * Immutable once constructed; the constructor enforces the shape invariants
 * (at least two alternatives, at least one criterion, finite entries, unique
 * labels matching the dimensions).
 */
class DecisionMatrix {
public:
    DecisionMatrix(Matrix values, std::vector<std::string> alternative_names,
                   std::vector<std::string> criterion_names, std::vector<Direction> directions);

    /// Auto-labels alternatives A1..Am and criteria C1..Cn, all Benefit.
    explicit DecisionMatrix(Matrix values);

    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<std::string>& alternative_names() const noexcept { return alternatives_; }
    [[nodiscard]] const std::vector<std::string>& criterion_names() const noexcept { return criteria_; }
    [[nodiscard]] const std::vector<Direction>& directions() const noexcept { return directions_; }

    [[nodiscard]] std::size_t alternatives() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    [[nodiscard]] std::size_t criteria() const noexcept { return static_cast<std::size_t>(values_.cols()); }

    [[nodiscard]] std::vector<double> column(std::size_t j) const;

    /// Same data with the alternatives reordered so that row i of the result is row perm[i] of this.
    [[nodiscard]] DecisionMatrix permuted(std::span<const std::size_t> perm) const;

private:
    Matrix values_;
    std::vector<std::string> alternatives_;
    std::vector<std::string> criteria_;
    std::vector<Direction> directions_;
};

/// Nonnegative criteria weights summing to one.
class WeightVector {
public:
    WeightVector(std::vector<double> weights, std::vector<std::string> criterion_names);

    /// Rescales nonnegative raw values to unit sum; throws if the sum is not positive.
    static WeightVector normalized(std::span<const double> raw, std::vector<std::string> criterion_names);
    static WeightVector uniform(std::vector<std::string> criterion_names);

    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
    [[nodiscard]] const std::vector<std::string>& criterion_names() const noexcept { return names_; }
    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return weights_[i]; }

private:
    std::vector<double> weights_;
    std::vector<std::string> names_;
};

/// Per-alternative scores with a deterministic best-first ordering.
struct RankResult {
    std::vector<double> scores;
    std::vector<std::size_t> ordering;
    ScoreDirection score_direction = ScoreDirection::HigherIsBetter;
    /// Groups (size >= 2) of alternatives whose scores differ by less than kTieTolerance.
    std::vector<std::vector<std::size_t>> ties;
    std::vector<std::string> names;
    /// Non-fatal conditions met while scoring (constant criteria, degenerate spreads).
    std::vector<std::string> warnings;

    /// 1-based rank of each alternative (rank[i] = position of i in ordering + 1).
    [[nodiscard]] std::vector<std::size_t> ranks() const;
};

/// r_i = x_i / ||x||_2. Throws AllZeroColumn.
std::vector<double> normalize_vector(std::span<const double> column);

/// Benefit: (x - min)/(max - min); Cost: (max - x)/(max - min). Throws ConstantColumn.
std::vector<double> normalize_minmax(std::span<const double> column, Direction direction);

/**
 * Orders alternatives best-first. Ties (|a - b| < kTieTolerance, chained
 * along the sorted order) are broken by ascending index. Empty `names`
 * yields A1, A2, ...
 */
RankResult rank_from_scores(std::span<const double> scores, ScoreDirection direction,
                            std::vector<std::string> names = {});

}  // namespace mcdm
