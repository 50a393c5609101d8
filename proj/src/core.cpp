#include "mcdm/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace mcdm {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::AllZeroColumn: return "AllZeroColumn";
        case ErrorKind::ConstantColumn: return "ConstantColumn";
        case ErrorKind::ZeroColumnSum: return "ZeroColumnSum";
        case ErrorKind::AllColumnsUniform: return "AllColumnsUniform";
        case ErrorKind::NonPositiveEntry: return "NonPositiveEntry";
        case ErrorKind::NonPositiveCostEntry: return "NonPositiveCostEntry";
        case ErrorKind::NegativeEntry: return "NegativeEntry";
        case ErrorKind::NotReciprocal: return "NotReciprocal";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorKind::Infeasible: return "Infeasible";
        case ErrorKind::SolverFailure: return "SolverFailure";
        case ErrorKind::Unbounded: return "Unbounded";
        case ErrorKind::BlockCountMismatch: return "BlockCountMismatch";
        case ErrorKind::NonSquareBlock: return "NonSquareBlock";
        case ErrorKind::UnknownCriterionLabel: return "UnknownCriterionLabel";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnknownMethod: return "UnknownMethod";
        case ErrorKind::TooManyEvents: return "TooManyEvents";
        case ErrorKind::NoRootInUnitInterval: return "NoRootInUnitInterval";
        case ErrorKind::ModeDimensionMismatch: return "ModeDimensionMismatch";
        case ErrorKind::TooFewAxes: return "TooFewAxes";
        case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    }
    return "Unknown";
}

std::string_view to_string(Direction d) noexcept {
    return d == Direction::Benefit ? "benefit" : "cost";
}

std::string_view to_string(ScoreDirection d) noexcept {
    return d == ScoreDirection::HigherIsBetter ? "higher_is_better" : "lower_is_better";
}

std::vector<std::string> default_labels(std::string_view prefix, std::size_t count) {
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
        out.push_back(std::string(prefix) + std::to_string(i));
    }
    return out;
}

namespace {

void require_unique(const std::vector<std::string>& names, std::string_view what) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) {
            throw Error(ErrorKind::InvalidArgument, "duplicate " + std::string(what) + " name '" + n + "'");
        }
    }
}

}  // namespace

DecisionMatrix::DecisionMatrix(Matrix values, std::vector<std::string> alternative_names,
                               std::vector<std::string> criterion_names, std::vector<Direction> directions)
    : values_(std::move(values)),
      alternatives_(std::move(alternative_names)),
      criteria_(std::move(criterion_names)),
      directions_(std::move(directions)) {
    if (values_.rows() < 2) {
        throw Error(ErrorKind::DimensionMismatch, "decision matrix needs at least 2 alternatives");
    }
    if (values_.cols() < 1) {
        throw Error(ErrorKind::DimensionMismatch, "decision matrix needs at least 1 criterion");
    }
    if (!values_.allFinite()) {
        throw Error(ErrorKind::InvalidArgument, "decision matrix contains non-finite entries");
    }
    if (alternatives_.size() != alternatives()) {
        throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(alternatives()) +
                                                   " alternative names, got " + std::to_string(alternatives_.size()));
    }
    if (criteria_.size() != criteria() || directions_.size() != criteria()) {
        throw Error(ErrorKind::LengthMismatch, "criterion names/directions do not match " +
                                                   std::to_string(criteria()) + " columns");
    }
    require_unique(alternatives_, "alternative");
    require_unique(criteria_, "criterion");
}

DecisionMatrix::DecisionMatrix(Matrix values)
    : DecisionMatrix(values, default_labels("A", static_cast<std::size_t>(values.rows())),
                     default_labels("C", static_cast<std::size_t>(values.cols())),
                     std::vector<Direction>(static_cast<std::size_t>(values.cols()), Direction::Benefit)) {}

std::vector<double> DecisionMatrix::column(std::size_t j) const {
    std::vector<double> col(alternatives());
    for (std::size_t i = 0; i < col.size(); ++i) {
        col[i] = values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    return col;
}

DecisionMatrix DecisionMatrix::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != alternatives()) {
        throw Error(ErrorKind::LengthMismatch, "permutation length does not match alternative count");
    }
    Matrix v(values_.rows(), values_.cols());
    std::vector<std::string> names(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        v.row(static_cast<Eigen::Index>(i)) = values_.row(static_cast<Eigen::Index>(perm[i]));
        names[i] = alternatives_.at(perm[i]);
    }
    return DecisionMatrix(std::move(v), std::move(names), criteria_, directions_);
}

WeightVector::WeightVector(std::vector<double> weights, std::vector<std::string> criterion_names)
    : weights_(std::move(weights)), names_(std::move(criterion_names)) {
    if (weights_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "weight vector is empty");
    }
    if (names_.size() != weights_.size()) {
        throw Error(ErrorKind::LengthMismatch, "weight vector has " + std::to_string(weights_.size()) +
                                                   " entries but " + std::to_string(names_.size()) + " names");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
            throw Error(ErrorKind::NegativeEntry, "weight '" + names_[i] + "' is negative or non-finite");
        }
        sum += weights_[i];
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
        throw Error(ErrorKind::InvalidArgument, "weights sum to " + std::to_string(sum) + ", expected 1");
    }
}

WeightVector WeightVector::normalized(std::span<const double> raw, std::vector<std::string> criterion_names) {
    double sum = 0.0;
    for (double v : raw) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorKind::NegativeEntry, "raw weights must be finite and nonnegative");
        }
        sum += v;
    }
    if (!(sum > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "raw weights sum to zero");
    }
    std::vector<double> w(raw.begin(), raw.end());
    for (double& v : w) v /= sum;
    return WeightVector(std::move(w), std::move(criterion_names));
}

WeightVector WeightVector::uniform(std::vector<std::string> criterion_names) {
    const std::size_t n = criterion_names.size();
    return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)), std::move(criterion_names));
}

std::vector<std::size_t> RankResult::ranks() const {
    std::vector<std::size_t> r(ordering.size());
    for (std::size_t pos = 0; pos < ordering.size(); ++pos) {
        r[ordering[pos]] = pos + 1;
    }
    return r;
}

std::vector<double> normalize_vector(std::span<const double> column) {
    double sq = 0.0;
    for (double x : column) sq += x * x;
    if (sq == 0.0) {
        throw Error(ErrorKind::AllZeroColumn, "cannot vector-normalize an all-zero column");
    }
    const double norm = std::sqrt(sq);
    std::vector<double> out(column.begin(), column.end());
    for (double& x : out) x /= norm;
    return out;
}

std::vector<double> normalize_minmax(std::span<const double> column, Direction direction) {
    if (column.empty()) {
        throw Error(ErrorKind::InvalidArgument, "empty column");
    }
    const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (hi == lo) {
        throw Error(ErrorKind::ConstantColumn, "column is constant");
    }
    const double span = hi - lo;
    std::vector<double> out(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        out[i] = direction == Direction::Benefit ? (column[i] - lo) / span : (hi - column[i]) / span;
    }
    return out;
}

RankResult rank_from_scores(std::span<const double> scores, ScoreDirection direction,
                            std::vector<std::string> names) {
    if (!names.empty() && names.size() != scores.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(names.size()) + " names for " +
                                                   std::to_string(scores.size()) + " scores");
    }
    RankResult r;
    r.scores.assign(scores.begin(), scores.end());
    r.score_direction = direction;

    const bool higher = direction == ScoreDirection::HigherIsBetter;
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return higher ? scores[a] > scores[b] : scores[a] < scores[b];
    });

    // Group runs whose members all lie within kTieTolerance of the run's best score.
    std::size_t start = 0;
    while (start < idx.size()) {
        std::size_t end = start + 1;
        while (end < idx.size() && std::abs(scores[idx[end]] - scores[idx[start]]) < kTieTolerance) {
            ++end;
        }
        std::sort(idx.begin() + static_cast<std::ptrdiff_t>(start), idx.begin() + static_cast<std::ptrdiff_t>(end));
        if (end - start > 1) {
            r.ties.emplace_back(idx.begin() + static_cast<std::ptrdiff_t>(start),
                                idx.begin() + static_cast<std::ptrdiff_t>(end));
        }
        start = end;
    }
    r.ordering = std::move(idx);
    r.names = names.empty() ? default_labels("A", scores.size()) : std::move(names);
    return r;
}

}  // namespace mcdm
