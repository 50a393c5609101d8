#include "mcdm/pairwise.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mcdm/text.hpp"

namespace mcdm {

PairwiseMatrix::PairwiseMatrix(Matrix values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
    const Eigen::Index n = values_.rows();
    if (n == 0 || values_.cols() != n) {
        throw Error(ErrorKind::NonSquareBlock, "pairwise matrix is " + std::to_string(values_.rows()) + "x" +
                                                   std::to_string(values_.cols()) + ", expected square");
    }
    if (labels_.empty()) labels_ = default_labels("X", static_cast<std::size_t>(n));
    if (labels_.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorKind::LengthMismatch, "pairwise matrix label count does not match dimension");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double a = values_(i, j);
            const std::string where = " at row " + std::to_string(i + 1) + ", column " + std::to_string(j + 1);
            if (!std::isfinite(a) || a <= 0.0) {
                throw Error(ErrorKind::NonPositiveEntry, "pairwise judgment must be positive" + where);
            }
            if (i == j && std::abs(a - 1.0) > kReciprocityTolerance) {
                throw Error(ErrorKind::NotReciprocal, "diagonal judgment must be 1" + where);
            }
            if (j > i && std::abs(a * values_(j, i) - 1.0) > kReciprocityTolerance) {
                throw Error(ErrorKind::NotReciprocal, "a_ij * a_ji != 1" + where);
            }
        }
    }
}

PairwiseMatrix PairwiseMatrix::from_upper_triangle(std::size_t n, std::span<const double> upper,
                                                   std::vector<std::string> labels) {
    if (upper.size() != n * (n - 1) / 2) {
        throw Error(ErrorKind::LengthMismatch, "upper triangle of a " + std::to_string(n) + "x" + std::to_string(n) +
                                                   " matrix needs " + std::to_string(n * (n - 1) / 2) + " values");
    }
    const auto dim = static_cast<Eigen::Index>(n);
    Matrix a = Matrix::Ones(dim, dim);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i + 1; j < dim; ++j) {
            const double v = upper[k++];
            if (!std::isfinite(v) || v <= 0.0) {
                throw Error(ErrorKind::NonPositiveEntry, "pairwise judgment must be positive");
            }
            a(i, j) = v;
            a(j, i) = 1.0 / v;
        }
    }
    return PairwiseMatrix(std::move(a), std::move(labels));
}

PairwiseMatrix PairwiseMatrix::from_weights(std::span<const double> weights, std::vector<std::string> labels) {
    const auto dim = static_cast<Eigen::Index>(weights.size());
    Matrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            a(i, j) = i == j ? 1.0 : weights[static_cast<std::size_t>(i)] / weights[static_cast<std::size_t>(j)];
        }
    }
    return PairwiseMatrix(std::move(a), std::move(labels));
}

std::vector<double> saaty_random_index() { return {0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49}; }

Priority priority_vector(const PairwiseMatrix& matrix, const PriorityOptions& options) {
    const Matrix& a = matrix.values();
    const Eigen::Index n = a.rows();
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    Eigen::VectorXd ax = a * x;
    for (int it = 0; it < options.max_iterations; ++it) {
        const Eigen::VectorXd next = ax / ax.sum();
        const double delta = (next - x).cwiseAbs().maxCoeff();
        x = next;
        ax = a * x;
        if (delta < options.tolerance) {
            // x sums to one, so the Rayleigh-type estimate reduces to the sum of A x.
            return {WeightVector::normalized(std::vector<double>(x.data(), x.data() + n), matrix.labels()), ax.sum()};
        }
    }
    throw Error(ErrorKind::NonConvergence, "power iteration did not converge within " +
                                               std::to_string(options.max_iterations) + " iterations");
}

double consistency_ratio(const PairwiseMatrix& matrix, std::span<const double> random_index) {
    const std::size_t n = matrix.size();
    if (n > random_index.size()) {
        throw Error(ErrorKind::UnsupportedDimension, "no random index for n = " + std::to_string(n) +
                                                         " (table covers n <= " +
                                                         std::to_string(random_index.size()) + ")");
    }
    if (n <= 2) return 0.0;
    const double ri = random_index[n - 1];
    if (!(ri > 0.0)) {
        throw Error(ErrorKind::UnsupportedDimension, "random index for n = " + std::to_string(n) + " is not positive");
    }
    const double lambda = priority_vector(matrix).lambda_max;
    const double ci = (lambda - static_cast<double>(n)) / static_cast<double>(n - 1);
    return ci / ri;
}

double consistency_ratio(const PairwiseMatrix& matrix) { return consistency_ratio(matrix, saaty_random_index()); }

namespace {

void check_hierarchy(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion) {
    if (per_criterion.size() != criteria.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(criteria.size()) + " criteria but " +
                                                   std::to_string(per_criterion.size()) +
                                                   " alternative comparison matrices");
    }
    const std::size_t m = per_criterion.front().size();
    for (std::size_t j = 1; j < per_criterion.size(); ++j) {
        if (per_criterion[j].size() != m) {
            throw Error(ErrorKind::DimensionMismatch, "alternative matrix " + std::to_string(j + 1) + " is " +
                                                          std::to_string(per_criterion[j].size()) + "x" +
                                                          std::to_string(per_criterion[j].size()) + ", expected " +
                                                          std::to_string(m) + "x" + std::to_string(m));
        }
    }
}

Matrix alternative_priorities(std::span<const PairwiseMatrix> per_criterion) {
    const auto m = static_cast<Eigen::Index>(per_criterion.front().size());
    Matrix u(m, static_cast<Eigen::Index>(per_criterion.size()));
    for (std::size_t j = 0; j < per_criterion.size(); ++j) {
        const auto w = priority_vector(per_criterion[j]).weights.weights();
        for (Eigen::Index i = 0; i < m; ++i) u(i, static_cast<Eigen::Index>(j)) = w[static_cast<std::size_t>(i)];
    }
    return u;
}

}  // namespace

AhpResult apply_ahp(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion,
                    std::span<const double> random_index) {
    check_hierarchy(criteria, per_criterion);
    const Priority crit = priority_vector(criteria);
    const double cr = consistency_ratio(criteria, random_index);

    Matrix unweighted = alternative_priorities(per_criterion);
    Matrix weighted = unweighted;
    for (Eigen::Index j = 0; j < weighted.cols(); ++j) {
        weighted.col(j) *= crit.weights[static_cast<std::size_t>(j)];
    }
    const Eigen::VectorXd totals = weighted.rowwise().sum();
    return AhpResult{cr,
                     std::move(unweighted),
                     std::move(weighted),
                     std::vector<double>(totals.data(), totals.data() + totals.size()),
                     crit.weights,
                     per_criterion.front().labels()};
}

AhpResult apply_ahp(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion) {
    return apply_ahp(criteria, per_criterion, saaty_random_index());
}

std::vector<double> ahp_consistency_report(const PairwiseMatrix& criteria,
                                           std::span<const PairwiseMatrix> per_criterion,
                                           std::span<const double> random_index) {
    std::vector<double> out{consistency_ratio(criteria, random_index)};
    for (const auto& m : per_criterion) out.push_back(consistency_ratio(m, random_index));
    return out;
}

Matrix anp_supermatrix(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion) {
    check_hierarchy(criteria, per_criterion);
    const auto n = static_cast<Eigen::Index>(criteria.size());
    const auto m = static_cast<Eigen::Index>(per_criterion.front().size());
    const auto w = priority_vector(criteria).weights.weights();

    Matrix s = Matrix::Zero(1 + n + m, 1 + n + m);
    for (Eigen::Index j = 0; j < n; ++j) s(1 + j, 0) = w[static_cast<std::size_t>(j)];
    s.block(1 + n, 1, m, n) = alternative_priorities(per_criterion);
    s.block(1 + n, 1 + n, m, m).setIdentity();
    return s;
}

Matrix apply_anp(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion, int power) {
    if (power < 1) {
        throw Error(ErrorKind::InvalidArgument, "supermatrix power must be >= 1, got " + std::to_string(power));
    }
    const Matrix s = anp_supermatrix(criteria, per_criterion);
    Matrix out = s;
    for (int p = 1; p < power; ++p) out = out * s;
    return out;
}

namespace {

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

std::string emit_decision_tree(const PairwiseMatrix& criteria, std::span<const PairwiseMatrix> per_criterion) {
    check_hierarchy(criteria, per_criterion);
    const auto w = priority_vector(criteria).weights.weights();
    const Matrix u = alternative_priorities(per_criterion);
    const auto& alts = per_criterion.front().labels();

    std::ostringstream dot;
    dot << "digraph ahp {\n";
    dot << "  rankdir=TB;\n";
    dot << "  node [shape=box];\n";
    dot << "  goal [label=\"Goal\", shape=ellipse];\n";
    for (std::size_t j = 0; j < criteria.size(); ++j) {
        dot << "  c" << j << " [label=" << dot_quote(criteria.labels()[j]) << "];\n";
        dot << "  goal -> c" << j << " [label=\"" << short_number(w[j]) << "\", priority=\"" << format_double(w[j])
            << "\"];\n";
        for (std::size_t i = 0; i < alts.size(); ++i) {
            const double p = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            dot << "  c" << j << "_a" << i << " [label=" << dot_quote(alts[i]) << ", shape=plaintext];\n";
            dot << "  c" << j << " -> c" << j << "_a" << i << " [label=\"" << short_number(p) << "\", priority=\""
                << format_double(p) << "\"];\n";
        }
    }
    dot << "}\n";
    return dot.str();
}

}  // namespace mcdm
