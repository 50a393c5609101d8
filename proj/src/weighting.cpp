#include "mcdm/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcdm/simplex.hpp"

namespace mcdm {

WeightVector apply_entropy(const DecisionMatrix& matrix) {
    const auto& x = matrix.values();
    const Eigen::Index m = x.rows();
    const Eigen::Index n = x.cols();
    const double k = 1.0 / std::log(static_cast<double>(m));

    std::vector<double> diversity(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            if (x(i, j) < 0.0) {
                throw Error(ErrorKind::NegativeEntry, "entropy weighting needs nonnegative entries (row " +
                                                          std::to_string(i + 1) + ", column " +
                                                          std::to_string(j + 1) + ")");
            }
            sum += x(i, j);
        }
        if (!(sum > 0.0)) {
            throw Error(ErrorKind::ZeroColumnSum,
                        "criterion '" + matrix.criterion_names()[static_cast<std::size_t>(j)] + "' sums to zero");
        }
        double h = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double p = x(i, j) / sum;
            if (p > 0.0) h -= p * std::log(p);
        }
        diversity[static_cast<std::size_t>(j)] = std::max(0.0, 1.0 - k * h);
    }

    double total = 0.0;
    for (double d : diversity) total += d;
    if (total <= 1e-12) {
        throw Error(ErrorKind::AllColumnsUniform, "every criterion has maximal entropy; weights are undefined");
    }
    return WeightVector::normalized(diversity, matrix.criterion_names());
}

WeightVector apply_critic(const DecisionMatrix& matrix) {
    const Eigen::Index m = matrix.values().rows();
    const Eigen::Index n = matrix.values().cols();

    Matrix z(m, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto col = matrix.column(static_cast<std::size_t>(j));
        std::vector<double> norm;
        try {
            norm = normalize_minmax(col, matrix.directions()[static_cast<std::size_t>(j)]);
        } catch (const Error& e) {
            throw Error(ErrorKind::ConstantColumn, "CRITIC needs non-constant criteria; '" +
                                                       matrix.criterion_names()[static_cast<std::size_t>(j)] +
                                                       "' is constant");
        }
        for (Eigen::Index i = 0; i < m; ++i) z(i, j) = norm[static_cast<std::size_t>(i)];
    }
    if (n == 1) {
        return WeightVector({1.0}, matrix.criterion_names());
    }

    const Eigen::RowVectorXd mean = z.colwise().mean();
    const Matrix centered = z.rowwise() - mean;
    const Eigen::VectorXd sigma = (centered.colwise().squaredNorm() / static_cast<double>(m - 1)).cwiseSqrt();
    const Matrix cov = centered.transpose() * centered / static_cast<double>(m - 1);

    std::vector<double> info(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        double conflict = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            const double r = cov(j, k) / (sigma(j) * sigma(k));
            conflict += 1.0 - r;
        }
        info[static_cast<std::size_t>(j)] = std::max(0.0, sigma(j) * conflict);
    }
    double total = 0.0;
    for (double c : info) total += c;
    if (total <= 0.0) {
        // Every pair of criteria is perfectly correlated: only contrast intensity distinguishes them.
        return WeightVector::normalized(std::vector<double>(sigma.data(), sigma.data() + n), matrix.criterion_names());
    }
    return WeightVector::normalized(info, matrix.criterion_names());
}

BwmProblem::BwmProblem(std::vector<double> best_to_others, std::vector<double> others_to_worst,
                       std::size_t best_index, std::size_t worst_index, std::vector<std::string> criterion_names)
    : best_to_others_(std::move(best_to_others)),
      others_to_worst_(std::move(others_to_worst)),
      best_(best_index),
      worst_(worst_index),
      names_(std::move(criterion_names)) {
    const std::size_t n = best_to_others_.size();
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "BWM problem has no criteria");
    }
    if (others_to_worst_.size() != n) {
        throw Error(ErrorKind::LengthMismatch, "best-to-others has " + std::to_string(n) +
                                                   " judgments, others-to-worst has " +
                                                   std::to_string(others_to_worst_.size()));
    }
    if (names_.empty()) names_ = default_labels("C", n);
    if (names_.size() != n) {
        throw Error(ErrorKind::LengthMismatch, "criterion name count does not match judgment count");
    }
    if (best_ >= n || worst_ >= n) {
        throw Error(ErrorKind::InvalidArgument, "best/worst index out of range");
    }
    if (n > 1 && best_ == worst_) {
        throw Error(ErrorKind::InvalidArgument, "best and worst criterion must differ");
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (double a : {best_to_others_[j], others_to_worst_[j]}) {
            if (!std::isfinite(a) || a < 1.0) {
                throw Error(ErrorKind::InvalidArgument, "BWM judgment for '" + names_[j] +
                                                            "' must be finite and >= 1");
            }
        }
    }
    if (std::abs(best_to_others_[best_] - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "best criterion '" + names_[best_] +
                                                    "' must compare to itself as 1");
    }
    if (std::abs(others_to_worst_[worst_] - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "worst criterion '" + names_[worst_] +
                                                    "' must compare to itself as 1");
    }
}

namespace {

// Variables: w_0..w_{n-1}, xi (index n).
lp::LinearProgram bwm_program(const BwmProblem& p) {
    const auto n = static_cast<Eigen::Index>(p.size());
    const auto b = static_cast<Eigen::Index>(p.best_index());
    const auto w = static_cast<Eigen::Index>(p.worst_index());
    auto prog = lp::LinearProgram::with_variables(n + 1);
    prog.objective(n) = 1.0;

    prog.le_matrix = Matrix::Zero(4 * n, n + 1);
    prog.le_rhs = Eigen::VectorXd::Zero(4 * n);
    Eigen::Index row = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j != b) {
            const double a = p.best_to_others()[static_cast<std::size_t>(j)];
            // w_B - a_Bj w_j <= xi and its mirror
            prog.le_matrix(row, b) = 1.0;
            prog.le_matrix(row, j) = -a;
            prog.le_matrix(row, n) = -1.0;
            ++row;
            prog.le_matrix(row, b) = -1.0;
            prog.le_matrix(row, j) = a;
            prog.le_matrix(row, n) = -1.0;
            ++row;
        }
        if (j != w) {
            const double a = p.others_to_worst()[static_cast<std::size_t>(j)];
            // w_j - a_jW w_W <= xi and its mirror
            prog.le_matrix(row, j) = 1.0;
            prog.le_matrix(row, w) = -a;
            prog.le_matrix(row, n) = -1.0;
            ++row;
            prog.le_matrix(row, j) = -1.0;
            prog.le_matrix(row, w) = a;
            prog.le_matrix(row, n) = -1.0;
            ++row;
        }
    }
    prog.le_matrix.conservativeResize(row, Eigen::NoChange);
    prog.le_rhs.conservativeResize(row);

    Eigen::RowVectorXd ones = Eigen::RowVectorXd::Ones(n + 1);
    ones(n) = 0.0;
    prog.add_eq(ones, 1.0);
    return prog;
}

std::vector<double> clean_weights(const std::vector<double>& x, std::size_t n) {
    std::vector<double> w(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    double sum = 0.0;
    for (double& v : w) {
        v = std::max(0.0, v);
        sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
}

}  // namespace

BwmSolution apply_bwm(const BwmProblem& problem) {
    const std::size_t n = problem.size();
    if (n == 1) {
        return {WeightVector({1.0}, problem.criterion_names()), 0.0};
    }
    lp::LpSolution sol;
    try {
        sol = lp::solve(bwm_program(problem));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Infeasible || e.kind() == ErrorKind::Unbounded) {
            throw Error(ErrorKind::Infeasible, std::string("internal error: BWM program rejected: ") + e.what());
        }
        throw;
    }
    return {WeightVector(clean_weights(sol.x, n), problem.criterion_names()), std::max(0.0, sol.x[n])};
}

std::vector<WeightInterval> bwm_weight_intervals(const BwmProblem& problem) {
    const std::size_t n = problem.size();
    if (n == 1) return {{1.0, 1.0}};
    const BwmSolution best = apply_bwm(problem);

    auto prog = bwm_program(problem);
    const auto xi_index = static_cast<Eigen::Index>(n);
    Eigen::RowVectorXd cap = Eigen::RowVectorXd::Zero(xi_index + 1);
    cap(xi_index) = 1.0;
    prog.add_le(cap, best.xi + 1e-9);

    std::vector<WeightInterval> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        prog.objective.setZero();
        prog.objective(static_cast<Eigen::Index>(j)) = 1.0;
        const double lo = lp::solve(prog).x[j];
        prog.objective(static_cast<Eigen::Index>(j)) = -1.0;
        const double hi = lp::solve(prog).x[j];
        out[j] = {std::max(0.0, lo), std::min(1.0, hi)};
    }
    return out;
}

}  // namespace mcdm
