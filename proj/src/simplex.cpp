#include "mcdm/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mcdm::lp {

LinearProgram LinearProgram::with_variables(Eigen::Index variables) {
    LinearProgram p;
    p.objective = Eigen::VectorXd::Zero(variables);
    p.le_matrix = Matrix(0, variables);
    p.le_rhs = Eigen::VectorXd(0);
    p.eq_matrix = Matrix(0, variables);
    p.eq_rhs = Eigen::VectorXd(0);
    return p;
}

namespace {

void append_row(Matrix& m, Eigen::VectorXd& rhs, const Eigen::RowVectorXd& row, double value) {
    if (row.size() != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "constraint row has " + std::to_string(row.size()) +
                                                      " coefficients, program has " + std::to_string(m.cols()) +
                                                      " variables");
    }
    m.conservativeResize(m.rows() + 1, Eigen::NoChange);
    m.row(m.rows() - 1) = row;
    rhs.conservativeResize(rhs.size() + 1);
    rhs(rhs.size() - 1) = value;
}

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Solver {
public:
    Solver(const LinearProgram& p, const SimplexOptions& opt) : opt_(opt) {
        n_ = p.objective.size();
        const Eigen::Index n_le = p.le_matrix.rows();
        const Eigen::Index n_eq = p.eq_matrix.rows();
        if (p.le_matrix.cols() != n_ || p.eq_matrix.cols() != n_ || p.le_rhs.size() != n_le ||
            p.eq_rhs.size() != n_eq) {
            throw Error(ErrorKind::DimensionMismatch, "linear program blocks have inconsistent shapes");
        }
        rows_ = n_le + n_eq;

        // Slack (or surplus) per inequality, artificial per equality and per
        // inequality whose rhs is negative.
        Eigen::Index n_art = n_eq;
        for (Eigen::Index i = 0; i < n_le; ++i) {
            if (p.le_rhs(i) < 0.0) ++n_art;
        }
        slack_begin_ = n_;
        art_begin_ = n_ + n_le;
        cols_ = art_begin_ + n_art;
        rhs_col_ = cols_;

        // Row `rows_` holds reduced costs; the rhs column of that row holds -objective.
        t_ = Tableau::Zero(rows_ + 1, cols_ + 1);
        basis_.assign(static_cast<std::size_t>(rows_), -1);

        Eigen::Index art = art_begin_;
        for (Eigen::Index i = 0; i < n_le; ++i) {
            const double sign = p.le_rhs(i) < 0.0 ? -1.0 : 1.0;
            t_.row(i).head(n_) = sign * p.le_matrix.row(i);
            t_(i, slack_begin_ + i) = sign;
            t_(i, rhs_col_) = sign * p.le_rhs(i);
            if (sign > 0.0) {
                basis_[static_cast<std::size_t>(i)] = slack_begin_ + i;
            } else {
                t_(i, art) = 1.0;
                basis_[static_cast<std::size_t>(i)] = art++;
            }
        }
        for (Eigen::Index e = 0; e < n_eq; ++e) {
            const Eigen::Index i = n_le + e;
            const double sign = p.eq_rhs(e) < 0.0 ? -1.0 : 1.0;
            t_.row(i).head(n_) = sign * p.eq_matrix.row(e);
            t_(i, rhs_col_) = sign * p.eq_rhs(e);
            t_(i, art) = 1.0;
            basis_[static_cast<std::size_t>(i)] = art++;
        }
        if (!t_.allFinite()) {
            throw Error(ErrorKind::InvalidArgument, "linear program contains non-finite coefficients");
        }
        objective_ = p.objective;
    }

    LpSolution run() {
        // Phase 1: minimize the sum of artificials.
        if (cols_ > art_begin_) {
            Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols_);
            phase1.tail(cols_ - art_begin_).setOnes();
            price(phase1);
            iterate(cols_);
            if (-t_(rows_, rhs_col_) > opt_.feasibility_tolerance) {
                throw Error(ErrorKind::Infeasible, "linear program has no feasible point");
            }
            evict_artificials();
        }

        // Phase 2 over structural + slack columns only.
        Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols_);
        phase2.head(n_) = objective_;
        price(phase2);
        iterate(art_begin_);

        LpSolution sol;
        sol.x.assign(static_cast<std::size_t>(n_), 0.0);
        for (Eigen::Index i = 0; i < rows_; ++i) {
            const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
            if (b < n_) sol.x[static_cast<std::size_t>(b)] = std::max(0.0, t_(i, rhs_col_));
        }
        double obj = 0.0;
        for (Eigen::Index j = 0; j < n_; ++j) obj += objective_(j) * sol.x[static_cast<std::size_t>(j)];
        sol.objective = obj;
        sol.iterations = iterations_;
        return sol;
    }

private:
    // Rebuilds the reduced-cost row for cost vector c under the current basis.
    void price(const Eigen::VectorXd& c) {
        t_.row(rows_).setZero();
        t_.row(rows_).head(cols_) = c.transpose();
        for (Eigen::Index i = 0; i < rows_; ++i) {
            const double cb = c(basis_[static_cast<std::size_t>(i)]);
            if (cb != 0.0) t_.row(rows_) -= cb * t_.row(i);
        }
    }

    void pivot(Eigen::Index r, Eigen::Index c) {
        t_.row(r) /= t_(r, c);
        for (Eigen::Index i = 0; i <= rows_; ++i) {
            if (i == r) continue;
            const double f = t_(i, c);
            if (f != 0.0) t_.row(i) -= f * t_.row(r);
        }
        basis_[static_cast<std::size_t>(r)] = c;
        ++iterations_;
    }

    // Pivots until optimal; only columns < column_limit may enter.
    void iterate(Eigen::Index column_limit) {
        bool bland = false;
        while (true) {
            if (iterations_ >= opt_.max_iterations) {
                throw Error(ErrorKind::SolverFailure, "simplex iteration cap of " +
                                                          std::to_string(opt_.max_iterations) + " reached");
            }
            Eigen::Index enter = -1;
            double best = -opt_.pivot_tolerance;
            for (Eigen::Index j = 0; j < column_limit; ++j) {
                const double d = t_(rows_, j);
                if (d < best) {
                    enter = j;
                    if (bland) break;
                    best = d;
                }
            }
            if (enter < 0) return;

            Eigen::Index leave = -1;
            double ratio = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < rows_; ++i) {
                const double a = t_(i, enter);
                if (a <= opt_.pivot_tolerance) continue;
                const double q = t_(i, rhs_col_) / a;
                if (q < ratio || (q == ratio && basis_[static_cast<std::size_t>(i)] <
                                                    basis_[static_cast<std::size_t>(leave)])) {
                    ratio = q;
                    leave = i;
                }
            }
            if (leave < 0) {
                throw Error(ErrorKind::Unbounded, "linear program is unbounded");
            }
            bland = ratio <= opt_.pivot_tolerance;
            pivot(leave, enter);
        }
    }

    // Replaces zero-valued basic artificials by real columns where possible.
    // Rows with no usable column are redundant and keep their artificial at 0.
    void evict_artificials() {
        for (Eigen::Index i = 0; i < rows_; ++i) {
            if (basis_[static_cast<std::size_t>(i)] < art_begin_) continue;
            Eigen::Index best = -1;
            double mag = opt_.pivot_tolerance;
            for (Eigen::Index j = 0; j < art_begin_; ++j) {
                if (std::abs(t_(i, j)) > mag) {
                    mag = std::abs(t_(i, j));
                    best = j;
                }
            }
            if (best >= 0) pivot(i, best);
        }
    }

    SimplexOptions opt_;
    Eigen::Index n_ = 0, rows_ = 0, cols_ = 0, slack_begin_ = 0, art_begin_ = 0, rhs_col_ = 0;
    Tableau t_;
    std::vector<Eigen::Index> basis_;
    Eigen::VectorXd objective_;
    int iterations_ = 0;
};

}  // namespace

void LinearProgram::add_le(const Eigen::RowVectorXd& row, double rhs) { append_row(le_matrix, le_rhs, row, rhs); }

void LinearProgram::add_eq(const Eigen::RowVectorXd& row, double rhs) { append_row(eq_matrix, eq_rhs, row, rhs); }

LpSolution solve(const LinearProgram& program, const SimplexOptions& options) {
    return Solver(program, options).run();
}

}  // namespace mcdm::lp
