#pragma once

#include <vector>

#include "mcdm/core.hpp"

namespace mcdm::lp {

/**
 * minimize    objective' x
 * subject to  le_matrix x <= le_rhs
 *             eq_matrix x  = eq_rhs
 *             x >= 0
 *
 * Either constraint block may have zero rows; its column count must still
 * match the objective length.
 */
struct LinearProgram {
    Eigen::VectorXd objective;
    Matrix le_matrix;
    Eigen::VectorXd le_rhs;
    Matrix eq_matrix;
    Eigen::VectorXd eq_rhs;

    /// Empty program over `variables` unknowns.
    static LinearProgram with_variables(Eigen::Index variables);
    void add_le(const Eigen::RowVectorXd& row, double rhs);
    void add_eq(const Eigen::RowVectorXd& row, double rhs);
};

struct SimplexOptions {
    double pivot_tolerance = 1e-10;
    /// Phase-1 objective above this means the program has no feasible point.
    double feasibility_tolerance = 1e-9;
    int max_iterations = 100000;
};

struct LpSolution {
    std::vector<double> x;
    double objective = 0.0;
    int iterations = 0;
};

/**
 * Dense two-phase tableau simplex.
 *
 * Dantzig pricing, switching to Bland's rule while pivots are degenerate so
 * the method always terminates. Ratio-test ties go to the lowest basic
 * variable index. Returns a basic (vertex) optimum.
 *
 * Throws Infeasible, Unbounded, or SolverFailure (iteration cap reached).
 */
LpSolution solve(const LinearProgram& program, const SimplexOptions& options = {});

}  // namespace mcdm::lp
