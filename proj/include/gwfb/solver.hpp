#pragma once

#include <Eigen/Core>

namespace gwfb::detail {

// Small dense convex program shared by the filter-design models:
//
//   minimize   max_i | q(i) + P.row(i) w |  +  alpha * || R w + r0 ||_2
//   subject to Aeq w = beq
//              G w <= g          (elementwise)
//
// Equalities are eliminated through an SVD null-space basis, the minimax term
// goes through its epigraph, and the remaining problem is solved with a
// two-phase log-barrier Newton method. Dimensions are tiny (w has at most a
// dozen entries), so dense linear algebra throughout is fine.
struct ConvexProgram {
    Eigen::MatrixXd P;
    Eigen::VectorXd q;
    double alpha = 0.0;
    Eigen::MatrixXd R;   // 0 rows => no regularization term
    Eigen::VectorXd r0;
    Eigen::MatrixXd Aeq; // 0 rows => unconstrained
    Eigen::VectorXd beq;
    Eigen::MatrixXd G;   // 0 rows => no inequalities
    Eigen::VectorXd g;
};

struct ConvexSolution {
    Eigen::VectorXd w;
    double objective = 0.0;     // minimax_term + alpha * soc_term
    double minimax_term = 0.0;
    double soc_term = 0.0;      // ||R w + r0||_2
};

// Throws InfeasibleError when the constraint set is empty (naming the
// offending block) and NumericError on solver breakdown.
ConvexSolution solve_convex(const ConvexProgram& prob);

}  // namespace gwfb::detail
