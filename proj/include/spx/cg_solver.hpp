#ifndef SPX_CG_SOLVER_HPP
#define SPX_CG_SOLVER_HPP

#include "spx/multi_vector.hpp"
#include "spx/row_matrix.hpp"

namespace spx {

enum class Preconditioner { None, Jacobi };

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  /// ||b - A x|| / ||b||, recomputed after the iteration stops.
  double final_relative_residual = 0.0;
};

/// Preconditioned conjugate gradients for a symmetric positive definite A.
/// x holds the initial guess on entry. Uses only the suffix-64 surface of A,
/// so it runs unchanged at both widths and in every build mode. Collective.
SolveReport cg_solve(const RowMatrix& a, const MultiVector& b, MultiVector& x, double tol,
                     int max_iters, Preconditioner preconditioner = Preconditioner::None);

}  // namespace spx

#endif  // SPX_CG_SOLVER_HPP
