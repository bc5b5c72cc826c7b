#include "spx/cg_solver.hpp"

#include "spx/error.hpp"

namespace spx {

namespace {

double relative_residual(const RowMatrix& a, const MultiVector& b, const MultiVector& x,
                         double b_norm) {
  MultiVector r(a.operator_range_map(), 1);
  a.multiply(false, x, r);
  r.update(1.0, b, -1.0);
  return r.norm2()[0] / b_norm;
}

}  // namespace

SolveReport cg_solve(const RowMatrix& a, const MultiVector& b, MultiVector& x, double tol,
                     int max_iters, Preconditioner preconditioner) {
  if (!(tol > 0.0)) throw_error(ErrorKind::ContractViolation, "cg_solve: tolerance must be positive");
  if (max_iters < 0) throw_error(ErrorKind::ContractViolation, "cg_solve: negative iteration limit");
  if (!a.filled()) throw_error(ErrorKind::Lifecycle, "cg_solve: matrix is not filled");
  require_type_match(a.row_matrix_row_map(), b.map(), "cg_solve");
  require_type_match(a.row_matrix_row_map(), x.map(), "cg_solve");
  if (b.num_vectors() != 1 || x.num_vectors() != 1) {
    throw_error(ErrorKind::ContractViolation, "cg_solve: single right-hand side only");
  }
  if (a.num_global_rows64() != a.num_global_cols64()) {
    throw_error(ErrorKind::ContractViolation, "cg_solve: matrix is not square");
  }

  SolveReport report;
  const double b_norm = b.norm2()[0];
  if (b_norm == 0.0) {
    x.put_scalar(0.0);
    report.converged = true;
    return report;
  }

  const BlockMap& map = a.operator_domain_map();
  Vector inv_diag(map);
  if (preconditioner == Preconditioner::Jacobi) {
    a.extract_diagonal_copy(inv_diag);
    int zero = 0;
    for (double& d : inv_diag.values()) {
      if (d == 0.0) zero = 1;
      else d = 1.0 / d;
    }
    if (map.comm().max_all(zero) != 0) {
      throw_error(ErrorKind::ContractViolation, "cg_solve: Jacobi needs a nonzero diagonal");
    }
  }
  auto precondition = [&](const MultiVector& r, MultiVector& z) {
    if (preconditioner == Preconditioner::Jacobi) z.multiply_elementwise(1.0, inv_diag, r, 0.0);
    else z.update(1.0, r, 0.0);
  };

  MultiVector r(map, 1), z(map, 1), p(map, 1), ap(map, 1);
  a.multiply(false, x, ap);
  r.update(1.0, b, -1.0, ap, 0.0);
  bool converged = r.norm2()[0] / b_norm <= tol;
  precondition(r, z);
  p.update(1.0, z, 0.0);
  double rz = r.dot(z)[0];

  int k = 0;
  while (!converged && k < max_iters) {
    a.multiply(false, p, ap);
    const double alpha = rz / p.dot(ap)[0];
    x.update(alpha, p, 1.0);
    r.update(-alpha, ap, 1.0);
    ++k;
    if (r.norm2()[0] / b_norm <= tol) {
      converged = true;
      break;
    }
    precondition(r, z);
    const double rz_next = r.dot(z)[0];
    p.update(1.0, z, rz_next / rz);
    rz = rz_next;
  }

  report.iterations = k;
  report.final_relative_residual = relative_residual(a, b, x, b_norm);
  report.converged = converged && report.final_relative_residual <= tol * (1.0 + 1e-12);
  return report;
}

}  // namespace spx
