#pragma once

#include "difem/sparse.hpp"

#include <stdexcept>

namespace difem {

enum class KrylovMethod { cg, bicgstab2 };
enum class Preconditioner { none, block_jacobi };

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

struct SolverDiverged : std::runtime_error {
  double final_residual;
  explicit SolverDiverged(double res)
      : std::runtime_error("Krylov solver did not converge; final relative residual " +
                           std::to_string(res)),
        final_residual(res) {}
};

// Solves A x = rhs to a true relative residual ||b - Ax||/||b|| <= tol.
// Throws SolverDiverged when max_iter is exhausted.
SolveStats solve_krylov(const SparseSystem& sys, std::vector<double>& x, double tol = 1e-10,
                        int max_iter = 100000, KrylovMethod method = KrylovMethod::cg,
                        Preconditioner precond = Preconditioner::block_jacobi);

}  // namespace difem
