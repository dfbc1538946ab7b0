#pragma once

#include "difem/geometry_field.hpp"
#include "difem/quadrature.hpp"
#include "difem/solver.hpp"
#include "difem/sparse.hpp"

#include <stdexcept>

namespace difem {

struct DiffuseProblemConfig {
  double c_pen = 10.0;    // penalty C_N = c_pen / h^2
  double h = 0.0;         // interface mesh size entering C_N
  double delta = 1e-6;    // bulk regularization
  double tol = 1e-10;     // relative residual
  int max_iter = 200000;
  KrylovMethod method = KrylovMethod::cg;
  Preconditioner precond = Preconditioner::block_jacobi;
  double weight_cutoff = 1e-14;  // skip band terms where W is below this

  double penalty_factor() const {
    if (!(h > 0.0)) throw std::invalid_argument("DiffuseProblemConfig: h must be positive");
    if (!(c_pen > 0.0 && delta > 0.0 && tol > 0.0 && tol < 1.0))
      throw std::invalid_argument("DiffuseProblemConfig: invalid constants");
    return c_pen / (h * h);
  }
};

// The four pieces of the discrete system H + P + R = F. Each accumulates
// into an already-patterned SparseSystem, so the pieces can be assembled and
// inspected independently.

// H: int W Pi_IJ dK U_I dK Psi_J + int W Pi_IJ U_I Psi_J
void assemble_helmholtz(const TetMesh& mesh, const DiscreteGeometry& geom,
                        const DiffuseProblemConfig& cfg, SparseSystem& sys);
// P: C_N int W (nu.U)(nu.Psi)
void assemble_penalty(const TetMesh& mesh, const DiscreteGeometry& geom,
                      const DiffuseProblemConfig& cfg, SparseSystem& sys);
// R: delta int dK U_I dK Psi_I over the whole box
void assemble_regularization(const TetMesh& mesh, const DiffuseProblemConfig& cfg,
                             SparseSystem& sys);
// F: int W(phi) ext[grad u] : Pi[grad Psi] + int W(phi) U . Pi[Psi], with
// analytic phi, Pi and manufactured data.
void assemble_rhs(const TetMesh& mesh, const ManufacturedSolution& exact,
                  const InterfaceProfile& profile, const DiffuseProblemConfig& cfg,
                  SparseSystem& sys);

struct HelmholtzSolution {
  VectorField u;
  SolveStats stats;
  std::size_t dofs = 0;
};

HelmholtzSolution solve_problem(const TetMesh& mesh, const DiscreteGeometry& geom,
                                const DiffuseProblemConfig& cfg);

}  // namespace difem
