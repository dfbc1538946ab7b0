#include "difem/solver.hpp"

#include <cmath>

namespace difem {
namespace {

double dot_vec(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_vec(const std::vector<double>& a) { return std::sqrt(dot_vec(a, a)); }

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void apply_block_diag(const std::vector<Mat3>& inv, const std::vector<double>& x,
                      std::vector<double>& y) {
  y.resize(x.size());
  for (std::size_t i = 0; i < inv.size(); ++i) {
    const double* b = inv[i].a.data();
    const double* xi = &x[3 * i];
    y[3 * i] = b[0] * xi[0] + b[1] * xi[1] + b[2] * xi[2];
    y[3 * i + 1] = b[3] * xi[0] + b[4] * xi[1] + b[5] * xi[2];
    y[3 * i + 2] = b[6] * xi[0] + b[7] * xi[1] + b[8] * xi[2];
  }
}

SolveStats run_cg(const SparseSystem& sys, std::vector<double>& x, double tol, int max_iter,
                  const std::vector<Mat3>* minv) {
  const std::vector<double>& b = sys.rhs();
  const double bnorm = norm_vec(b);
  if (bnorm == 0.0) {
    x.assign(sys.size(), 0.0);
    return {0, 0.0};
  }
  std::vector<double> r(sys.size()), z, p, q;
  sys.matvec(x, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  if (minv) apply_block_diag(*minv, r, z);
  else z = r;
  p = z;
  double rz = dot_vec(r, z);
  for (int it = 1; it <= max_iter; ++it) {
    sys.matvec(p, q);
    const double alpha = rz / dot_vec(p, q);
    axpy(x, alpha, p);
    axpy(r, -alpha, q);
    if (norm_vec(r) / bnorm <= tol) {
      // confirm with the true residual; recurrence drift can mislead
      sys.matvec(x, q);
      for (std::size_t i = 0; i < q.size(); ++i) q[i] = b[i] - q[i];
      const double true_res = norm_vec(q) / bnorm;
      if (true_res <= tol) return {it, true_res};
      r = q;
    }
    if (minv) apply_block_diag(*minv, r, z);
    else z = r;
    const double rz_new = dot_vec(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }
  sys.matvec(x, q);
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = b[i] - q[i];
  throw SolverDiverged(norm_vec(q) / bnorm);
}

// BiCGstab(l=2), Sleijpen-Fokkema; right-preconditioned when minv is set
// (iterates y with x = M^{-1} y, so residuals match the unpreconditioned ones).
SolveStats run_bicgstab2(const SparseSystem& sys, std::vector<double>& x, double tol,
                         int max_iter, const std::vector<Mat3>* minv) {
  const std::vector<double>& b = sys.rhs();
  const double bnorm = norm_vec(b);
  if (bnorm == 0.0) {
    x.assign(sys.size(), 0.0);
    return {0, 0.0};
  }
  const std::size_t n = sys.size();
  std::vector<double> tmp(n);
  auto op = [&](const std::vector<double>& v, std::vector<double>& out) {
    if (minv) {
      apply_block_diag(*minv, v, tmp);
      sys.matvec(tmp, out);
    } else {
      sys.matvec(v, out);
    }
  };

  std::vector<double> y(n, 0.0);  // preconditioned unknown, zero start
  std::vector<double> r = b;
  std::vector<double> rt = r, u(n, 0.0), v(n), w(n), s(n);
  double rho0 = 1.0, alpha = 0.0, omega2 = 1.0;
  for (int it = 1; it <= max_iter; ++it) {
    rho0 = -omega2 * rho0;
    // even BiCG step
    double rho1 = dot_vec(r, rt);
    double beta = alpha * rho1 / rho0;
    rho0 = rho1;
    for (std::size_t i = 0; i < n; ++i) u[i] = r[i] - beta * u[i];
    op(u, v);
    alpha = rho0 / dot_vec(v, rt);
    axpy(r, -alpha, v);
    op(r, s);
    axpy(y, alpha, u);
    // odd BiCG step
    rho1 = dot_vec(s, rt);
    beta = alpha * rho1 / rho0;
    rho0 = rho1;
    for (std::size_t i = 0; i < n; ++i) v[i] = s[i] - beta * v[i];
    op(v, w);
    alpha = rho0 / dot_vec(w, rt);
    for (std::size_t i = 0; i < n; ++i) u[i] = r[i] - beta * u[i];
    axpy(r, -alpha, v);
    axpy(s, -alpha, w);
    axpy(y, alpha, u);
    // GCR(2) part
    double w1 = dot_vec(r, s);
    const double mu = dot_vec(s, s);
    const double nu = dot_vec(s, w);
    double tau = dot_vec(w, w);
    double w2 = dot_vec(r, w);
    tau -= nu * nu / mu;
    w2 = (w2 - nu * w1 / mu) / tau;
    w1 = (w1 - nu * w2) / mu;
    axpy(y, w1, r);
    axpy(y, w2, s);
    axpy(r, -w1, s);
    axpy(r, -w2, w);
    for (std::size_t i = 0; i < n; ++i) u[i] -= w1 * v[i] + w2 * w[i];

    if (norm_vec(r) / bnorm <= tol) {
      if (minv) apply_block_diag(*minv, y, x);
      else x = y;
      sys.matvec(x, tmp);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = b[i] - tmp[i];
      const double true_res = norm_vec(tmp) / bnorm;
      if (true_res <= tol) return {it, true_res};
      // b - A M^{-1} y equals the true residual, so continuing with it is valid
      r = tmp;
    }
  }
  if (minv) apply_block_diag(*minv, y, x);
  else x = y;
  sys.matvec(x, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = b[i] - tmp[i];
  throw SolverDiverged(norm_vec(tmp) / bnorm);
}

}  // namespace

SolveStats solve_krylov(const SparseSystem& sys, std::vector<double>& x, double tol, int max_iter,
                        KrylovMethod method, Preconditioner precond) {
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("solve_krylov: tol must be in (0,1)");
  if (x.size() != sys.size()) x.assign(sys.size(), 0.0);
  std::vector<Mat3> minv;
  const std::vector<Mat3>* mp = nullptr;
  if (precond == Preconditioner::block_jacobi) {
    minv = sys.diagonal_block_inverses();
    mp = &minv;
  }
  if (method == KrylovMethod::cg) return run_cg(sys, x, tol, max_iter, mp);
  return run_bicgstab2(sys, x, tol, max_iter, mp);
}

}  // namespace difem
