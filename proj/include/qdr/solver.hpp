// Jacobi-preconditioned conjugate gradients and inverse power iteration for
// the generalized symmetric eigenproblem.
#pragma once

#include <cmath>
#include <vector>

#include "qdr/sparse.hpp"

namespace qdr {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Conjugate gradients with a Jacobi preconditioner on a symmetric positive
/// definite matrix; converged when the residual drops below tol * |b|.
inline CgResult cg_solve(const SparseMatrix& A, const std::vector<double>& b,
                         double tol = 1e-10, int max_iter = -1) {
  const std::size_t n = b.size();
  if (max_iter < 0) max_iter = static_cast<int>(10 * n + 100);
  CgResult result;
  result.x.assign(n, 0.0);
  const double norm_b = norm2(b);
  if (norm_b == 0.0) return result;

  std::vector<double> inv_diag = A.diagonal();
  for (double& d : inv_diag) d = (d != 0.0) ? 1.0 / d : 1.0;

  std::vector<double> r = b;
  std::vector<double> z(n), p(n), ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);

  for (int it = 0; it < max_iter; ++it) {
    A.apply(p, ap);
    const double alpha = rz / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      result.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    result.iterations = it + 1;
    result.relative_residual = norm2(r) / norm_b;
    if (result.relative_residual <= tol) return result;
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw NoConvergenceError("conjugate gradients did not reach the tolerance");
}

struct EigenResult {
  double lambda = 0.0;
  std::vector<double> vector;  // normalized against the mass matrix
  double residual_norm = 0.0;  // |A x - lambda M x|
  int sweeps = 0;
};

/// Inverse power iteration on A x = lambda M x for the smallest eigenvalue;
/// every sweep solves with A by conjugate gradients.  Converged when the
/// Rayleigh quotient changes by less than tol between sweeps and the relative
/// eigen-residual is below 100 tol (the Rayleigh quotient settles quadratically
/// faster than the vector, so the residual guard is the binding one).
inline EigenResult smallest_eigenpair(const SparseMatrix& A, const SparseMatrix& M,
                                      double tol = 1e-10, int max_sweeps = 200) {
  const std::size_t n = static_cast<std::size_t>(A.rows());
  std::vector<double> x(n, 1.0);
  // Deterministic mild asymmetry so the start is never M-orthogonal to the
  // target eigenvector.
  for (std::size_t i = 0; i < n; ++i) x[i] += 1e-3 * std::sin(static_cast<double>(i) + 1.0);

  std::vector<double> mx(n), ax(n);
  M.apply(x, mx);
  double mnorm = std::sqrt(dot(x, mx));
  for (std::size_t i = 0; i < n; ++i) x[i] /= mnorm;

  EigenResult result;
  double lambda_prev = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    M.apply(x, mx);
    x = cg_solve(A, mx, 1e-12).x;
    M.apply(x, mx);
    mnorm = std::sqrt(dot(x, mx));
    for (std::size_t i = 0; i < n; ++i) x[i] /= mnorm;

    M.apply(x, mx);
    A.apply(x, ax);
    const double lambda = dot(x, ax) / dot(x, mx);
    result.sweeps = sweep + 1;
    std::vector<double> res(n);
    for (std::size_t i = 0; i < n; ++i) res[i] = ax[i] - lambda * mx[i];
    const double residual = norm2(res);
    const double scale = norm2(ax) + std::abs(lambda) * norm2(mx);
    if (sweep > 0 && std::abs(lambda - lambda_prev) < tol * std::max(1.0, std::abs(lambda)) &&
        residual <= 100.0 * tol * scale) {
      result.lambda = lambda;
      result.vector = x;
      result.residual_norm = residual;
      return result;
    }
    lambda_prev = lambda;
  }
  throw NoConvergenceError("inverse power iteration did not settle");
}

}  // namespace qdr
