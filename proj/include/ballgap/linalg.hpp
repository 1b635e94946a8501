#ifndef BALLGAP_LINALG_HPP_
#define BALLGAP_LINALG_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

// Small dense helpers for the tiny (d <= 8) systems that show up in facet
// geometry. Row-major storage, partial pivoting everywhere.

namespace ballgap::linalg {

using Matrix = std::vector<std::vector<double>>;

// LU factorization with partial pivoting, in place. Returns the permutation
// sign, or 0 if the matrix is numerically singular w.r.t. `tol`.
int lu_factor(Matrix& a, std::vector<int>& perm, double tol = 0.0);

// Determinant via LU. Exact zero is returned for singular input.
double det(Matrix a);

// Solves a*x = b for a single right-hand side using a fresh LU factorization.
// Returns false if the matrix is singular.
bool solve(Matrix a, std::vector<double> b, std::vector<double>& x);

// Solves using a precomputed factorization from lu_factor.
void lu_solve(const Matrix& lu, const std::vector<int>& perm,
              const std::vector<double>& b, std::vector<double>& x);

// Smallest eigenvalue of a symmetric matrix via cyclic Jacobi rotations.
double min_eigenvalue_sym(Matrix a);

// Cholesky factorization a = l * l^t of a symmetric positive definite matrix,
// lower triangle returned in `l`. Returns false if a pivot falls below `tol`.
bool cholesky(const Matrix& a, Matrix& l, double tol = 0.0);

// Normal of the affine hull of d points in R^d (generalized cross product of
// the difference vectors). Not normalized; zero vector means degenerate.
std::vector<double> affine_normal(const std::vector<std::vector<double>>& pts);

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace ballgap::linalg

#endif  // BALLGAP_LINALG_HPP_
