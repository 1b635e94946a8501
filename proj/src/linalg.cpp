#include "ballgap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ballgap::linalg {

int lu_factor(Matrix& a, std::vector<int>& perm, double tol) {
  const std::size_t n = a.size();
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::fabs(a[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::fabs(a[i][k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= tol) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      std::swap(perm[piv], perm[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      a[i][k] = m;
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= m * a[k][j];
    }
  }
  return sign;
}

double det(Matrix a) {
  std::vector<int> perm;
  const int sign = lu_factor(a, perm);
  if (sign == 0) return 0.0;
  double d = sign;
  for (std::size_t i = 0; i < a.size(); ++i) d *= a[i][i];
  return d;
}

void lu_solve(const Matrix& lu, const std::vector<int>& perm,
              const std::vector<double>& b, std::vector<double>& x) {
  const std::size_t n = lu.size();
  x.resize(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[static_cast<std::size_t>(perm[i])];
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu[i][j] * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= lu[ii][j] * x[j];
    x[ii] /= lu[ii][ii];
  }
}

bool solve(Matrix a, std::vector<double> b, std::vector<double>& x) {
  std::vector<int> perm;
  if (lu_factor(a, perm) == 0) return false;
  lu_solve(a, perm, b, x);
  return true;
}

double min_eigenvalue_sym(Matrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  double lo = a[0][0];
  for (std::size_t i = 1; i < n; ++i) lo = std::min(lo, a[i][i]);
  return lo;
}

bool cholesky(const Matrix& a, Matrix& l, double tol) {
  const std::size_t n = a.size();
  l.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j][j];
    for (std::size_t k = 0; k < j; ++k) diag -= l[j][k] * l[j][k];
    if (diag <= tol) return false;
    l[j][j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      l[i][j] = s / l[j][j];
    }
  }
  return true;
}

std::vector<double> affine_normal(const std::vector<std::vector<double>>& pts) {
  const std::size_t d = pts[0].size();
  // Rows of B are the d-1 difference vectors; the normal components are the
  // signed maximal minors of B.
  Matrix b(d - 1, std::vector<double>(d));
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (std::size_t j = 0; j < d; ++j) b[i][j] = pts[i + 1][j] - pts[0][j];
  std::vector<double> normal(d, 0.0);
  Matrix minor(d - 1, std::vector<double>(d - 1));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i + 1 < d; ++i) {
      std::size_t col = 0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j == k) continue;
        minor[i][col++] = b[i][j];
      }
    }
    const double m = (d == 1) ? 1.0 : det(minor);
    normal[k] = ((k % 2 == 0) ? 1.0 : -1.0) * m;
  }
  return normal;
}

}  // namespace ballgap::linalg
