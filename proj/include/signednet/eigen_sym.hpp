#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "signednet/errors.hpp"
#include "signednet/matrix.hpp"

namespace signednet {

/// Full symmetric eigendecomposition: values ascending, vectors(.,j) is the
/// orthonormal eigenvector for values[j], sign-fixed so each column's
/// largest-magnitude entry is positive.
struct SymEig {
  Vec values;
  Matrix vectors;
};

/// Cyclic Jacobi with the stable two-angle update. Quadratic convergence
/// once the off-diagonal mass is small; a handful of sweeps suffice for the
/// matrix sizes this library sees, 64 is a generous ceiling.
inline SymEig jacobi_eig(Matrix a, int max_sweeps = 64) {
  int n = a.rows();
  if (n != a.cols()) fail(Err::NotSymmetric, "matrix is not square");
  Matrix v = Matrix::identity(n);
  double scale = std::max(a.frobenius_norm(), 1e-300);

  auto off_mass = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return s;
  };

  double stop = 1e-14 * scale;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (std::sqrt(2.0 * off_mass()) <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          double arp = a(r, p), arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        for (int r = 0; r < n; ++r) {
          double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (sweep == max_sweeps) fail(Err::NoConvergence, "rotations did not settle");

  std::vector<int> order(size_t(n), 0);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  SymEig out;
  out.values.resize(size_t(n));
  out.vectors = Matrix(n, n);
  for (int jj = 0; jj < n; ++jj) {
    int src = order[size_t(jj)];
    out.values[size_t(jj)] = a(src, src);
    Vec col(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) col[size_t(i)] = v(i, src);
    normalize_sign(col);
    for (int i = 0; i < n; ++i) out.vectors(i, jj) = col[size_t(i)];
  }
  return out;
}

/// Smallest eigenvalue only; convenience for definiteness checks.
inline double min_eigenvalue_sym(const Matrix& a) { return jacobi_eig(a).values.front(); }

}  // namespace signednet
