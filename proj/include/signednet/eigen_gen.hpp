#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "signednet/errors.hpp"
#include "signednet/matrix.hpp"

namespace signednet {
namespace detail {

/// Diagonal-similarity balancing (radix-2 scaling, no permutations). Evens
/// out row/column norms so the QR iteration works on a better-conditioned
/// matrix. Eigenvalues are untouched.
inline void balance_inplace(Matrix& a) {
  int n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / 2.0, f = 1.0;
      double s = c + r;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        double ginv = 1.0 / f;
        for (int j = 0; j < n; ++j) a(i, j) *= ginv;
        for (int j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

/// Householder reduction to upper Hessenberg form, in place. The transform
/// is orthogonal-similar, so the spectrum is preserved; we never need the
/// accumulated Q because eigenvectors are recovered later by inverse
/// iteration on the original matrix.
inline void hessenberg_inplace(Matrix& a) {
  int n = a.rows();
  std::vector<double> v(size_t(n), 0.0);
  for (int k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (int i = k + 1; i < n; ++i) norm2 += a(i, k) * a(i, k);
    double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    double alpha = a(k + 1, k) >= 0.0 ? -norm : norm;
    for (int i = k + 1; i < n; ++i) v[size_t(i)] = a(i, k);
    v[size_t(k + 1)] -= alpha;
    double vv = 0.0;
    for (int i = k + 1; i < n; ++i) vv += v[size_t(i)] * v[size_t(i)];
    if (vv == 0.0) continue;

    for (int j = k; j < n; ++j) {  // A <- P A
      double s = 0.0;
      for (int i = k + 1; i < n; ++i) s += v[size_t(i)] * a(i, j);
      s = 2.0 * s / vv;
      for (int i = k + 1; i < n; ++i) a(i, j) -= s * v[size_t(i)];
    }
    for (int i = 0; i < n; ++i) {  // A <- A P
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += a(i, j) * v[size_t(j)];
      s = 2.0 * s / vv;
      for (int j = k + 1; j < n; ++j) a(i, j) -= s * v[size_t(j)];
    }
    a(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

/// Eigenvalues of a 2x2 block, solved via the stable half-trace form.
inline void eig_2x2(double a, double b, double c, double d, std::complex<double>& l1,
                    std::complex<double>& l2) {
  double m = 0.5 * (a + d);
  double det = a * d - b * c;
  double disc = m * m - det;
  if (disc >= 0.0) {
    double r = std::sqrt(disc);
    double big = (m >= 0.0) ? m + r : m - r;
    l1 = {big, 0.0};
    l2 = {big == 0.0 ? 0.0 : det / big, 0.0};
  } else {
    double im = std::sqrt(-disc);
    l1 = {m, im};
    l2 = {m, -im};
  }
}

/// Implicit double-shift (Francis) QR on an upper Hessenberg matrix.
/// Destroys `a`; returns the eigenvalues in deflation order. Gives up after
/// 30 iterations on one block or 30n overall.
inline std::vector<std::complex<double>> hqr_eigenvalues(Matrix& a) {
  int n = a.rows();
  std::vector<std::complex<double>> eig;
  eig.reserve(size_t(n));

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

  int nn = n - 1;
  double t = 0.0;  // accumulated exceptional shifts
  int total_its = 0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) + s == s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {  // single root deflates
        eig.push_back({x + t, 0.0});
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {  // 2x2 block deflates
          std::complex<double> l1, l2;
          eig_2x2(y, a(nn - 1, nn), a(nn, nn - 1), x, l1, l2);
          eig.push_back(l1 + t);
          eig.push_back(l2 + t);
          nn -= 2;
        } else {
          if (its == 30 || total_its >= 30 * n)
            fail(Err::NoConvergence, "QR iteration exceeded its budget");
          if (its == 10 || its == 20) {  // exceptional shift
            t += x;
            for (int i = 0; i <= nn; ++i) a(i, i) -= x;
            double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          ++total_its;

          // First column of (H - s1)(H - s2) e1, scanning for a well-placed
          // start row m with two consecutive small subdiagonals above it.
          int m;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (m = nn - 2; m >= l; --m) {
            z = a(m, m);
            double rr = x - z;
            double ss = y - z;
            p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - rr - ss;
            r = a(m + 2, m + 1);
            double sc = std::abs(p) + std::abs(q) + std::abs(r);
            p /= sc;
            q /= sc;
            r /= sc;
            if (m == l) break;
            double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            double v = std::abs(p) *
                       (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u + v == v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }

          // Chase the bulge: 3x3 Householder reflections down the diagonal.
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            double mag = std::sqrt(p * p + q * q + r * r);
            double s = (p >= 0.0) ? mag : -mag;
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {  // row update
              double pp = a(k, j) + q * a(k + 1, j);
              if (k != nn - 1) {
                pp += r * a(k + 2, j);
                a(k + 2, j) -= pp * z;
              }
              a(k + 1, j) -= pp * y;
              a(k, j) -= pp * x;
            }
            int mmin = (nn < k + 3) ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {  // column update
              double pp = x * a(i, k) + y * a(i, k + 1);
              if (k != nn - 1) {
                pp += z * a(i, k + 2);
                a(i, k + 2) -= pp * r;
              }
              a(i, k + 1) -= pp * q;
              a(i, k) -= pp;
            }
          }
        }
      }
    } while (l < nn - 1 && nn >= 0);
  }
  return eig;
}

/// LU with partial pivoting. Pivots smaller than `pivot_floor` are replaced
/// by it (sign-preserving) — deliberate, so a shifted near-singular system
/// stays solvable for inverse iteration.
struct LuFactors {
  Matrix lu;
  std::vector<int> pivot;
};

inline LuFactors lu_decompose(Matrix m, double pivot_floor) {
  int n = m.rows();
  LuFactors f{std::move(m), std::vector<int>(size_t(n), 0)};
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(p, k))) p = i;
    f.pivot[size_t(k)] = p;
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
    if (std::abs(f.lu(k, k)) < pivot_floor)
      f.lu(k, k) = (f.lu(k, k) >= 0.0) ? pivot_floor : -pivot_floor;
    double inv = 1.0 / f.lu(k, k);
    for (int i = k + 1; i < n; ++i) {
      f.lu(i, k) *= inv;
      double lik = f.lu(i, k);
      if (lik == 0.0) continue;
      for (int j = k + 1; j < n; ++j) f.lu(i, j) -= lik * f.lu(k, j);
    }
  }
  return f;
}

inline void lu_solve_inplace(const LuFactors& f, Vec& b) {
  int n = f.lu.rows();
  for (int k = 0; k < n; ++k)
    if (f.pivot[size_t(k)] != k) std::swap(b[size_t(k)], b[size_t(f.pivot[size_t(k)])]);
  for (int i = 1; i < n; ++i) {
    double s = b[size_t(i)];
    for (int j = 0; j < i; ++j) s -= f.lu(i, j) * b[size_t(j)];
    b[size_t(i)] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[size_t(i)];
    for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * b[size_t(j)];
    b[size_t(i)] = s / f.lu(i, i);
  }
}

}  // namespace detail

/// Eigenvalues of a general real square matrix, sorted by real part then
/// imaginary part. Balancing + Hessenberg + implicit double-shift QR.
inline std::vector<std::complex<double>> general_eigenvalues(Matrix a) {
  if (a.rows() != a.cols()) fail(Err::LengthMismatch, "eigenvalues need a square matrix");
  if (a.rows() == 0) return {};
  detail::balance_inplace(a);
  detail::hessenberg_inplace(a);
  std::vector<std::complex<double>> eig = detail::hqr_eigenvalues(a);
  std::sort(eig.begin(), eig.end(), [](const std::complex<double>& x,
                                       const std::complex<double>& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return eig;
}

/// Unit eigenvector for a (real, preferably simple) eigenvalue via inverse
/// iteration on the original matrix. Deterministic start vector; the result
/// is sign-fixed by its largest entry. Throws NoConvergence if the residual
/// never drops to 1e-8 * scale.
inline Vec inverse_iteration(const Matrix& a, double lambda) {
  int n = a.rows();
  double scale = std::max(1.0, a.frobenius_norm());
  Matrix shifted = a;
  for (int i = 0; i < n; ++i) shifted(i, i) -= lambda;
  detail::LuFactors f = detail::lu_decompose(std::move(shifted), 1e-14 * scale);

  std::mt19937_64 rng(0x51573e5fULL);  // fixed: runs must be reproducible
  Vec v(size_t(n), 0.0);
  for (double& x : v) x = std::ldexp(double(rng() >> 11), -53) * 2.0 - 1.0;
  double nv = two_norm(v);
  for (double& x : v) x /= nv;

  double resid = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 16; ++it) {
    Vec w = v;
    detail::lu_solve_inplace(f, w);
    double nw = two_norm(w);
    if (!std::isfinite(nw) || nw == 0.0) break;
    for (double& x : w) x /= nw;
    v = std::move(w);
    Vec r = a * v;
    for (int i = 0; i < n; ++i) r[size_t(i)] -= lambda * v[size_t(i)];
    resid = two_norm(r);
    if (resid <= 1e-12 * scale) break;
  }
  if (!(resid <= 1e-8 * scale))
    fail(Err::NoConvergence, "inverse iteration stalled at residual " + std::to_string(resid));
  normalize_sign(v);
  return v;
}

}  // namespace signednet
