#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "signednet/eigen_gen.hpp"
#include "signednet/eigen_sym.hpp"
#include "signednet/errors.hpp"
#include "signednet/graph.hpp"
#include "signednet/laplacian.hpp"
#include "signednet/matrix.hpp"

namespace signednet {

/// Everything downstream code needs to know about one matrix's spectrum.
/// Eigenvalues are sorted by real part, then imaginary part. The extremal
/// (smallest-real-part) eigenvector pair is included when that eigenvalue is
/// real; for symmetric matrices left == right.
struct SpectralReport {
  std::vector<std::complex<double>> eigenvalues;
  int n_negative = 0;
  int n_zero = 0;
  int n_positive = 0;
  double eps_zero = 0.0;
  std::optional<Vec> v1_right;
  std::optional<Vec> v1_left;
  double residual = 0.0;

  double min_real_part() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front().real(); }
};

namespace detail {

inline double zero_band(const Matrix& m) { return 1e-8 * m.frobenius_norm(); }

inline void check_symmetric(const Matrix& m) {
  double tol = 1e-8 * std::max(1.0, m.frobenius_norm());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol)
        fail(Err::NotSymmetric, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") differs from its mirror");
}

}  // namespace detail

/// Symmetric path: cyclic Jacobi. Rejects matrices that are not symmetric
/// within 1e-8 of their norm; symmetrizes the residual rounding before
/// solving.
inline SpectralReport eig_symmetric(const SignedLaplacian& l) {
  detail::check_symmetric(l.m);
  int n = l.n();
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (l.m(i, j) + l.m(j, i));

  SymEig e = jacobi_eig(a);
  SpectralReport r;
  r.eps_zero = detail::zero_band(l.m);
  for (double v : e.values) {
    r.eigenvalues.push_back({v, 0.0});
    if (v < -r.eps_zero)
      ++r.n_negative;
    else if (std::abs(v) <= r.eps_zero)
      ++r.n_zero;
    else
      ++r.n_positive;
  }
  Vec v1(size_t(n), 0.0);
  for (int i = 0; i < n; ++i) v1[size_t(i)] = e.vectors(i, 0);
  Vec resid = l.m * v1;
  for (int i = 0; i < n; ++i) resid[size_t(i)] -= e.values.front() * v1[size_t(i)];
  r.residual = two_norm(resid);
  r.v1_right = v1;
  r.v1_left = std::move(v1);
  return r;
}

/// General path: Francis QR for values, inverse iteration for the extremal
/// pair. The left eigenvector is scaled so that (v_left . v_right) = 1; both
/// are omitted when the extremal eigenvalue is complex or the refinement
/// fails to lock on.
inline SpectralReport eig_general(const SignedLaplacian& l) {
  SpectralReport r;
  r.eigenvalues = general_eigenvalues(l.m);
  r.eps_zero = detail::zero_band(l.m);
  for (const std::complex<double>& z : r.eigenvalues) {
    if (z.real() < -r.eps_zero)
      ++r.n_negative;
    else if (std::abs(z.real()) <= r.eps_zero)
      ++r.n_zero;
    else
      ++r.n_positive;
  }
  if (r.eigenvalues.empty()) return r;

  std::complex<double> lam = r.eigenvalues.front();
  if (std::abs(lam.imag()) > r.eps_zero) return r;  // complex extremal pair: no real vectors

  try {
    Vec right = inverse_iteration(l.m, lam.real());
    Matrix at = l.m.transposed();
    // The transpose shares the spectrum; aim at its value nearest ours to
    // absorb rounding differences between the two QR runs.
    std::vector<std::complex<double>> teig = general_eigenvalues(at);
    double target = lam.real();
    double best = std::numeric_limits<double>::infinity();
    for (const std::complex<double>& z : teig) {
      double d = std::abs(z - lam);
      if (d < best) {
        best = d;
        target = z.real();
      }
    }
    Vec left = inverse_iteration(at, target);

    Vec res_r = l.m * right;
    Vec res_l = at * left;
    for (int i = 0; i < l.n(); ++i) {
      res_r[size_t(i)] -= lam.real() * right[size_t(i)];
      res_l[size_t(i)] -= target * left[size_t(i)];
    }
    r.residual = std::max(two_norm(res_r), two_norm(res_l));

    double align = dot(left, right);
    if (std::abs(align) > 1e-10) {
      for (double& x : left) x /= align;
      r.v1_right = std::move(right);
      r.v1_left = std::move(left);
    } else {
      // Nearly orthogonal pair (defective eigenvalue): report the right
      // vector alone rather than an explosive normalization.
      r.v1_right = std::move(right);
    }
  } catch (const Error& e) {
    if (e.code() != Err::NoConvergence) throw;
  }
  return r;
}

/// Dispatch on the graph's directedness.
inline SpectralReport spectral_report(const SignedLaplacian& l) {
  return l.symmetric() ? eig_symmetric(l) : eig_general(l);
}

/// Count of eigenvalues with real part below -eps_zero. For undirected
/// graphs this is the symmetric-matrix inertia; directed graphs count by
/// real part.
inline int inertia_negative(const SignedLaplacian& l) {
  if (l.symmetric()) {
    detail::check_symmetric(l.m);
    double eps = detail::zero_band(l.m);
    int count = 0;
    for (double v : jacobi_eig(l.m).values)
      if (v < -eps) ++count;
    return count;
  }
  double eps = detail::zero_band(l.m);
  int count = 0;
  for (const std::complex<double>& z : general_eigenvalues(l.m))
    if (z.real() < -eps) ++count;
  return count;
}

/// Two-sided counting bound on the number of negative Laplacian eigenvalues,
/// obtained purely from connectivity: components of the positive part push
/// from below, components of the negative part cap from above.
struct InertiaBounds {
  int lower = 0;
  int upper = 0;
  int positive_components = 0;  // of the positive-edge subgraph
  int negative_components = 0;  // of the negative-edge subgraph
};

inline InertiaBounds inertia_counting_bounds(const SignedGraph& g) {
  if (g.directed()) fail(Err::UndirectedOnly, "counting bounds are undirected-only");
  if (!is_connected(g)) fail(Err::DisconnectedInput, "counting bounds need a connected graph");
  auto [gp, gm] = split_components(g);
  InertiaBounds b;
  b.positive_components = count_components(gp).count;
  b.negative_components = count_components(gm).count;
  b.lower = b.positive_components - 1;
  b.upper = g.n() - b.negative_components;
  return b;
}

/// What the negative cut-set structure alone says about the count of
/// negative eigenvalues, without touching the spectrum.
struct InertiaPrediction {
  enum class Kind { Exact, Bounded, Indeterminate } kind = Kind::Indeterminate;
  int lower = 0;
  int upper = 0;
  std::string note;

  bool exact() const { return kind == Kind::Exact; }
};

inline InertiaPrediction predict_inertia_from_cut(const SignedGraph& g) {
  if (g.directed()) fail(Err::UndirectedOnly, "cut-based inertia prediction is undirected-only");
  NegativeCut cut = classify_negative_cut(g);  // raises DisconnectedInput when needed
  InertiaPrediction p;
  switch (cut.kind) {
    case NegativeCut::Kind::NoNegativeEdges:
      p.kind = InertiaPrediction::Kind::Exact;
      p.lower = p.upper = 0;
      p.note = "no negative edges: the spectrum is an unsigned Laplacian's";
      return p;
    case NegativeCut::Kind::CutSetAllBridges:
      // Each negative bridge contributes exactly one sign flip: removal
      // leaves size+1 positive islands (lower bound), and a forest of
      // bridges caps the other side at the same number.
      p.kind = InertiaPrediction::Kind::Exact;
      p.lower = p.upper = cut.size();
      p.note = "all " + std::to_string(cut.size()) +
               " negative edges are bridges: the count is pinned exactly";
      return p;
    case NegativeCut::Kind::CutSetMixed: {
      InertiaBounds b = inertia_counting_bounds(g);
      p.lower = b.lower;
      p.upper = std::min(b.upper, cut.size());
      p.kind = (p.lower == p.upper) ? InertiaPrediction::Kind::Exact
                                    : InertiaPrediction::Kind::Bounded;
      p.note = "negative edges disconnect but some sit on cycles: interval only";
      return p;
    }
    case NegativeCut::Kind::NotACutSet: {
      InertiaBounds b = inertia_counting_bounds(g);
      p.lower = b.lower;
      p.upper = b.upper;
      p.kind = InertiaPrediction::Kind::Indeterminate;
      p.note = "negative edges do not disconnect: structure alone cannot pin the count";
      return p;
    }
  }
  return p;
}

}  // namespace signednet
