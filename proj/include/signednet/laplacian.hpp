#pragma once

#include <optional>
#include <vector>

#include "signednet/graph.hpp"
#include "signednet/matrix.hpp"

namespace signednet {

/// Weight matrix W with w_uv in row u. Undirected edges contribute
/// symmetrically.
inline Matrix weight_matrix(const SignedGraph& g) {
  Matrix w(g.n(), g.n());
  for (const Edge& e : g.edges()) {
    w(e.u, e.v) = e.w;
    if (!g.directed()) w(e.v, e.u) = e.w;
  }
  return w;
}

/// Signed Laplacian of a graph, optionally with a diagonal compensation
/// already folded in. Row sums of the bare Laplacian are zero by
/// construction: l_ii = sum_k w_ik and l_ij = -w_ij.
struct SignedLaplacian {
  Matrix m;
  SignedGraph source;
  std::optional<Vec> compensation;

  bool symmetric() const { return !source.directed(); }
  int n() const { return m.rows(); }
};

inline SignedLaplacian laplacian(const SignedGraph& g) {
  Matrix w = weight_matrix(g);
  int n = g.n();
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      row += w(i, j);
      l(i, j) = -w(i, j);
    }
    l(i, i) = row;
  }
  return {std::move(l), g, std::nullopt};
}

/// L + diag(k): per-node self-damping added on the diagonal.
inline SignedLaplacian compensated_laplacian(const SignedGraph& g, const Vec& k) {
  if (int(k.size()) != g.n()) fail(Err::LengthMismatch, "compensation length != node count");
  SignedLaplacian l = laplacian(g);
  for (int i = 0; i < l.n(); ++i) l.m(i, i) += k[size_t(i)];
  l.compensation = k;
  return l;
}

/// Per-node deviation of the signed Laplacian's diagonal from the unsigned
/// one: delta_i = sum_j (|w_ij| - w_ij), i.e. twice the total magnitude of
/// node i's negative out-weights. delta_i > 0 exactly at the nodes that
/// touch a negative edge (row-wise for directed graphs).
inline Vec delta_vector(const SignedGraph& g) {
  Vec d(size_t(g.n()), 0.0);
  for (const Edge& e : g.edges()) {
    if (e.w < 0.0) {
      d[size_t(e.u)] += 2.0 * (-e.w);
      if (!g.directed()) d[size_t(e.v)] += 2.0 * (-e.w);
    }
  }
  return d;
}

}  // namespace signednet
