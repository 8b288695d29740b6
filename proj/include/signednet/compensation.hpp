#pragma once
// Self-loop compensation: per-node damping gains added to the Laplacian
// diagonal, regime classification of the resulting flow, closed-form
// steady-state projections, gain-budget accounting, and magnitude sweeps.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signednet/eigen_gen.hpp"
#include "signednet/eigen_sym.hpp"
#include "signednet/errors.hpp"
#include "signednet/graph.hpp"
#include "signednet/laplacian.hpp"
#include "signednet/matrix.hpp"
#include "signednet/spectral.hpp"

namespace signednet {

/// A vector of self-loop gains, plus a tag recording how it was built.
/// Delta-tagged vectors are nonnegative and supported on the nodes touching
/// negative edges; cluster-tagged vectors may dip below zero, which is what
/// lets them land the flow on a nontrivial eigenspace.
struct CompensationVector {
  enum class Tag { General, Delta, Cluster };

  Vec k;
  Tag tag = Tag::General;

  std::vector<int> active_set() const {
    std::vector<int> active;
    for (int i = 0; i < int(k.size()); ++i)
      if (k[size_t(i)] != 0.0) active.push_back(i);
    return active;
  }
};

/// The exact gain that cancels each node's negative mass: twice the total
/// negative-weight magnitude seen from that node.
inline CompensationVector delta(const SignedGraph& g) {
  return {delta_vector(g), CompensationVector::Tag::Delta};
}

enum class DeltaComparison { Equal, BelowNotEqual, AboveNotEqual, Incomparable };

inline const char* delta_comparison_name(DeltaComparison c) {
  switch (c) {
    case DeltaComparison::Equal: return "Equal";
    case DeltaComparison::BelowNotEqual: return "BelowNotEqual";
    case DeltaComparison::AboveNotEqual: return "AboveNotEqual";
    case DeltaComparison::Incomparable: return "Incomparable";
  }
  return "?";
}

namespace detail {

/// Relative dead-band for treating two gain entries as equal.
inline double gain_band(const Vec& a, const Vec& b) {
  return 1e-8 * std::max({1.0, inf_norm(a), inf_norm(b)});
}

}  // namespace detail

/// Entrywise order of two gain vectors with a relative equality dead-band.
/// Incomparable means strict deviations exist in both directions.
inline DeltaComparison compare_delta(const CompensationVector& k,
                                     const CompensationVector& d) {
  if (k.k.size() != d.k.size())
    fail(Err::LengthMismatch, "gain vectors have different lengths");
  double band = detail::gain_band(k.k, d.k);
  bool above = false, below = false;
  for (size_t i = 0; i < k.k.size(); ++i) {
    double diff = k.k[i] - d.k[i];
    if (diff > band) above = true;
    if (diff < -band) below = true;
  }
  if (above && below) return DeltaComparison::Incomparable;
  if (above) return DeltaComparison::AboveNotEqual;
  if (below) return DeltaComparison::BelowNotEqual;
  return DeltaComparison::Equal;
}

enum class Regime {
  Unstable,
  TrivialConsensus,
  BipartiteConsensus,
  ClusterConsensus,
  NoBipartiteConsensus,
  Indeterminate,
};

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Unstable: return "Unstable";
    case Regime::TrivialConsensus: return "TrivialConsensus";
    case Regime::BipartiteConsensus: return "BipartiteConsensus";
    case Regime::ClusterConsensus: return "ClusterConsensus";
    case Regime::NoBipartiteConsensus: return "NoBipartiteConsensus";
    case Regime::Indeterminate: return "Indeterminate";
  }
  return "?";
}

/// Verdict on the compensated flow ẋ = −L^k x. When a structural criterion
/// pins the limit, steady_state_map holds the projection P with
/// lim x(t) = P·x(0); it is present exactly for the three consensus regimes
/// (the trivial one carries P = 0). The spectral fields are always filled
/// from the actual spectrum of L^k, so even Indeterminate verdicts say
/// whether the flow is stable.
struct BehaviorPrediction {
  Regime regime = Regime::Indeterminate;
  std::optional<Matrix> steady_state_map;
  std::string certificate;
  double min_real_part = 0.0;
  bool spectrally_stable = false;
};

namespace detail {

/// Eigenvalues within this band of the smallest one count as part of the
/// leading cluster when building projections.
inline double cluster_band(const Matrix& m) { return 1e-7 * m.frobenius_norm(); }

inline Vec gauge_signs(const BalanceResult& bal) {
  Vec sigma(bal.gauge.size());
  for (size_t i = 0; i < bal.gauge.size(); ++i) sigma[i] = double(bal.gauge[i]);
  return sigma;
}

/// Projection onto the gauge direction for an exactly compensated balanced
/// network: sign-average undirected, left-null-weighted for digraphs.
inline Matrix bipartite_projection(const SignedGraph& g, const Vec& sigma,
                                   const Matrix& ld) {
  int n = g.n();
  Vec p(size_t(n), 1.0 / double(n));
  if (g.directed()) {
    // Weights come from the left null vector of the sign-flipped matrix,
    // normalized to sum one. Flipping signs makes that vector positive, so
    // the normalization is safe for strongly connected inputs.
    Matrix flipped(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        flipped(i, j) = sigma[size_t(i)] * sigma[size_t(j)] * ld(i, j);
    p = inverse_iteration(flipped.transposed(), 0.0);
    double total = 0.0;
    for (double x : p) total += x;
    if (std::abs(total) < 1e-12)
      fail(Err::NoConvergence, "left null vector of the gauged flow sums to zero");
    for (double& x : p) x /= total;
  }
  Matrix proj(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      proj(i, j) = sigma[size_t(i)] * p[size_t(j)] * sigma[size_t(j)];
  return proj;
}

}  // namespace detail

/// The gain vector that shifts the whole delta-compensated spectrum so its
/// smallest eigenvalue lands on zero: k = δ − λ₁(L^δ)·1. Only meaningful for
/// imbalanced networks (balanced ones already have λ₁ = 0 there). Entries at
/// nodes with no negative mass go negative; they are kept as-is, since the
/// shifted spectrum is the whole point.
inline CompensationVector cluster_compensation(const SignedGraph& g) {
  if (!is_connected(g)) fail(Err::NotConnected, "graph is not connected");
  if (structural_balance(g).balanced)
    fail(Err::StructurallyBalanced,
         "network is structurally balanced: the shift collapses to the plain "
         "delta gains");

  Vec d = delta_vector(g);
  SignedLaplacian ld = compensated_laplacian(g, d);
  double lambda1 = 0.0;
  if (!g.directed()) {
    lambda1 = min_eigenvalue_sym(ld.m);
  } else {
    if (!is_strongly_connected(g))
      fail(Err::NotConnected, "directed cluster compensation needs strong connectivity");
    auto eig = general_eigenvalues(ld.m);
    double zb = detail::zero_band(ld.m);
    double cb = detail::cluster_band(ld.m);
    if (std::abs(eig.front().imag()) > zb)
      fail(Err::ComplexLeadingEigenvalue,
           "smallest-real-part eigenvalue of the delta-compensated Laplacian "
           "is complex");
    if (eig.size() > 1 && eig[1].real() - eig[0].real() <= cb)
      fail(Err::ComplexLeadingEigenvalue,
           "smallest eigenvalue of the delta-compensated Laplacian is not simple");
    lambda1 = eig.front().real();
  }

  for (double& x : d) x -= lambda1;
  return {std::move(d), CompensationVector::Tag::Cluster};
}

/// Decide what the flow ẋ = −L^k x does, preferring structural certificates
/// and falling back to the raw spectrum when no criterion covers the input.
inline BehaviorPrediction classify(const SignedGraph& g, const CompensationVector& k) {
  int n = g.n();
  if (int(k.k.size()) != n)
    fail(Err::LengthMismatch, "gain vector length != node count");
  if (!is_connected(g)) fail(Err::NotConnected, "graph is not connected");

  SignedLaplacian lk = compensated_laplacian(g, k.k);
  BehaviorPrediction out;

  // Spectral ground truth first; every branch below reports it.
  double eps = detail::zero_band(lk.m);
  if (!g.directed()) {
    out.min_real_part = min_eigenvalue_sym(lk.m);
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& z : general_eigenvalues(lk.m)) best = std::min(best, z.real());
    out.min_real_part = best;
  }
  out.spectrally_stable = out.min_real_part > -eps;

  Vec d = delta_vector(g);
  BalanceResult bal = structural_balance(g);

  if (bal.balanced) {
    if (g.directed() && !is_strongly_connected(g)) {
      out.regime = Regime::Indeterminate;
      out.certificate =
          "directed network is not strongly connected: the balanced gain "
          "dichotomy does not apply; spectral verdict only";
      return out;
    }
    switch (compare_delta(k, {d})) {
      case DeltaComparison::BelowNotEqual:
        out.regime = Regime::Unstable;
        out.certificate =
            "structurally balanced with gains below delta: a negative"
            "(-real-part) mode persists and the flow diverges";
        return out;
      case DeltaComparison::AboveNotEqual:
        out.regime = Regime::TrivialConsensus;
        out.steady_state_map = Matrix(n, n);
        out.certificate =
            "structurally balanced with gains above delta: the compensated "
            "Laplacian is positive stable and every state decays to zero";
        return out;
      case DeltaComparison::Equal:
        out.regime = Regime::BipartiteConsensus;
        out.steady_state_map =
            detail::bipartite_projection(g, detail::gauge_signs(bal), lk.m);
        out.certificate =
            "structurally balanced with exact delta gains: states converge "
            "to a common magnitude signed by the balance partition";
        return out;
      case DeltaComparison::Incomparable:
        out.regime = Regime::NoBipartiteConsensus;
        out.certificate =
            "gains incomparable with delta: no gauge direction spans the "
            "null space, so bipartite consensus is impossible; spectral "
            "verdict decides stability";
        return out;
    }
  }

  // Imbalanced: thresholds come from the delta-compensated spectrum.
  SignedLaplacian ld = compensated_laplacian(g, d);

  if (!g.directed()) {
    SymEig ed = jacobi_eig(ld.m);
    double lambda1 = ed.values.front();
    Vec kstar = d;
    for (double& x : kstar) x -= lambda1;
    double band = detail::gain_band(k.k, kstar);

    bool all_above = true, all_below = true, all_equal = true;
    for (int i = 0; i < n; ++i) {
      double diff = k.k[size_t(i)] - kstar[size_t(i)];
      all_above = all_above && diff > band;
      all_below = all_below && diff < -band;
      all_equal = all_equal && std::abs(diff) <= band;
    }

    if (all_equal) {
      // Shifting by λ₁ parks the leading eigenspace at zero; the flow
      // settles on the projection onto that space.
      double cb = detail::cluster_band(ld.m);
      Matrix proj(n, n);
      for (int j = 0; j < n; ++j) {
        if (ed.values[size_t(j)] > lambda1 + cb) break;
        Vec v(size_t(n), 0.0);
        for (int i = 0; i < n; ++i) v[size_t(i)] = ed.vectors(i, j);
        proj += outer(v, v);
      }
      out.regime = Regime::ClusterConsensus;
      out.steady_state_map = std::move(proj);
      out.certificate =
          "imbalanced with gains exactly at the cluster threshold: states "
          "converge to the projection onto the leading eigenspace";
      return out;
    }
    if (all_above) {
      out.regime = Regime::TrivialConsensus;
      out.steady_state_map = Matrix(n, n);
      out.certificate =
          "imbalanced with gains strictly above the cluster threshold: the "
          "compensated Laplacian is positive definite";
      return out;
    }
    if (all_below) {
      out.regime = Regime::Unstable;
      out.certificate =
          "imbalanced with gains strictly below the cluster threshold: the "
          "leading eigendirection certifies a negative eigenvalue";
      return out;
    }
    out.regime = Regime::Indeterminate;
    out.certificate =
        "gains straddle the cluster threshold: no structural verdict; "
        "spectral verdict only";
    return out;
  }

  // Imbalanced digraph.
  if (!is_strongly_connected(g)) {
    out.regime = Regime::Indeterminate;
    out.certificate =
        "directed network is not strongly connected: cluster criteria need "
        "every node to reach every other; spectral verdict only";
    return out;
  }

  auto eig = general_eigenvalues(ld.m);
  double zb = detail::zero_band(ld.m);
  double cb = detail::cluster_band(ld.m);
  bool leading_real = std::abs(eig.front().imag()) <= zb;
  bool leading_simple =
      eig.size() < 2 || eig[1].real() - eig[0].real() > cb;

  if (leading_real && leading_simple) {
    double lambda1 = eig.front().real();
    Vec kstar = d;
    for (double& x : kstar) x -= lambda1;
    double band = detail::gain_band(k.k, kstar);
    bool all_equal = true;
    for (int i = 0; i < n; ++i)
      all_equal = all_equal && std::abs(k.k[size_t(i)] - kstar[size_t(i)]) <= band;
    if (all_equal) {
      Vec vr = inverse_iteration(ld.m, lambda1);
      Vec vl = inverse_iteration(ld.m.transposed(), lambda1);
      double s = dot(vl, vr);
      if (std::abs(s) > 1e-10) {
        for (double& x : vl) x /= s;
        out.regime = Regime::ClusterConsensus;
        out.steady_state_map = outer(vr, vl);
        out.certificate =
            "imbalanced digraph with gains exactly at the cluster threshold: "
            "states converge to the rank-one leading eigenprojection";
        return out;
      }
    }
  }

  // Field-of-values bound: gains pushing the symmetric part past positive
  // definiteness force every eigenvalue into the right half plane.
  double sym_min = min_eigenvalue_sym(symmetric_part(ld.m));
  double band = detail::gain_band(k.k, d);
  bool all_above_sym = true;
  for (int i = 0; i < n; ++i)
    all_above_sym =
        all_above_sym && k.k[size_t(i)] - (d[size_t(i)] - sym_min) > band;
  if (all_above_sym) {
    out.regime = Regime::TrivialConsensus;
    out.steady_state_map = Matrix(n, n);
    out.certificate =
        "imbalanced digraph with gains above the symmetric-part threshold: "
        "the compensated Laplacian has positive definite symmetric part";
    return out;
  }

  out.regime = Regime::Indeterminate;
  out.certificate =
      "imbalanced digraph outside every structural criterion; spectral "
      "verdict only";
  return out;
}

/// Closed-form limit of the flow from x0, when the regime admits one.
inline Vec predict_steady_state(const SignedGraph& g, const CompensationVector& k,
                                const Vec& x0) {
  if (int(x0.size()) != g.n())
    fail(Err::LengthMismatch, "initial state length != node count");
  BehaviorPrediction pred = classify(g, k);
  switch (pred.regime) {
    case Regime::Unstable:
      fail(Err::Divergent, "predicted regime is unstable: no finite steady state");
    case Regime::NoBipartiteConsensus:
    case Regime::Indeterminate:
      fail(Err::IndeterminateRegime,
           std::string("no closed-form steady state: ") + pred.certificate);
    default:
      break;
  }
  return *pred.steady_state_map * x0;
}

/// How much gain budget k spends beyond the cheapest stabilizing vector.
/// Only defined where that minimum is known: balanced undirected networks
/// with a positive semidefinite compensated Laplacian.
inline double optimality_gap(const SignedGraph& g, const CompensationVector& k) {
  if (g.directed())
    fail(Err::UndirectedOnly, "gain-budget accounting covers undirected graphs only");
  if (!is_connected(g)) fail(Err::NotConnected, "graph is not connected");
  if (!structural_balance(g).balanced)
    fail(Err::NotBalanced, "network is structurally imbalanced");
  if (int(k.k.size()) != g.n())
    fail(Err::LengthMismatch, "gain vector length != node count");

  SignedLaplacian lk = compensated_laplacian(g, k.k);
  double lam_min = min_eigenvalue_sym(lk.m);
  if (lam_min < -detail::zero_band(lk.m))
    fail(Err::NotPSD, "compensated Laplacian has a negative eigenvalue (" +
                          std::to_string(lam_min) + ")");
  return one_norm(k.k) - one_norm(delta_vector(g));
}

struct SweepPoint {
  double q;
  double min_real_part;
};

/// The magnitude grid the sweep tools default to: 201 points on [0, 2].
inline std::vector<double> default_q_grid() {
  std::vector<double> grid(201);
  for (int i = 0; i <= 200; ++i) grid[size_t(i)] = double(i) * (2.0 / 200.0);
  return grid;
}

/// Scale the delta gains by q on the active nodes (zero elsewhere) and track
/// the smallest real part of the compensated spectrum across the grid.
/// Results are sorted by q.
inline std::vector<SweepPoint> sweep(const SignedGraph& g,
                                     const std::vector<int>& active,
                                     const std::vector<double>& q_grid) {
  Vec d = delta_vector(g);
  for (int i : active)
    if (i < 0 || i >= g.n())
      fail(Err::UsageError, "active node index out of range");

  std::vector<SweepPoint> points;
  points.reserve(q_grid.size());
  for (double q : q_grid) {
    Vec k(size_t(g.n()), 0.0);
    for (int i : active) k[size_t(i)] = q * d[size_t(i)];
    Matrix lk = compensated_laplacian(g, k).m;
    double min_re;
    if (!g.directed()) {
      min_re = min_eigenvalue_sym(lk);
    } else {
      min_re = std::numeric_limits<double>::infinity();
      for (const auto& z : general_eigenvalues(lk)) min_re = std::min(min_re, z.real());
    }
    points.push_back({q, min_re});
  }
  std::sort(points.begin(), points.end(),
            [](const SweepPoint& a, const SweepPoint& b) { return a.q < b.q; });
  return points;
}

}  // namespace signednet
