#pragma once

// Shared randomized-graph generators and brute-force oracles for the test
// suite. Everything is seeded through test_seed() so failures reproduce.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "signednet/graph.hpp"
#include "signednet/matrix.hpp"

#ifndef SIGNEDNET_DATA_DIR
#define SIGNEDNET_DATA_DIR "data"
#endif

namespace testsupport {

using signednet::Edge;
using signednet::Matrix;
using signednet::SignedGraph;
using signednet::Vec;

inline std::uint64_t test_seed() {
  if (const char* env = std::getenv("SIGNEDNET_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 20240817ull;
}

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) {
  return std::mt19937_64(test_seed() ^ (salt * 0x9e3779b97f4a7c15ull));
}

/// Load one of the checked-in .edges fixtures by basename.
inline SignedGraph load_fixture(const std::string& name) {
  std::string path = std::string(SIGNEDNET_DATA_DIR) + "/" + name + ".edges";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return signednet::parse_edge_list(ss.str());
}

inline double random_magnitude(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  return mag(rng);
}

/// Connected undirected signed graph: random spanning tree plus `extra`
/// random chords; each edge negative with probability neg_prob.
inline SignedGraph random_connected_graph(std::mt19937_64& rng, int n, double neg_prob,
                                          int extra = -1) {
  if (extra < 0) extra = n / 2;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> used;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    int u = pick(rng);
    double s = coin(rng) < neg_prob ? -1.0 : 1.0;
    edges.push_back({std::min(u, v), std::max(u, v), s * random_magnitude(rng)});
    used.insert({std::min(u, v), std::max(u, v)});
  }
  std::uniform_int_distribution<int> node(0, n - 1);
  for (int t = 0; t < extra * 4 && int(edges.size()) < n - 1 + extra; ++t) {
    int u = node(rng), v = node(rng);
    if (u == v) continue;
    auto key = std::minmax(u, v);
    if (used.count(key)) continue;
    used.insert(key);
    double s = coin(rng) < neg_prob ? -1.0 : 1.0;
    edges.push_back({key.first, key.second, s * random_magnitude(rng)});
  }
  return SignedGraph::make(n, false, std::move(edges));
}

/// Random undirected signed tree.
inline SignedGraph random_tree(std::mt19937_64& rng, int n, double neg_prob) {
  return random_connected_graph(rng, n, neg_prob, 0);
}

/// Structurally balanced by construction: pick a random +-1 gauge, then give
/// every edge the sign its endpoints demand.
inline SignedGraph random_balanced_graph(std::mt19937_64& rng, int n, int extra = -1,
                                         std::vector<int>* gauge_out = nullptr) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<int> gauge(size_t(n), 0);
  for (int& s : gauge) s = bit(rng) ? 1 : -1;
  SignedGraph skeleton = random_connected_graph(rng, n, 0.0, extra);
  std::vector<Edge> edges;
  for (Edge e : skeleton.edges()) {
    e.w = std::abs(e.w) * gauge[size_t(e.u)] * gauge[size_t(e.v)];
    edges.push_back(e);
  }
  if (gauge_out) *gauge_out = gauge;
  return SignedGraph::make(n, false, std::move(edges));
}

/// Strongly connected balanced digraph: a Hamiltonian cycle plus random extra
/// arcs, signs dictated by a random gauge.
inline SignedGraph random_balanced_digraph(std::mt19937_64& rng, int n, int extra = -1,
                                           std::vector<int>* gauge_out = nullptr) {
  if (extra < 0) extra = n;
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<int> gauge(size_t(n), 0);
  for (int& s : gauge) s = bit(rng) ? 1 : -1;

  std::vector<int> order(size_t(n), 0);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::set<std::pair<int, int>> used;
  std::vector<Edge> edges;
  auto add_arc = [&](int u, int v) {
    if (u == v || used.count({u, v})) return;
    used.insert({u, v});
    edges.push_back({u, v, random_magnitude(rng) * gauge[size_t(u)] * gauge[size_t(v)]});
  };
  for (int i = 0; i < n; ++i) add_arc(order[size_t(i)], order[size_t((i + 1) % n)]);
  std::uniform_int_distribution<int> node(0, n - 1);
  for (int t = 0; t < extra * 4 && int(edges.size()) < n + extra; ++t)
    add_arc(node(rng), node(rng));
  if (gauge_out) *gauge_out = gauge;
  return SignedGraph::make(n, true, std::move(edges));
}

/// Weight-balanced digraph (absolute in-strength == out-strength): one
/// Hamiltonian cycle with a fixed arc magnitude, then extra opposite-arc
/// pairs with a shared magnitude. Signs are free; magnitudes are what keep
/// the balance. Strongly connected by the cycle.
inline SignedGraph random_weight_balanced_digraph(std::mt19937_64& rng, int n, double neg_prob,
                                                  int extra_pairs = -1) {
  if (extra_pairs < 0) extra_pairs = n;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto sign = [&]() { return coin(rng) < neg_prob ? -1.0 : 1.0; };

  std::vector<int> order(size_t(n), 0);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::set<std::pair<int, int>> used;
  std::vector<Edge> edges;
  double cyc_mag = random_magnitude(rng);
  for (int i = 0; i < n; ++i) {
    int u = order[size_t(i)], v = order[size_t((i + 1) % n)];
    used.insert({u, v});
    edges.push_back({u, v, sign() * cyc_mag});
  }
  std::uniform_int_distribution<int> node(0, n - 1);
  for (int t = 0, added = 0; t < extra_pairs * 6 && added < extra_pairs; ++t) {
    int u = node(rng), v = node(rng);
    if (u == v || used.count({u, v}) || used.count({v, u})) continue;
    double mag = random_magnitude(rng);
    used.insert({u, v});
    used.insert({v, u});
    edges.push_back({u, v, sign() * mag});
    edges.push_back({v, u, sign() * mag});
    ++added;
  }
  return SignedGraph::make(n, true, std::move(edges));
}

/// Undirected cycle graph with the requested number of negative edges placed
/// at random positions, unit magnitudes.
inline SignedGraph random_circle(std::mt19937_64& rng, int n, int negatives) {
  std::vector<int> pos(size_t(n), 0);
  std::iota(pos.begin(), pos.end(), 0);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::set<int> neg(pos.begin(), pos.begin() + negatives);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    int u = i, v = (i + 1) % n;
    edges.push_back({std::min(u, v), std::max(u, v), neg.count(i) ? -1.0 : 1.0});
  }
  return SignedGraph::make(n, false, std::move(edges));
}

inline Vec random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vec x(size_t(n), 0.0);
  for (double& v : x) v = g(rng);
  return x;
}

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

/// O(E^2) bridge oracle: an edge is a bridge iff deleting it increases the
/// component count.
inline std::vector<int> brute_force_bridge_ids(const SignedGraph& g) {
  int base = signednet::count_components(g).count;
  std::vector<int> out;
  for (int skip = 0; skip < int(g.edges().size()); ++skip) {
    std::vector<Edge> rest;
    for (int e = 0; e < int(g.edges().size()); ++e)
      if (e != skip) rest.push_back(g.edges()[size_t(e)]);
    SignedGraph h = SignedGraph::make(g.n(), g.directed(), std::move(rest), g.labels());
    if (signednet::count_components(h).count > base) out.push_back(skip);
  }
  return out;
}

/// Characteristic polynomial coefficients (monic, c[0] + c[1] x + ... + x^n)
/// via the Faddeev-LeVerrier recursion. Exact up to rounding for tiny n.
inline std::vector<double> charpoly(const Matrix& a) {
  int n = a.rows();
  std::vector<double> c(size_t(n) + 1, 0.0);
  c[size_t(n)] = 1.0;
  Matrix m = Matrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      Matrix am = a * m;
      for (int i = 0; i < n; ++i) am(i, i) += c[size_t(n - k + 1)];
      m = std::move(am);
    }
    Matrix am = a * m;
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[size_t(n - k)] = -tr / k;
  }
  return c;
}

/// Durand-Kerner root finder for a monic polynomial with real coefficients.
inline std::vector<std::complex<double>> poly_roots(const std::vector<double>& c) {
  int n = int(c.size()) - 1;
  auto z = std::vector<std::complex<double>>(size_t(n));
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc(1.0, 0.0);
  for (int i = 0; i < n; ++i) {
    acc *= seed;
    z[size_t(i)] = acc;
  }
  auto eval = [&](std::complex<double> x) {
    std::complex<double> p(c[size_t(n)], 0.0);
    for (int k = n - 1; k >= 0; --k) p = p * x + c[size_t(k)];
    return p;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= (z[size_t(i)] - z[size_t(j)]);
      std::complex<double> step = eval(z[size_t(i)]) / denom;
      z[size_t(i)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }
  return z;
}

/// Matrix exponential by scaling-and-squaring with a Taylor core. Plenty for
/// the n <= 10 matrices the tests feed it.
inline Matrix expm(const Matrix& a) {
  int n = a.rows();
  double norm = a.inf_norm();
  int s = 0;
  while (norm > 0.25) {
    norm /= 2.0;
    ++s;
  }
  Matrix b = a;
  b *= std::pow(0.5, s);
  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = term * b;
    term *= 1.0 / k;
    result += term;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

}  // namespace testsupport
