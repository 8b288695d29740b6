#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "signednet/errors.hpp"

namespace signednet {

/// One signed edge. For undirected graphs the endpoints are stored
/// canonically with u < v; for directed graphs (u, v) means the arc u -> v,
/// i.e. w lands in row u of the weight matrix.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

class SignedGraph {
 public:
  SignedGraph() = default;

  /// Validating constructor used by the parser and by tests that build graphs
  /// in code. Labels default to "0".."n-1" when omitted.
  static SignedGraph make(int n, bool directed, std::vector<Edge> edges,
                          std::vector<std::string> labels = {}) {
    if (n < 0) fail(Err::InvalidConfig, "negative node count");
    if (labels.empty()) {
      labels.reserve(size_t(n));
      for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    if (int(labels.size()) != n) fail(Err::LengthMismatch, "label count != node count");

    std::set<std::pair<int, int>> seen;
    for (Edge& e : edges) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
        fail(Err::InvalidConfig, "edge endpoint out of range");
      if (e.u == e.v) fail(Err::SelfLoopRejected, "self-loop at node " + labels[size_t(e.u)]);
      if (e.w == 0.0) fail(Err::ZeroWeight, "zero-weight edge " + labels[size_t(e.u)] + " " +
                                                labels[size_t(e.v)]);
      if (!std::isfinite(e.w)) fail(Err::ParseError, "non-finite edge weight");
      if (!directed && e.u > e.v) std::swap(e.u, e.v);
      auto key = std::make_pair(e.u, e.v);
      if (!seen.insert(key).second)
        fail(Err::DuplicateEdge,
             "edge " + labels[size_t(e.u)] + " " + labels[size_t(e.v)] + " listed twice");
    }

    SignedGraph g;
    g.n_ = n;
    g.directed_ = directed;
    g.edges_ = std::move(edges);
    g.labels_ = std::move(labels);
    g.build_adjacency();
    return g;
  }

  int n() const { return n_; }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[size_t(i)]; }

  /// Neighbors in the undirected sense: every edge incident to i, regardless
  /// of arc direction. Pairs are (other endpoint, edge index).
  const std::vector<std::pair<int, int>>& incident(int i) const { return incident_[size_t(i)]; }

  int count_negative_edges() const {
    int c = 0;
    for (const Edge& e : edges_)
      if (e.w < 0.0) ++c;
    return c;
  }

  bool has_negative_edge() const { return count_negative_edges() > 0; }

  /// Nodes with at least one negative outgoing weight (for undirected graphs:
  /// any incident negative edge). Exactly the nodes whose diagonal deviation
  /// from the unsigned Laplacian is nonzero.
  std::vector<int> negative_nodes() const {
    std::vector<bool> mark(size_t(n_), false);
    for (const Edge& e : edges_) {
      if (e.w >= 0.0) continue;
      mark[size_t(e.u)] = true;
      if (!directed_) mark[size_t(e.v)] = true;
    }
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (mark[size_t(i)]) out.push_back(i);
    return out;
  }

 private:
  void build_adjacency() {
    incident_.assign(size_t(n_), {});
    for (int e = 0; e < int(edges_.size()); ++e) {
      incident_[size_t(edges_[size_t(e)].u)].push_back({edges_[size_t(e)].v, e});
      incident_[size_t(edges_[size_t(e)].v)].push_back({edges_[size_t(e)].u, e});
    }
  }

  int n_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<int, int>>> incident_;
};

// ---------------------------------------------------------------------------
// Edge-list parsing
//
// Format: optional leading "# directed: true|false" header (default false),
// optional "# nodes: a b c ..." line pre-declaring labels in display order,
// then one "u v w" triple per line. Other '#' lines are comments. Labels are
// arbitrary whitespace-free strings, mapped to indices in order of first
// appearance.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

inline double parse_weight(const std::string& tok, int line_no) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double w = std::strtod(begin, &end);
  if (end != begin + tok.size() || tok.empty())
    fail(Err::ParseError, "line " + std::to_string(line_no) + ": bad weight '" + tok + "'");
  if (!std::isfinite(w))
    fail(Err::ParseError, "line " + std::to_string(line_no) + ": non-finite weight");
  return w;
}

}  // namespace detail

inline SignedGraph parse_edge_list(const std::string& text) {
  bool directed = false;
  bool saw_edges = false;

  std::vector<std::string> labels;
  std::unordered_map<std::string, int> index_of;
  auto intern = [&](const std::string& lab) {
    auto it = index_of.find(lab);
    if (it != index_of.end()) return it->second;
    int id = int(labels.size());
    labels.push_back(lab);
    index_of.emplace(lab, id);
    return id;
  };

  struct RawEdge {
    int u, v, line;
    double w;
  };
  std::vector<RawEdge> raw;

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    line = detail::trim(line);
    if (line.empty()) continue;

    if (line[0] == '#') {
      std::string body = detail::trim(line.substr(1));
      if (body.rfind("directed:", 0) == 0) {
        if (saw_edges)
          fail(Err::ParseError,
               "line " + std::to_string(line_no) + ": directed header after edge data");
        std::string val = detail::trim(body.substr(9));
        if (val == "true")
          directed = true;
        else if (val == "false")
          directed = false;
        else
          fail(Err::ParseError,
               "line " + std::to_string(line_no) + ": directed must be true or false");
      } else if (body.rfind("nodes:", 0) == 0) {
        for (const std::string& lab : detail::split_ws(body.substr(6))) {
          if (index_of.count(lab))
            fail(Err::ParseError,
                 "line " + std::to_string(line_no) + ": label '" + lab + "' declared twice");
          intern(lab);
        }
      }
      continue;  // any other # line is a comment
    }

    std::vector<std::string> tok = detail::split_ws(line);
    if (tok.size() != 3)
      fail(Err::ParseError, "line " + std::to_string(line_no) + ": expected 'u v w', got " +
                                std::to_string(tok.size()) + " fields");
    double w = detail::parse_weight(tok[2], line_no);
    if (w == 0.0)
      fail(Err::ZeroWeight, "line " + std::to_string(line_no) + ": zero weight between '" +
                                tok[0] + "' and '" + tok[1] + "'");
    if (tok[0] == tok[1])
      fail(Err::SelfLoopRejected, "line " + std::to_string(line_no) + ": self-loop at '" +
                                      tok[0] + "'");
    saw_edges = true;
    raw.push_back({intern(tok[0]), intern(tok[1]), line_no, w});
  }

  std::set<std::pair<int, int>> seen;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& r : raw) {
    std::pair<int, int> key =
        directed ? std::make_pair(r.u, r.v) : std::make_pair(std::min(r.u, r.v), std::max(r.u, r.v));
    if (!seen.insert(key).second)
      fail(Err::DuplicateEdge, "line " + std::to_string(r.line) + ": edge '" +
                                   labels[size_t(r.u)] + " " + labels[size_t(r.v)] +
                                   "' listed twice");
    edges.push_back({r.u, r.v, r.w});
  }

  int n = int(labels.size());
  return SignedGraph::make(n, directed, std::move(edges), std::move(labels));
}

// ---------------------------------------------------------------------------
// Connectivity and structure
// ---------------------------------------------------------------------------

struct ComponentPartition {
  int count = 0;
  std::vector<int> assignment;  // component id per node, ids are 0..count-1
};

/// Weakly-connected components (arc direction ignored).
inline ComponentPartition count_components(const SignedGraph& g) {
  ComponentPartition p;
  p.assignment.assign(size_t(g.n()), -1);
  for (int root = 0; root < g.n(); ++root) {
    if (p.assignment[size_t(root)] != -1) continue;
    int id = p.count++;
    std::vector<int> stack{root};
    p.assignment[size_t(root)] = id;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [v, e] : g.incident(u)) {
        (void)e;
        if (p.assignment[size_t(v)] == -1) {
          p.assignment[size_t(v)] = id;
          stack.push_back(v);
        }
      }
    }
  }
  return p;
}

inline bool is_connected(const SignedGraph& g) {
  return g.n() <= 1 || count_components(g).count == 1;
}

/// Every node reachable from every other following arc directions. For
/// undirected graphs this is plain connectivity.
inline bool is_strongly_connected(const SignedGraph& g) {
  if (!g.directed()) return is_connected(g);
  int n = g.n();
  if (n <= 1) return true;

  auto fwd = std::vector<std::vector<int>>(size_t(n));
  auto rev = std::vector<std::vector<int>>(size_t(n));
  for (const Edge& e : g.edges()) {
    fwd[size_t(e.u)].push_back(e.v);
    rev[size_t(e.v)].push_back(e.u);
  }
  for (const auto& adj : {fwd, rev}) {
    std::vector<char> seen(size_t(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[size_t(u)])
        if (!seen[size_t(v)]) {
          seen[size_t(v)] = 1;
          ++reached;
          stack.push_back(v);
        }
    }
    if (reached < n) return false;
  }
  return true;
}

/// Split into the all-positive and all-negative subgraphs, both on the full
/// node set. Every edge of g lands in exactly one of the two.
inline std::pair<SignedGraph, SignedGraph> split_components(const SignedGraph& g) {
  std::vector<Edge> pos, neg;
  for (const Edge& e : g.edges()) (e.w > 0.0 ? pos : neg).push_back(e);
  return {SignedGraph::make(g.n(), g.directed(), std::move(pos), g.labels()),
          SignedGraph::make(g.n(), g.directed(), std::move(neg), g.labels())};
}

namespace detail {

/// Bridge edge indices of the undirected multigraph view. Arc pairs (u,v) and
/// (v,u) count as parallel edges, so neither is a bridge. Iterative low-link
/// DFS; handles disconnected inputs.
inline std::vector<int> bridge_edge_ids(const SignedGraph& g) {
  int n = g.n();
  std::vector<int> disc(size_t(n), -1), low(size_t(n), 0);
  std::vector<int> bridges;
  int timer = 0;

  struct Frame {
    int node;
    int via_edge;  // edge index used to enter node, -1 at roots
    size_t next;   // next incident slot to explore
  };

  for (int root = 0; root < n; ++root) {
    if (disc[size_t(root)] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[size_t(root)] = low[size_t(root)] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& inc = g.incident(f.node);
      if (f.next < inc.size()) {
        auto [to, eid] = inc[f.next++];
        if (eid == f.via_edge) continue;  // the exact edge we came in by
        if (disc[size_t(to)] == -1) {
          disc[size_t(to)] = low[size_t(to)] = timer++;
          stack.push_back({to, eid, 0});
        } else {
          low[size_t(f.node)] = std::min(low[size_t(f.node)], disc[size_t(to)]);
        }
      } else {
        int child = f.node, via = f.via_edge;
        stack.pop_back();
        if (!stack.empty()) {
          int parent = stack.back().node;
          low[size_t(parent)] = std::min(low[size_t(parent)], low[size_t(child)]);
          if (low[size_t(child)] > disc[size_t(parent)]) bridges.push_back(via);
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

}  // namespace detail

/// Edges whose removal increases the number of (weakly) connected components.
inline std::vector<Edge> find_bridges(const SignedGraph& g) {
  std::vector<Edge> out;
  for (int id : detail::bridge_edge_ids(g)) out.push_back(g.edges()[size_t(id)]);
  return out;
}

// ---------------------------------------------------------------------------
// Negative cut-set classification
// ---------------------------------------------------------------------------

struct NegativeCut {
  enum class Kind {
    NoNegativeEdges,   // nothing to classify
    NotACutSet,        // positive edges alone keep the graph connected
    CutSetAllBridges,  // removal disconnects, and every negative edge is a bridge
    CutSetMixed,       // removal disconnects, but some negative edge sits on a cycle
  };

  Kind kind = Kind::NoNegativeEdges;
  std::vector<Edge> negative_edges;

  int size() const { return int(negative_edges.size()); }
};

/// Classify the set of negative edges as a whole: does deleting all of them
/// disconnect the graph, and if so, is each one individually a bridge?
inline NegativeCut classify_negative_cut(const SignedGraph& g) {
  if (!is_connected(g)) fail(Err::DisconnectedInput, "negative-cut classification needs a connected graph");

  NegativeCut r;
  std::vector<int> neg_ids;
  for (int e = 0; e < int(g.edges().size()); ++e)
    if (g.edges()[size_t(e)].w < 0.0) {
      neg_ids.push_back(e);
      r.negative_edges.push_back(g.edges()[size_t(e)]);
    }
  if (neg_ids.empty()) {
    r.kind = NegativeCut::Kind::NoNegativeEdges;
    return r;
  }

  auto [gplus, gminus] = split_components(g);
  (void)gminus;
  if (count_components(gplus).count == 1) {
    r.kind = NegativeCut::Kind::NotACutSet;
    return r;
  }

  std::vector<int> bridges = detail::bridge_edge_ids(g);
  bool all_bridges = std::includes(bridges.begin(), bridges.end(), neg_ids.begin(), neg_ids.end());
  r.kind = all_bridges ? NegativeCut::Kind::CutSetAllBridges : NegativeCut::Kind::CutSetMixed;
  return r;
}

// ---------------------------------------------------------------------------
// Structural balance
// ---------------------------------------------------------------------------

struct BalanceResult {
  bool balanced = false;
  /// +-1 per node when balanced: every edge satisfies sign(w_uv) = s_u * s_v.
  /// The smallest node of each component gets +1.
  std::vector<int> gauge;
  /// When unbalanced: vertices of a closed walk whose edge signs multiply to
  /// -1, in order (the closing edge returns to the first vertex).
  std::vector<int> witness_cycle;
  /// Edge indices of that walk, aligned with witness_cycle (edge k joins
  /// node k to node k+1, the last one closes the cycle). Kept separately
  /// because a two-node walk over an opposite-sign arc pair is ambiguous as
  /// a node list alone.
  std::vector<int> witness_edges;
};

/// Two-color the nodes so that positive edges join like signs and negative
/// edges join opposite signs; report a violating cycle when impossible.
/// Direction is irrelevant: only the sign pattern matters.
inline BalanceResult structural_balance(const SignedGraph& g) {
  BalanceResult r;
  int n = g.n();
  std::vector<int> sign(size_t(n), 0), parent(size_t(n), -1), parent_edge(size_t(n), -1);

  for (int root = 0; root < n; ++root) {
    if (sign[size_t(root)] != 0) continue;
    sign[size_t(root)] = +1;
    std::vector<int> queue{root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (auto [v, eid] : g.incident(u)) {
        int want = g.edges()[size_t(eid)].w > 0.0 ? sign[size_t(u)] : -sign[size_t(u)];
        if (sign[size_t(v)] == 0) {
          sign[size_t(v)] = want;
          parent[size_t(v)] = u;
          parent_edge[size_t(v)] = eid;
          queue.push_back(v);
        } else if (sign[size_t(v)] != want && eid != parent_edge[size_t(u)]) {
          // Conflict edge (u, v): splice the two tree paths into a cycle
          // u -> lca -> v plus the closing edge back to u.
          std::vector<int> up_u;
          for (int x = u; x != -1; x = parent[size_t(x)]) up_u.push_back(x);
          std::vector<int> up_v;
          int lca = -1;
          for (int x = v; x != -1; x = parent[size_t(x)]) {
            if (std::find(up_u.begin(), up_u.end(), x) != up_u.end()) {
              lca = x;
              break;
            }
            up_v.push_back(x);
          }
          for (int x : up_u) {
            r.witness_cycle.push_back(x);
            if (x == lca) break;
            r.witness_edges.push_back(parent_edge[size_t(x)]);
          }
          for (auto it = up_v.rbegin(); it != up_v.rend(); ++it) {
            r.witness_edges.push_back(parent_edge[size_t(*it)]);
            r.witness_cycle.push_back(*it);
          }
          r.witness_edges.push_back(eid);
          r.balanced = false;
          return r;
        }
      }
    }
  }

  r.balanced = true;
  r.gauge = std::move(sign);
  return r;
}

/// Absolute in-strength equals absolute out-strength at every node, within
/// 1e-9 of the largest row strength. Undirected graphs pass trivially.
inline bool is_weight_balanced(const SignedGraph& g) {
  if (!g.directed()) return true;
  std::vector<double> in(size_t(g.n()), 0.0), out(size_t(g.n()), 0.0);
  for (const Edge& e : g.edges()) {
    out[size_t(e.u)] += std::abs(e.w);
    in[size_t(e.v)] += std::abs(e.w);
  }
  double scale = 0.0;
  for (double s : out) scale = std::max(scale, s);
  double tol = 1e-9 * std::max(1.0, scale);
  for (int i = 0; i < g.n(); ++i)
    if (std::abs(in[size_t(i)] - out[size_t(i)]) > tol) return false;
  return true;
}

}  // namespace signednet
