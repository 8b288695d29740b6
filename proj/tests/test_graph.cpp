#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "signednet/graph.hpp"
#include "support/generators.hpp"

using namespace signednet;
using testsupport::load_fixture;
using testsupport::make_rng;

namespace {

bool has_edge(const std::vector<Edge>& edges, int u, int v) {
  return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
    return (e.u == u && e.v == v) || (e.u == v && e.v == u);
  });
}

Err code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a signednet::Error");
  return Err::ParseError;
}

}  // namespace

TEST_CASE("parse_edge_list maps labels in first-appearance order") {
  SignedGraph g = parse_edge_list("1 2 -1\n2 3 1\n");
  REQUIRE(g.n() == 3);
  REQUIRE_FALSE(g.directed());
  REQUIRE(g.labels() == std::vector<std::string>{"1", "2", "3"});
  REQUIRE(g.edges().size() == 2);
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[0].w == -1.0);
  CHECK(g.edges()[1].u == 1);
  CHECK(g.edges()[1].v == 2);
  CHECK(g.edges()[1].w == 1.0);
}

TEST_CASE("parse_edge_list accepts arbitrary string labels and comments") {
  SignedGraph g = parse_edge_list("# a tiny graph\nalice bob 2.5\nbob carol -0.5\n\n");
  REQUIRE(g.n() == 3);
  CHECK(g.label(0) == "alice");
  CHECK(g.label(2) == "carol");
  CHECK(g.edges()[1].w == -0.5);
}

TEST_CASE("directed header flips arc semantics") {
  SignedGraph g = parse_edge_list("# directed: true\na b 1\nb a -1\n");
  REQUIRE(g.directed());
  REQUIRE(g.edges().size() == 2);  // opposite arcs are distinct
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[1].u == 1);
  CHECK(g.edges()[1].w == -1.0);

  SignedGraph h = parse_edge_list("# directed: false\na b 1\n");
  REQUIRE_FALSE(h.directed());
}

TEST_CASE("nodes pre-declaration pins the index order") {
  SignedGraph g = parse_edge_list("# nodes: 1 2 3 4\n4 1 1\n2 4 -1\n3 2 1\n");
  REQUIRE(g.n() == 4);
  CHECK(g.labels() == std::vector<std::string>{"1", "2", "3", "4"});
  CHECK(has_edge(g.edges(), 3, 0));
  CHECK(has_edge(g.edges(), 1, 3));
}

TEST_CASE("parse_edge_list error cases carry line numbers") {
  CHECK(code_of([] { parse_edge_list("a b 1\na b 2\n"); }) == Err::DuplicateEdge);
  CHECK(code_of([] { parse_edge_list("a b 1\nb a 2\n"); }) == Err::DuplicateEdge);
  CHECK(code_of([] { parse_edge_list("a b 0\n"); }) == Err::ZeroWeight);
  CHECK(code_of([] { parse_edge_list("a a 1\n"); }) == Err::SelfLoopRejected);
  CHECK(code_of([] { parse_edge_list("a b\n"); }) == Err::ParseError);
  CHECK(code_of([] { parse_edge_list("a b one\n"); }) == Err::ParseError);
  CHECK(code_of([] { parse_edge_list("a b 1\n# directed: true\n"); }) == Err::ParseError);
  CHECK(code_of([] { parse_edge_list("# directed: maybe\n"); }) == Err::ParseError);
  CHECK(code_of([] { parse_edge_list("# nodes: x x\n"); }) == Err::ParseError);

  try {
    parse_edge_list("a b 1\nc d 2\ne f oops\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  // Reversed arcs are fine when directed; duplicates of the same arc are not.
  CHECK_NOTHROW(parse_edge_list("# directed: true\na b 1\nb a 1\n"));
  CHECK(code_of([] { parse_edge_list("# directed: true\na b 1\na b 1\n"); }) ==
        Err::DuplicateEdge);
}

TEST_CASE("fixture files parse to the documented shapes") {
  SignedGraph g0 = load_fixture("g0");
  REQUIRE(g0.n() == 8);
  REQUIRE_FALSE(g0.directed());
  REQUIRE(g0.edges().size() == 8);
  CHECK(g0.labels()[0] == "1");
  CHECK(g0.labels()[7] == "8");
  CHECK(g0.count_negative_edges() == 3);

  SignedGraph g1 = load_fixture("g1");
  REQUIRE(g1.n() == 8);
  REQUIRE(g1.edges().size() == 11);
  CHECK(g1.count_negative_edges() == 3);

  SignedGraph g2 = load_fixture("g2");
  REQUIRE(g2.directed());
  REQUIRE(g2.n() == 8);
  REQUIRE(g2.edges().size() == 22);
  CHECK(g2.count_negative_edges() == 5);

  SignedGraph f = load_fixture("triad");
  REQUIRE(f.directed());
  REQUIRE(f.n() == 3);
  REQUIRE(f.edges().size() == 3);
  CHECK(f.count_negative_edges() == 1);
}

TEST_CASE("split_components partitions edges by sign") {
  SignedGraph g0 = load_fixture("g0");
  auto [gp, gm] = split_components(g0);
  CHECK(gp.n() == 8);
  CHECK(gm.n() == 8);
  CHECK(gp.edges().size() == 5);
  CHECK(gm.edges().size() == 3);
  for (const Edge& e : gp.edges()) CHECK(e.w > 0.0);
  for (const Edge& e : gm.edges()) CHECK(e.w < 0.0);
}

TEST_CASE("split_components loses no edges on random graphs") {
  auto rng = make_rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    SignedGraph g = testsupport::random_connected_graph(rng, 3 + int(rng() % 8), 0.4);
    auto [gp, gm] = split_components(g);
    REQUIRE(gp.edges().size() + gm.edges().size() == g.edges().size());
    std::multiset<std::tuple<int, int, double>> all, split;
    for (const Edge& e : g.edges()) all.insert({e.u, e.v, e.w});
    for (const Edge& e : gp.edges()) split.insert({e.u, e.v, e.w});
    for (const Edge& e : gm.edges()) split.insert({e.u, e.v, e.w});
    REQUIRE(all == split);
  }
}

TEST_CASE("count_components sees weak connectivity") {
  SignedGraph g0 = load_fixture("g0");
  CHECK(count_components(g0).count == 1);

  auto [gp, gm] = split_components(g0);
  // Deleting the three negative bridges leaves four positive islands;
  // the negative edges alone touch six nodes, leaving two isolated.
  CHECK(count_components(gp).count == 4);
  CHECK(count_components(gm).count == 5);

  SignedGraph triad = load_fixture("triad");
  CHECK(count_components(triad).count == 1);
  CHECK(is_connected(triad));

  SignedGraph lonely = SignedGraph::make(3, false, {{0, 1, 1.0}});
  CHECK(count_components(lonely).count == 2);
  CHECK_FALSE(is_connected(lonely));

  ComponentPartition p = count_components(lonely);
  CHECK(p.assignment[0] == p.assignment[1]);
  CHECK(p.assignment[2] != p.assignment[0]);
}

TEST_CASE("find_bridges on canonical shapes") {
  // Path: every edge is a bridge.
  SignedGraph path = SignedGraph::make(4, false, {{0, 1, 1}, {1, 2, -1}, {2, 3, 1}});
  CHECK(find_bridges(path).size() == 3);

  // Triangle: none.
  SignedGraph tri = SignedGraph::make(3, false, {{0, 1, 1}, {1, 2, 1}, {0, 2, -1}});
  CHECK(find_bridges(tri).empty());

  SignedGraph g0 = load_fixture("g0");
  std::vector<Edge> b = find_bridges(g0);
  // 1-based labels (3,4) and (1,5) are bridges, i.e. indices (2,3), (0,4).
  CHECK(has_edge(b, 2, 3));
  CHECK(has_edge(b, 0, 4));
  // The 2-6-7 triangle edges are not.
  CHECK_FALSE(has_edge(b, 1, 5));

  // An opposite arc pair is a parallel pair in the undirected view: no bridge.
  SignedGraph pair2 = SignedGraph::make(2, true, {{0, 1, 1}, {1, 0, -1}});
  CHECK(find_bridges(pair2).empty());
  SignedGraph arc2 = SignedGraph::make(2, true, {{0, 1, 1}});
  CHECK(find_bridges(arc2).size() == 1);
}

TEST_CASE("find_bridges matches the deletion oracle on random graphs") {
  auto rng = make_rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + int(rng() % 10);
    SignedGraph g = testsupport::random_connected_graph(rng, n, 0.3, int(rng() % 4));
    std::vector<int> expect = testsupport::brute_force_bridge_ids(g);
    std::vector<int> got = detail::bridge_edge_ids(g);
    REQUIRE(got == expect);
  }
}

TEST_CASE("classify_negative_cut distinguishes the three regimes") {
  SignedGraph g0 = load_fixture("g0");
  NegativeCut c0 = classify_negative_cut(g0);
  CHECK(c0.kind == NegativeCut::Kind::CutSetAllBridges);
  CHECK(c0.size() == 3);

  // G1's negative edges disconnect the positive part, but 2-3 and 2-7 sit on
  // cycles through node 7's cluster.
  SignedGraph g1 = load_fixture("g1");
  NegativeCut c1 = classify_negative_cut(g1);
  CHECK(c1.kind == NegativeCut::Kind::CutSetMixed);
  CHECK(c1.size() == 3);

  // Complete graph on 6 nodes with one negative edge: plenty of positive
  // detours, so the negative set cuts nothing.
  std::vector<Edge> k6;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) k6.push_back({i, j, (i == 0 && j == 1) ? -1.0 : 1.0});
  NegativeCut ck6 = classify_negative_cut(SignedGraph::make(6, false, k6));
  CHECK(ck6.kind == NegativeCut::Kind::NotACutSet);

  SignedGraph pos = SignedGraph::make(3, false, {{0, 1, 1}, {1, 2, 2}});
  CHECK(classify_negative_cut(pos).kind == NegativeCut::Kind::NoNegativeEdges);

  SignedGraph split = SignedGraph::make(4, false, {{0, 1, -1}, {2, 3, 1}});
  CHECK(code_of([&] { classify_negative_cut(split); }) == Err::DisconnectedInput);
}

TEST_CASE("all-bridge negative cuts split the positive graph into size+1 parts") {
  auto rng = make_rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + int(rng() % 9);
    SignedGraph t = testsupport::random_tree(rng, n, 0.5);
    NegativeCut c = classify_negative_cut(t);
    if (c.size() == 0) {
      CHECK(c.kind == NegativeCut::Kind::NoNegativeEdges);
      continue;
    }
    REQUIRE(c.kind == NegativeCut::Kind::CutSetAllBridges);
    auto [gp, gm] = split_components(t);
    (void)gm;
    CHECK(count_components(gp).count == c.size() + 1);
  }
}

TEST_CASE("structural_balance finds the two-group gauge of g1") {
  SignedGraph g1 = load_fixture("g1");
  BalanceResult r = structural_balance(g1);
  REQUIRE(r.balanced);
  CHECK(r.gauge == std::vector<int>{1, 1, -1, -1, 1, 1, -1, -1});
  CHECK(r.witness_cycle.empty());
}

TEST_CASE("structural_balance handles g0 and every tree") {
  // g0's negative edges are all bridges (no cycle sees them), so it is
  // balanced even though three edges are negative.
  SignedGraph g0 = load_fixture("g0");
  BalanceResult r = structural_balance(g0);
  REQUIRE(r.balanced);
  CHECK(r.gauge == std::vector<int>{1, -1, 1, -1, 1, -1, -1, 1});

  auto rng = make_rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    SignedGraph t = testsupport::random_tree(rng, 3 + int(rng() % 10), 0.5);
    CHECK(structural_balance(t).balanced);
  }
}

TEST_CASE("structural_balance on generated balanced graphs recovers the gauge") {
  auto rng = make_rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> truth;
    SignedGraph g = testsupport::random_balanced_graph(rng, 3 + int(rng() % 8), 3, &truth);
    BalanceResult r = structural_balance(g);
    REQUIRE(r.balanced);
    // Gauge is unique per component up to a global flip, pinned so node 0 is +1.
    for (int i = 0; i < g.n(); ++i) CHECK(r.gauge[size_t(i)] == truth[size_t(i)] * truth[0]);
    // And it must certify every edge: s_u * s_v * w_uv > 0.
    for (const Edge& e : g.edges())
      CHECK(r.gauge[size_t(e.u)] * r.gauge[size_t(e.v)] * e.w > 0.0);
  }
}

TEST_CASE("structural_balance produces a genuinely negative witness cycle") {
  // Odd triangle.
  SignedGraph tri = SignedGraph::make(3, false, {{0, 1, 1}, {1, 2, 1}, {0, 2, -1}});
  BalanceResult rt = structural_balance(tri);
  REQUIRE_FALSE(rt.balanced);
  REQUIRE(rt.witness_cycle.size() == 3);
  REQUIRE(rt.witness_edges.size() == 3);
  double prod = 1.0;
  for (int eid : rt.witness_edges) prod *= tri.edges()[size_t(eid)].w;
  CHECK(prod < 0.0);

  // g2: the opposite-sign arc pair between nodes 2 and 7 is itself a
  // negative two-cycle.
  SignedGraph g2 = load_fixture("g2");
  BalanceResult r2 = structural_balance(g2);
  REQUIRE_FALSE(r2.balanced);
  REQUIRE_FALSE(r2.witness_edges.empty());
  REQUIRE(r2.witness_edges.size() == r2.witness_cycle.size());
  prod = 1.0;
  for (int eid : r2.witness_edges) prod *= g2.edges()[size_t(eid)].w;
  CHECK(prod < 0.0);
  // Consecutive witness nodes really are joined by the listed edges.
  for (size_t k = 0; k < r2.witness_edges.size(); ++k) {
    const Edge& e = g2.edges()[size_t(r2.witness_edges[k])];
    int a = r2.witness_cycle[k];
    int b = r2.witness_cycle[(k + 1) % r2.witness_cycle.size()];
    CHECK(((e.u == a && e.v == b) || (e.u == b && e.v == a)));
  }

  auto rng = make_rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    SignedGraph g = testsupport::random_connected_graph(rng, 4 + int(rng() % 8), 0.5,
                                                        2 + int(rng() % 4));
    BalanceResult r = structural_balance(g);
    if (r.balanced) continue;
    REQUIRE(r.witness_edges.size() >= 2);
    double p = 1.0;
    for (int eid : r.witness_edges) p *= g.edges()[size_t(eid)].w;
    CHECK(p < 0.0);
  }
}

TEST_CASE("is_weight_balanced compares absolute in- and out-strength") {
  CHECK(is_weight_balanced(load_fixture("g0")));  // undirected: trivial
  CHECK(is_weight_balanced(load_fixture("triad")));
  CHECK(is_weight_balanced(load_fixture("g2")));

  SignedGraph lop = SignedGraph::make(2, true, {{0, 1, 2}, {1, 0, 1}});
  CHECK_FALSE(is_weight_balanced(lop));

  // Signs are irrelevant, only magnitudes enter.
  SignedGraph signs = SignedGraph::make(2, true, {{0, 1, -3}, {1, 0, 3}});
  CHECK(is_weight_balanced(signs));
}

TEST_CASE("negative_nodes flags exactly the rows with negative out-weight") {
  SignedGraph g1 = load_fixture("g1");
  CHECK(g1.negative_nodes() == std::vector<int>{1, 2, 5, 6});

  SignedGraph g2 = load_fixture("g2");
  CHECK(g2.negative_nodes() == std::vector<int>{1, 2, 5, 6});

  SignedGraph triad = load_fixture("triad");
  CHECK(triad.negative_nodes() == std::vector<int>{0});

  SignedGraph pos = SignedGraph::make(3, false, {{0, 1, 1}, {1, 2, 1}});
  CHECK(pos.negative_nodes().empty());
}
