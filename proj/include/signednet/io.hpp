#pragma once

// Serialization boundary: everything that turns library results into JSON or
// CSV text, plus file helpers the command-line tool shares with the tests.
// JSON goes through nlohmann::ordered_json so key order (and therefore byte
// output) is deterministic; doubles round-trip losslessly. CSV uses %.6e
// throughout.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "signednet/compensation.hpp"
#include "signednet/dynamics.hpp"
#include "signednet/errors.hpp"
#include "signednet/graph.hpp"
#include "signednet/laplacian.hpp"
#include "signednet/positivity.hpp"
#include "signednet/spectral.hpp"
#include "signednet/version.hpp"

namespace signednet {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline SignedGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edge_list(ss.str());
}

/// Write-then-rename so readers never observe a half-written file.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Err::IoError, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) fail(Err::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(Err::IoError, "rename to " + path.string() + " failed: " + ec.message());
}

// ---------------------------------------------------------------------------
// CSV (%.6e everywhere)
// ---------------------------------------------------------------------------

inline std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

inline std::string spectrum_csv(const SpectralReport& r) {
  std::string out = "re,im\n";
  for (const std::complex<double>& z : r.eigenvalues)
    out += format_sci(z.real()) + "," + format_sci(z.imag()) + "\n";
  return out;
}

inline std::string gains_csv(const SignedGraph& g, const Vec& k) {
  std::string out = "node,k\n";
  for (int i = 0; i < g.n(); ++i) out += g.label(i) + "," + format_sci(k[size_t(i)]) + "\n";
  return out;
}

inline std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "q,min_real_part\n";
  for (const SweepPoint& p : points)
    out += format_sci(p.q) + "," + format_sci(p.min_real_part) + "\n";
  return out;
}

/// Grid points where the smallest real part changes sign, located by linear
/// interpolation between neighbors. Stability boundaries for sweep summaries.
inline std::vector<double> sweep_zero_crossings(const std::vector<SweepPoint>& points) {
  std::vector<double> qs;
  for (size_t i = 1; i < points.size(); ++i) {
    double a = points[i - 1].min_real_part;
    double b = points[i].min_real_part;
    if ((a < 0.0) == (b < 0.0)) continue;
    double t = (b == a) ? 0.0 : a / (a - b);
    qs.push_back(points[i - 1].q + t * (points[i].q - points[i - 1].q));
  }
  return qs;
}

inline std::string trajectory_csv(const Trajectory& traj) {
  size_t n = traj.states.empty() ? 0 : traj.states.front().size();
  std::string out = "t";
  for (size_t i = 0; i < n; ++i) out += ",x" + std::to_string(i);
  out += "\n";
  for (size_t s = 0; s < traj.times.size(); ++s) {
    out += format_sci(traj.times[s]);
    for (double v : traj.states[s]) out += "," + format_sci(v);
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline Json to_json(const Vec& v) { return Json(v); }

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const SpectralReport& r) {
  Json eigs = Json::array();
  for (const std::complex<double>& z : r.eigenvalues) {
    Json e;
    e["re"] = z.real();
    e["im"] = z.imag();
    eigs.push_back(std::move(e));
  }
  Json j;
  j["eigenvalues"] = std::move(eigs);
  j["n_negative"] = r.n_negative;
  j["n_zero"] = r.n_zero;
  j["v1_right"] = r.v1_right ? Json(*r.v1_right) : Json(nullptr);
  j["v1_left"] = r.v1_left ? Json(*r.v1_left) : Json(nullptr);
  return j;
}

inline Json to_json(const BehaviorPrediction& p) {
  Json j;
  j["regime"] = regime_name(p.regime);
  j["certificate"] = p.certificate;
  j["min_real_part"] = p.min_real_part;
  j["spectrally_stable"] = p.spectrally_stable;
  j["steady_state_map"] = p.steady_state_map ? to_json(*p.steady_state_map) : Json(nullptr);
  return j;
}

inline Json to_json(const ReconcileReport& r) {
  Json j;
  j["agreement"] = r.agreement;
  j["predicted_regime"] = regime_name(r.predicted_regime);
  j["trajectory_verdict"] = r.trajectory_verdict;
  j["max_deviation"] = r.max_deviation;
  j["note"] = r.note;
  return j;
}

inline const char* cut_kind_name(NegativeCut::Kind k) {
  switch (k) {
    case NegativeCut::Kind::NoNegativeEdges: return "NoNegativeEdges";
    case NegativeCut::Kind::NotACutSet: return "NotACutSet";
    case NegativeCut::Kind::CutSetAllBridges: return "CutSetAllBridges";
    case NegativeCut::Kind::CutSetMixed: return "CutSetMixed";
  }
  return "?";
}

/// The one-stop structural + spectral summary the analyze command prints.
/// Cut classification and inertia bounds only exist for connected undirected
/// graphs; they are null otherwise rather than an error so a single report
/// covers every ingestible graph.
inline Json analyze_report(const SignedGraph& g) {
  Json j;
  j["n"] = g.n();
  j["directed"] = g.directed();
  j["connected"] = is_connected(g);

  int neg = g.count_negative_edges();
  Json edges;
  edges["total"] = int(g.edges().size());
  edges["positive"] = int(g.edges().size()) - neg;
  edges["negative"] = neg;
  j["edges"] = std::move(edges);

  Json vm = Json::array();
  for (int i : g.negative_nodes()) vm.push_back(g.label(i));
  j["negative_nodes"] = std::move(vm);

  BalanceResult bal = structural_balance(g);
  j["structurally_balanced"] = bal.balanced;
  if (bal.balanced) {
    j["gauge"] = bal.gauge;
  } else {
    Json cyc = Json::array();
    for (int i : bal.witness_cycle) cyc.push_back(g.label(i));
    j["imbalance_witness_cycle"] = std::move(cyc);
  }
  j["weight_balanced"] = is_weight_balanced(g);

  if (!g.directed() && is_connected(g)) {
    NegativeCut cut = classify_negative_cut(g);
    Json jc;
    jc["class"] = cut_kind_name(cut.kind);
    jc["size"] = cut.size();
    j["negative_cut"] = std::move(jc);
    InertiaBounds b = inertia_counting_bounds(g);
    Json jb;
    jb["lower"] = b.lower;
    jb["upper"] = b.upper;
    j["inertia_bounds"] = std::move(jb);
  } else {
    j["negative_cut"] = nullptr;
    j["inertia_bounds"] = nullptr;
  }

  SignedLaplacian l = laplacian(g);
  SpectralReport rep = spectral_report(l);
  j["spectrum"] = to_json(rep);
  j["n_negative_eigenvalues"] = rep.n_negative;
  j["stable"] = rep.n_negative == 0;

  Matrix neg_l(l.n(), l.n());
  for (int r = 0; r < l.n(); ++r)
    for (int c = 0; c < l.n(); ++c) neg_l(r, c) = -l.m(r, c);
  j["flow_eventually_exp_positive"] = is_eventually_exp_positive(neg_l);
  return j;
}

// ---------------------------------------------------------------------------
// Run manifests
// ---------------------------------------------------------------------------

/// Record of one tool invocation: enough to rerun it and get byte-identical
/// files. Parameters stay ordered as inserted; no timestamps on purpose.
struct RunManifest {
  std::string command;
  std::string input_path;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string tool_version = kVersion;
  std::vector<std::string> outputs;
};

inline Json to_json(const RunManifest& m) {
  Json params = Json::object();
  for (const auto& [key, value] : m.parameters) params[key] = value;
  Json j;
  j["command"] = m.command;
  j["input_path"] = m.input_path;
  j["parameters"] = std::move(params);
  j["tool_version"] = m.tool_version;
  j["outputs"] = m.outputs;
  return j;
}

}  // namespace signednet
