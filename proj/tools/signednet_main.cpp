// Command-line front end: analyze | compensate | simulate | sweep.
//
// Exit codes are a contract:
//   0  success (simulate: prediction and trajectory agree)
//   1  usage error (bad flags, malformed vectors, unknown node labels)
//   2  input or precondition error (unreadable file, disconnected graph, ...)
//   3  simulate: prediction and trajectory disagree
//   4  an iterative numerical routine failed to converge
//
// Everything printed on stdout is machine-readable (JSON by default, CSV with
// --format csv); progress and summaries go to stderr. Identical invocations
// produce byte-identical stdout, and --out <dir> captures the canonical
// artifacts plus a manifest that records how to reproduce them.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "signednet/compensation.hpp"
#include "signednet/dynamics.hpp"
#include "signednet/errors.hpp"
#include "signednet/graph.hpp"
#include "signednet/io.hpp"
#include "signednet/laplacian.hpp"
#include "signednet/spectral.hpp"
#include "signednet/version.hpp"

namespace {

using namespace signednet;

Vec parse_csv_vector(const std::string& text) {
  Vec v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t used = 0;
    double val = 0.0;
    try {
      val = std::stod(tok, &used);
    } catch (const std::exception&) {
      fail(Err::UsageError, "bad number '" + tok + "' in vector '" + text + "'");
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
    if (used != tok.size())
      fail(Err::UsageError, "bad number '" + tok + "' in vector '" + text + "'");
    v.push_back(val);
  }
  if (v.empty()) fail(Err::UsageError, "empty vector '" + text + "'");
  return v;
}

std::vector<int> resolve_active(const SignedGraph& g, const std::string& text) {
  if (text == "vminus") return g.negative_nodes();
  std::vector<int> ids;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int found = -1;
    for (int i = 0; i < g.n(); ++i)
      if (g.label(i) == tok) {
        found = i;
        break;
      }
    if (found < 0) fail(Err::UsageError, "unknown node label '" + tok + "'");
    ids.push_back(found);
  }
  if (ids.empty()) fail(Err::UsageError, "empty active set '" + text + "'");
  return ids;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_full(const Vec& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_full(v[i]);
  }
  return out;
}

unsigned long long env_seed() {
  if (const char* env = std::getenv("SIGNEDNET_SEED")) {
    char* end = nullptr;
    unsigned long long s = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return s;
    fail(Err::UsageError, std::string("SIGNEDNET_SEED is not an integer: ") + env);
  }
  return 20240817ull;
}

Vec random_x0(int n, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec x(size_t(n), 0.0);
  for (double& v : x) v = u(rng);
  return x;
}

/// Write payload files plus a manifest describing the run, atomically.
void capture_outputs(const std::string& out_dir, RunManifest manifest,
                     std::vector<std::pair<std::string, std::string>> files) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  for (auto& [name, content] : files) {
    atomic_write_file(fs::path(out_dir) / name, content);
    manifest.outputs.push_back(name);
  }
  atomic_write_file(fs::path(out_dir) / "manifest.json", to_json(manifest).dump(2) + "\n");
}

struct GlobalFlags {
  std::string format = "json";
  std::string out_dir;
  double tol = 1e-6;
};

int run_analyze(const std::string& path, const GlobalFlags& flags) {
  SignedGraph g = load_graph_file(path);
  Json report = analyze_report(g);
  std::string json_text = report.dump(2) + "\n";

  if (flags.format == "csv")
    std::cout << spectrum_csv(spectral_report(laplacian(g)));
  else
    std::cout << json_text;

  if (!flags.out_dir.empty()) {
    RunManifest m;
    m.command = "analyze";
    m.input_path = path;
    m.parameters = {{"format", flags.format}};
    capture_outputs(flags.out_dir, std::move(m), {{"analyze.json", json_text}});
  }
  return 0;
}

int run_compensate(const std::string& path, const std::string& mode, const std::string& kvec_text,
                   const std::string& x0_text, const GlobalFlags& flags) {
  SignedGraph g = load_graph_file(path);

  CompensationVector k;
  if (mode == "vector") {
    if (kvec_text.empty()) fail(Err::UsageError, "--mode vector needs a gain vector argument");
    k = CompensationVector{parse_csv_vector(kvec_text), CompensationVector::Tag::General};
  } else {
    if (!kvec_text.empty())
      fail(Err::UsageError, "a positional gain vector is only valid with --mode vector");
    k = (mode == "delta") ? delta(g) : cluster_compensation(g);
  }

  DeltaComparison cmp = compare_delta(k, delta(g));
  BehaviorPrediction pred = classify(g, k);

  Json report;
  report["mode"] = mode;
  report["k"] = Json(k.k);
  Json active = Json::array();
  for (int i : k.active_set()) active.push_back(g.label(i));
  report["active_set"] = std::move(active);
  report["delta"] = Json(delta_vector(g));
  report["delta_comparison"] = delta_comparison_name(cmp);
  report["prediction"] = to_json(pred);
  if (!x0_text.empty()) {
    Vec x0 = parse_csv_vector(x0_text);
    report["x0"] = Json(x0);
    report["steady_state"] = Json(predict_steady_state(g, k, x0));
  }
  std::string json_text = report.dump(2) + "\n";

  if (flags.format == "csv")
    std::cout << gains_csv(g, k.k);
  else
    std::cout << json_text;

  if (!flags.out_dir.empty()) {
    RunManifest m;
    m.command = "compensate";
    m.input_path = path;
    m.parameters = {{"mode", mode}, {"format", flags.format}};
    if (!kvec_text.empty()) m.parameters.push_back({"k", kvec_text});
    if (!x0_text.empty()) m.parameters.push_back({"x0", x0_text});
    capture_outputs(flags.out_dir, std::move(m), {{"compensate.json", json_text}});
  }
  return 0;
}

int run_simulate(const std::string& path, const std::string& k_mode, const std::string& kvec_text,
                 const std::string& x0_text, const SimulationConfig& cfg,
                 const GlobalFlags& flags) {
  SignedGraph g = load_graph_file(path);

  CompensationVector k;
  if (k_mode == "vector") {
    if (kvec_text.empty()) fail(Err::UsageError, "--k-mode vector needs a gain vector argument");
    k = CompensationVector{parse_csv_vector(kvec_text), CompensationVector::Tag::General};
  } else {
    if (!kvec_text.empty())
      fail(Err::UsageError, "a positional gain vector is only valid with --k-mode vector");
    if (k_mode == "delta")
      k = delta(g);
    else if (k_mode == "cluster")
      k = cluster_compensation(g);
    else
      k = CompensationVector{Vec(size_t(g.n()), 0.0), CompensationVector::Tag::General};
  }

  bool drew_x0 = x0_text.empty();
  unsigned long long seed = drew_x0 ? env_seed() : 0;
  Vec x0 = drew_x0 ? random_x0(g.n(), seed) : parse_csv_vector(x0_text);

  BehaviorPrediction pred = classify(g, k);
  Trajectory traj = integrate(g, k, x0, cfg);
  ReconcileReport rec = reconcile(traj, pred, flags.tol);

  std::string traj_text = trajectory_csv(traj);
  Json summary;
  summary["k"] = Json(k.k);
  summary["x0"] = Json(x0);
  summary["prediction"] = to_json(pred);
  summary["reconcile"] = to_json(rec);
  summary["final_time"] = traj.final_time();
  summary["final_state"] = Json(traj.final_state());
  summary["samples"] = int(traj.times.size());
  std::string json_text = summary.dump(2) + "\n";

  if (flags.format == "csv")
    std::cout << traj_text;
  else
    std::cout << json_text;

  if (!flags.out_dir.empty()) {
    RunManifest m;
    m.command = "simulate";
    m.input_path = path;
    m.parameters = {{"k_mode", k_mode},
                    {"x0", join_full(x0)},
                    {"dt", format_full(cfg.dt)},
                    {"t_max", format_full(cfg.t_max)},
                    {"converge_tol", format_full(cfg.converge_tol)},
                    {"diverge_threshold", format_full(cfg.diverge_threshold)},
                    {"stride", std::to_string(cfg.sample_stride)},
                    {"tol", format_full(flags.tol)},
                    {"format", flags.format}};
    if (!kvec_text.empty()) m.parameters.push_back({"k", kvec_text});
    if (drew_x0) m.parameters.push_back({"seed", std::to_string(seed)});
    capture_outputs(flags.out_dir, std::move(m),
                    {{"trajectory.csv", traj_text},
                     {"reconcile.json", to_json(rec).dump(2) + "\n"}});
  }

  if (!rec.agreement) {
    std::cerr << "regime mismatch: " << rec.note << "\n";
    return 3;
  }
  return 0;
}

int run_sweep(const std::string& path, const std::string& active_text, double qmin, double qmax,
              int steps, const GlobalFlags& flags) {
  SignedGraph g = load_graph_file(path);
  std::vector<int> active = resolve_active(g, active_text);

  if (steps < 1) fail(Err::UsageError, "--steps must be at least 1");
  std::vector<double> grid;
  grid.reserve(size_t(steps));
  if (steps == 1)
    grid.push_back(qmin);
  else
    for (int i = 0; i < steps; ++i)
      grid.push_back(qmin + double(i) * (qmax - qmin) / double(steps - 1));

  std::vector<SweepPoint> points = sweep(g, active, grid);
  std::string csv = sweep_csv(points);
  std::cout << csv;

  std::vector<double> crossings = sweep_zero_crossings(points);
  std::string summary = "zero crossings:";
  if (crossings.empty()) summary += " none";
  for (double q : crossings) summary += " q=" + format_sci(q);
  std::cerr << summary << "\n";

  if (!flags.out_dir.empty()) {
    RunManifest m;
    m.command = "sweep";
    m.input_path = path;
    m.parameters = {{"active", active_text},
                    {"qmin", format_full(qmin)},
                    {"qmax", format_full(qmax)},
                    {"steps", std::to_string(steps)},
                    {"format", flags.format}};
    capture_outputs(flags.out_dir, std::move(m), {{"sweep.csv", csv}});
  }
  return 0;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Err::UsageError: return 1;
    case Err::RegimeMismatch: return 3;
    case Err::NoConvergence: return 4;
    default: return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed-network stability toolkit"};
  app.set_version_flag("--version", std::string(signednet::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--format", flags.format, "stdout payload format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", flags.out_dir, "directory to capture result files and a run manifest");
  app.add_option("--tol", flags.tol, "prediction/trajectory reconciliation tolerance")
      ->capture_default_str();

  auto* cmd_an = app.add_subcommand("analyze", "structural and spectral report for a graph");
  std::string an_path;
  cmd_an->add_option("path", an_path, "edge-list file")->required();

  auto* cmd_co =
      app.add_subcommand("compensate", "choose gains and predict the compensated behavior");
  std::string co_path, co_mode = "delta", co_kvec, co_x0;
  cmd_co->add_option("path", co_path, "edge-list file")->required();
  cmd_co->add_option("--mode", co_mode, "gain rule")
      ->check(CLI::IsMember({"delta", "cluster", "vector"}))
      ->capture_default_str();
  cmd_co->add_option("kvec", co_kvec, "comma-separated gains (vector mode only)");
  cmd_co->add_option("--x0", co_x0, "initial state for a steady-state prediction");

  auto* cmd_si =
      app.add_subcommand("simulate", "integrate the compensated flow and check the prediction");
  std::string si_path, si_kmode = "delta", si_kvec, si_x0;
  signednet::SimulationConfig cfg;
  cmd_si->add_option("path", si_path, "edge-list file")->required();
  cmd_si->add_option("--k-mode", si_kmode, "gain rule")
      ->check(CLI::IsMember({"delta", "cluster", "vector", "zero"}))
      ->capture_default_str();
  cmd_si->add_option("kvec", si_kvec, "comma-separated gains (vector mode only)");
  cmd_si->add_option("--x0", si_x0, "initial state (random when omitted; SIGNEDNET_SEED fixes it)");
  cmd_si->add_option("--dt", cfg.dt, "step size")->capture_default_str();
  cmd_si->add_option("--t-max", cfg.t_max, "time horizon")->capture_default_str();
  cmd_si->add_option("--converge-tol", cfg.converge_tol, "stop when the derivative is this small")
      ->capture_default_str();
  cmd_si->add_option("--diverge-threshold", cfg.diverge_threshold,
                     "declare divergence at this magnitude")
      ->capture_default_str();
  cmd_si->add_option("--stride", cfg.sample_stride, "steps between samples")
      ->capture_default_str();

  auto* cmd_sw = app.add_subcommand("sweep", "scan gain magnitudes and track the spectral edge");
  std::string sw_path, sw_active = "vminus";
  double sw_qmin = 0.0, sw_qmax = 2.0;
  int sw_steps = 201;
  cmd_sw->add_option("path", sw_path, "edge-list file")->required();
  cmd_sw->add_option("--active", sw_active, "comma-separated node labels, or 'vminus'")
      ->capture_default_str();
  cmd_sw->add_option("--qmin", sw_qmin, "smallest gain multiplier")->capture_default_str();
  cmd_sw->add_option("--qmax", sw_qmax, "largest gain multiplier")->capture_default_str();
  cmd_sw->add_option("--steps", sw_steps, "grid points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*cmd_an) return run_analyze(an_path, flags);
    if (*cmd_co) return run_compensate(co_path, co_mode, co_kvec, co_x0, flags);
    if (*cmd_si) return run_simulate(si_path, si_kmode, si_kvec, si_x0, cfg, flags);
    if (*cmd_sw) return run_sweep(sw_path, sw_active, sw_qmin, sw_qmax, sw_steps, flags);
  } catch (const signednet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
