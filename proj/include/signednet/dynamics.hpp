#pragma once
// Time-domain side of the toolkit: integrate ẋ = −L^k x with a fixed-step
// classical Runge–Kutta scheme, record sampled trajectories, and reconcile
// what the flow actually did against what the classifier promised.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "signednet/compensation.hpp"
#include "signednet/errors.hpp"
#include "signednet/graph.hpp"
#include "signednet/laplacian.hpp"
#include "signednet/matrix.hpp"

namespace signednet {

struct SimulationConfig {
  double dt = 0.01;
  double t_max = 100.0;
  double converge_tol = 1e-9;
  double diverge_threshold = 1e6;
  int sample_stride = 10;
};

/// Sampled solution of the compensated flow. Samples are dt·stride apart,
/// plus the final state whenever integration stopped off-stride.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  double dt = 0.0;
  bool converged = false;
  bool diverged = false;
  double final_residual = 0.0;  // ‖ẋ‖∞ at the last accepted state

  const Vec& final_state() const { return states.back(); }
  double final_time() const { return times.back(); }
};

/// One derivative evaluation done the way an agent would: each node sums
/// weighted disagreements with its neighbors and damps itself, never
/// touching a global matrix. Directed nodes only listen to their out-edges'
/// targets (the row convention of the Laplacian).
inline Vec step_local(const SignedGraph& g, const CompensationVector& k, const Vec& x) {
  int n = g.n();
  if (int(x.size()) != n || int(k.k.size()) != n)
    fail(Err::LengthMismatch, "state/gain length != node count");

  Vec dxdt(size_t(n), 0.0);
  for (const Edge& e : g.edges()) {
    dxdt[size_t(e.u)] += e.w * (x[size_t(e.v)] - x[size_t(e.u)]);
    if (!g.directed()) dxdt[size_t(e.v)] += e.w * (x[size_t(e.u)] - x[size_t(e.v)]);
  }
  for (int i = 0; i < n; ++i) dxdt[size_t(i)] -= k.k[size_t(i)] * x[size_t(i)];
  return dxdt;
}

namespace detail {

inline void check_config(const SimulationConfig& cfg, const Matrix& lk) {
  if (!(cfg.dt > 0.0)) fail(Err::InvalidConfig, "dt must be positive");
  if (!(cfg.t_max > 0.0)) fail(Err::InvalidConfig, "t_max must be positive");
  if (!(cfg.converge_tol > 0.0)) fail(Err::InvalidConfig, "converge_tol must be positive");
  if (!(cfg.diverge_threshold > 0.0))
    fail(Err::InvalidConfig, "diverge_threshold must be positive");
  if (cfg.sample_stride < 1) fail(Err::InvalidConfig, "sample_stride must be >= 1");
  // Explicit fourth-order stability region on the negative real axis ends
  // near 2.785/dt; past that the iteration amplifies instead of decaying.
  if (cfg.dt * lk.inf_norm() >= 2.5)
    fail(Err::InvalidConfig,
         "dt too large for the stiffest mode: need dt*|L^k|_inf < 2.5, got " +
             std::to_string(cfg.dt * lk.inf_norm()));
}

}  // namespace detail

/// Fixed-step classical Runge–Kutta integration of ẋ = −L^k x.
///
/// Stops at the first of: derivative norm under converge_tol (converged),
/// state norm over diverge_threshold (diverged), or t_max. The derivative
/// at the end of each step is reused as the next step's first stage, so
/// convergence checks come free of extra evaluations.
inline Trajectory integrate(const SignedGraph& g, const CompensationVector& k,
                            const Vec& x0, const SimulationConfig& cfg = {}) {
  int n = g.n();
  if (int(x0.size()) != n) fail(Err::LengthMismatch, "x0 length != node count");
  Matrix lk = compensated_laplacian(g, k.k).m;
  detail::check_config(cfg, lk);

  auto deriv = [&](const Vec& x) {
    Vec d = lk * x;
    for (double& v : d) v = -v;
    return d;
  };

  Trajectory traj;
  traj.dt = cfg.dt;
  Vec x = x0;
  Vec k1 = deriv(x);
  traj.times.push_back(0.0);
  traj.states.push_back(x);
  traj.final_residual = inf_norm(k1);
  if (traj.final_residual <= cfg.converge_tol) {
    traj.converged = true;  // started at an equilibrium
    return traj;
  }

  long total_steps = long(std::ceil(cfg.t_max / cfg.dt - 1e-12));
  Vec k2(size_t(n), 0.0), k3(size_t(n), 0.0), k4(size_t(n), 0.0), probe(size_t(n), 0.0);

  for (long step = 1; step <= total_steps; ++step) {
    double h = cfg.dt;
    for (int i = 0; i < n; ++i) probe[size_t(i)] = x[size_t(i)] + 0.5 * h * k1[size_t(i)];
    k2 = deriv(probe);
    for (int i = 0; i < n; ++i) probe[size_t(i)] = x[size_t(i)] + 0.5 * h * k2[size_t(i)];
    k3 = deriv(probe);
    for (int i = 0; i < n; ++i) probe[size_t(i)] = x[size_t(i)] + h * k3[size_t(i)];
    k4 = deriv(probe);
    for (int i = 0; i < n; ++i)
      x[size_t(i)] += h / 6.0 *
                      (k1[size_t(i)] + 2.0 * k2[size_t(i)] + 2.0 * k3[size_t(i)] + k4[size_t(i)]);

    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); }))
      fail(Err::StepInstability, "non-finite state at t=" + std::to_string(double(step) * h));

    k1 = deriv(x);  // next step's first stage and this step's residual probe
    double t = double(step) * h;
    bool sample = step % cfg.sample_stride == 0;
    bool last = step == total_steps;
    traj.final_residual = inf_norm(k1);

    if (traj.final_residual <= cfg.converge_tol) {
      traj.converged = true;
      last = true;
    }
    if (inf_norm(x) >= cfg.diverge_threshold) {
      traj.diverged = true;
      last = true;
    }
    if (sample || last) {
      traj.times.push_back(t);
      traj.states.push_back(x);
    }
    if (last) break;
  }
  return traj;
}

/// Verdict of a trajectory-versus-prediction comparison. agreement is the
/// exit-code contract: a diverged run agrees with an Unstable prediction,
/// a converged run agrees with its consensus pattern, and spectral-only
/// predictions agree whenever stability matches.
struct ReconcileReport {
  bool agreement = false;
  Regime predicted_regime = Regime::Indeterminate;
  std::string trajectory_verdict;  // "converged" | "diverged" | "timed_out"
  double max_deviation = 0.0;      // ‖x_final − P·x0‖∞ when P exists
  std::string note;
};

inline ReconcileReport reconcile(const Trajectory& traj,
                                 const BehaviorPrediction& prediction,
                                 double tol = 1e-6) {
  ReconcileReport rep;
  rep.predicted_regime = prediction.regime;
  rep.trajectory_verdict =
      traj.diverged ? "diverged" : (traj.converged ? "converged" : "timed_out");

  const Vec& x0 = traj.states.front();
  const Vec& xf = traj.final_state();

  if (prediction.steady_state_map) {
    Vec want = *prediction.steady_state_map * x0;
    double dev = 0.0;
    for (size_t i = 0; i < want.size(); ++i)
      dev = std::max(dev, std::abs(xf[i] - want[i]));
    rep.max_deviation = dev;
  }

  switch (prediction.regime) {
    case Regime::Unstable:
      rep.agreement = traj.diverged;
      rep.note = rep.agreement ? "flow diverged as predicted"
                               : "prediction says unstable but the flow did not diverge";
      break;
    case Regime::TrivialConsensus:
    case Regime::BipartiteConsensus:
    case Regime::ClusterConsensus:
      rep.agreement = !traj.diverged && rep.max_deviation <= tol;
      rep.note = rep.agreement
                     ? "final state matches the predicted projection"
                     : "final state misses the predicted steady state by " +
                           std::to_string(rep.max_deviation);
      break;
    case Regime::NoBipartiteConsensus:
    case Regime::Indeterminate:
      // Only the stability half is checkable: a stable spectrum must not
      // produce divergence and vice versa.
      rep.agreement = prediction.spectrally_stable ? !traj.diverged : traj.diverged;
      rep.note = rep.agreement ? "spectral stability verdict consistent with the flow"
                               : "spectral stability verdict contradicts the flow";
      break;
  }
  return rep;
}

/// Escalate a disagreeing reconciliation to an error that carries both
/// verdicts, for callers that treat mismatch as fatal.
inline void require_agreement(const ReconcileReport& rep) {
  if (rep.agreement) return;
  fail(Err::RegimeMismatch, std::string("predicted ") + regime_name(rep.predicted_regime) +
                                " but trajectory " + rep.trajectory_verdict + ": " + rep.note);
}

}  // namespace signednet
