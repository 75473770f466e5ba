#pragma once

// Step schedules, gradient-perturbation oracles, and the three recursions:
//   proxsgd_a:   x_k = prox_{γ_k(g + I_K)}(x_{k−1} − γ_k H_k)
//   proxsgd_b:   x_k = Π_K(prox_{γ_k g}(x_{k−1} − γ_k H_k))
//   subgradient: x_k = Π_K(x_{k−1} − γ_k (v_k + δ_k)),  v_k ∈ ∂̄(f + g)(x_{k−1})
// with H_k = ∇f(x_{k−1}) + δ_k.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "incluso/errors.hpp"
#include "incluso/field.hpp"
#include "incluso/functions.hpp"
#include "incluso/geometry.hpp"

namespace incluso {

/// γ_k = c·k^(−α), or a constant step (used by deterministic benchmarks).
class StepSchedule {
 public:
  static StepSchedule decaying(double c, double alpha) {
    if (!(c > 0.0) || !std::isfinite(c)) throw UsageError("schedule.c must be positive");
    if (!(alpha > 0.5 && alpha <= 1.0)) throw UsageError("schedule.alpha must lie in (0.5, 1]");
    return StepSchedule(c, alpha, false);
  }

  static StepSchedule constant(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw UsageError("schedule.constant must be positive");
    return StepSchedule(gamma, 0.0, true);
  }

  bool is_constant() const { return constant_; }
  double c() const { return c_; }
  double alpha() const { return alpha_; }

  /// γ_k for k ≥ 1.
  double gamma(std::size_t k) const {
    if (k == 0) throw UsageError("schedule: steps are indexed from 1");
    if (constant_) return c_;
    return c_ * std::pow(static_cast<double>(k), -alpha_);
  }

  /// γ_1, the largest step of a nonincreasing schedule.
  double first() const { return gamma(1); }

 private:
  StepSchedule(double c, double alpha, bool constant) : c_(c), alpha_(alpha), constant_(constant) {}

  double c_;
  double alpha_;
  bool constant_;
};

enum class NoiseKind { None, Decaying, UniformBall, Rademacher, Markov };

inline const char* to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::None: return "none";
    case NoiseKind::Decaying: return "decaying";
    case NoiseKind::UniformBall: return "uniform_ball";
    case NoiseKind::Rademacher: return "rademacher";
    case NoiseKind::Markov: return "markov";
  }
  return "?";
}

struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double sigma = 0.0;  // bound (iid) or stationary std (markov)
  double rho = 0.0;    // markov AR(1) coefficient
  double r0 = 0.0;     // decaying amplitude
  double beta = 1.0;   // decaying exponent
  Vector direction;    // unit vector u; empty selects (1,…,1)/√d

  static NoiseSpec none() { return {}; }
  static NoiseSpec rademacher(double sigma) { return {NoiseKind::Rademacher, sigma, 0, 0, 1, {}}; }
  static NoiseSpec uniform_ball(double sigma) { return {NoiseKind::UniformBall, sigma, 0, 0, 1, {}}; }
  static NoiseSpec markov(double rho, double sigma) { return {NoiseKind::Markov, sigma, rho, 0, 1, {}}; }
  static NoiseSpec decaying(double r0, double beta) { return {NoiseKind::Decaying, 0, 0, r0, beta, {}}; }
};

/// Source of δ_k = H_k − ∇f(x_{k−1}). Owns its RNG; reproducible under a seed.
///
/// Markov: z_k = ρ z_{k−1} + √(1−ρ²) σ ξ_k, δ_k = z_k·u. The stationary law
/// N(0, σ²) does not depend on x and has mean zero, so Φ(x, z) = ∇f(x) + z·u
/// integrates to ∇f(x).
class NoiseOracle {
 public:
  NoiseOracle(NoiseSpec spec, Index dim, std::uint64_t seed) : spec_(std::move(spec)), rng_(seed), seed_(seed) {
    if (dim <= 0) throw UsageError("noise: dimension must be positive");
    if (spec_.sigma < 0.0 || !std::isfinite(spec_.sigma)) throw UsageError("noise.sigma must be nonnegative");
    if (spec_.kind == NoiseKind::Markov && !(std::abs(spec_.rho) < 1.0)) {
      throw UsageError("noise.rho must satisfy |rho| < 1");
    }
    if (spec_.kind == NoiseKind::Decaying && !(spec_.beta > 0.0)) throw UsageError("noise.beta must be positive");
    if (spec_.direction.size() == 0) {
      spec_.direction = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    } else {
      detail::require_dim(dim, spec_.direction.size(), "noise.direction");
      const double n = spec_.direction.norm();
      if (!(n > 0.0)) throw UsageError("noise.direction must be nonzero");
      spec_.direction /= n;
    }
  }

  const NoiseSpec& spec() const { return spec_; }
  const Vector& direction() const { return spec_.direction; }
  std::uint64_t seed() const { return seed_; }
  Index dim() const { return spec_.direction.size(); }

  /// Every δ_k is a multiple of direction().
  bool collinear() const { return spec_.kind != NoiseKind::UniformBall; }

  /// Current state z_k of the hidden chain (0 for non-Markov kinds).
  double hidden_state() const { return z_; }

  /// δ_k. The oracles in this library do not depend on x or ∇f; the arguments
  /// are part of the interface for state-dependent perturbations.
  Vector next(const Vector& /*x_prev*/, const Vector& /*grad*/, std::size_t k) {
    if (k == 0) throw UsageError("noise: steps are indexed from 1");
    const Vector& u = spec_.direction;
    switch (spec_.kind) {
      case NoiseKind::None: return Vector::Zero(u.size());
      case NoiseKind::Decaying: return spec_.r0 * std::pow(static_cast<double>(k), -spec_.beta) * u;
      case NoiseKind::Rademacher: {
        std::bernoulli_distribution coin(0.5);
        return (coin(rng_) ? spec_.sigma : -spec_.sigma) * u;
      }
      case NoiseKind::UniformBall: {
        std::normal_distribution<double> normal;
        Vector g(u.size());
        for (Index i = 0; i < g.size(); ++i) g[i] = normal(rng_);
        const double n = g.norm();
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double r = spec_.sigma * std::pow(unif(rng_), 1.0 / static_cast<double>(u.size()));
        return n > 0.0 ? Vector((r / n) * g) : Vector::Zero(u.size());
      }
      case NoiseKind::Markov: {
        std::normal_distribution<double> normal;
        z_ = spec_.rho * z_ + std::sqrt(1.0 - spec_.rho * spec_.rho) * spec_.sigma * normal(rng_);
        return z_ * u;
      }
    }
    return Vector::Zero(u.size());
  }

 private:
  NoiseSpec spec_;
  std::mt19937_64 rng_;
  std::uint64_t seed_;
  double z_ = 0.0;
};

inline Vector noise_next(NoiseOracle& oracle, const Vector& x_prev, const Vector& grad, std::size_t k) {
  return oracle.next(x_prev, grad, k);
}

enum class Algorithm { ProxSgdA, ProxSgdB, Subgradient };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ProxSgdA: return "proxsgd_a";
    case Algorithm::ProxSgdB: return "proxsgd_b";
    case Algorithm::Subgradient: return "subgradient";
  }
  return "?";
}

/// How v_k is picked from ∂̄(f + g)(x_{k−1}) by the subgradient method.
enum class Selection { Midpoint, RandomVertex };

struct StepRecord {
  double t = 0.0;
  double gamma = 0.0;
  double V = 0.0;
  double u_value = 0.0;
  double min_norm = 0.0;
  double step_norm = 0.0;
  double noise_norm = 0.0;
  double y_gap = 0.0;  // ‖x_k − y_k‖, y_k the pre-projection / prox target
};

/// Iterates x_0..x_N with per-step diagnostics. Index 0 holds the start point.
struct Trace {
  Algorithm algorithm = Algorithm::ProxSgdA;
  std::vector<Vector> iterates;
  std::vector<StepRecord> records;
  std::vector<Vector> noise;         // δ_k (zero at k = 0)
  std::vector<Vector> oracle_calls;  // H_k, or Y_k for the subgradient method (zero at k = 0)
  std::vector<double> hidden;        // Markov chain state z_k; empty for other oracles

  std::size_t size() const { return iterates.size(); }
  std::size_t steps() const { return iterates.empty() ? 0 : iterates.size() - 1; }
  Index dim() const { return iterates.empty() ? 0 : iterates.front().size(); }
};

/// Thrown when a run hits a non-finite value; carries the trace up to the last good iterate.
class RunAborted : public NumericFailure {
 public:
  RunAborted(std::size_t iteration, const std::string& what, Trace partial)
      : NumericFailure(iteration, what), partial_(std::move(partial)) {}
  const Trace& partial() const { return partial_; }

 private:
  Trace partial_;
};

struct RunOptions {
  Selection selection = Selection::Midpoint;
  std::uint64_t selection_seed = 0;
  /// Test hook: poison the gradient at this iteration.
  std::optional<std::size_t> inject_nan_at;
};

namespace detail {

inline void push_record(Trace& tr, const Problem& p, const Vector& x, const Vector& grad, double t, double gamma,
                        double step_norm, double noise_norm, double y_gap) {
  const StationarityReport rep = stationarity_from_field(field_from_gradient(p.g, grad, x), p.body, x);
  StepRecord r;
  r.t = t;
  r.gamma = gamma;
  r.V = p.objective(x);
  r.u_value = rep.u_value;
  r.min_norm = rep.min_norm();
  r.step_norm = step_norm;
  r.noise_norm = noise_norm;
  r.y_gap = y_gap;
  tr.records.push_back(r);
}

}  // namespace detail

inline Trace run(Algorithm algorithm, const Problem& problem, const StepSchedule& schedule, NoiseOracle& oracle,
                 const Vector& x0, std::size_t n_iters, const RunOptions& options = {}) {
  const Index d = problem.body.dim();
  detail::require_dim(d, problem.f.dim(), "run: objective");
  detail::require_dim(d, x0.size(), "run: x0");
  detail::require_dim(d, oracle.dim(), "run: noise");
  if (n_iters < 1) throw UsageError("run: iters must be at least 1");
  if (!problem.body.contains(x0)) throw DomainError("run: x0 must lie in the constraint set");
  if (algorithm == Algorithm::ProxSgdA && !problem.body.is_box()) {
    throw UsageError("proxsgd_a requires a box constraint");
  }
  if (problem.body.is_ball() && problem.g.kind() != PenaltyKind::Zero) {
    throw UsageError("ball constraints support only the zero penalty");
  }
  if (algorithm != Algorithm::Subgradient) problem.g.check_gamma(schedule.first());

  Trace tr;
  tr.algorithm = algorithm;
  tr.iterates.reserve(n_iters + 1);
  tr.records.reserve(n_iters + 1);
  tr.noise.reserve(n_iters + 1);
  tr.oracle_calls.reserve(n_iters + 1);
  const bool markov = oracle.spec().kind == NoiseKind::Markov;
  if (markov) tr.hidden.reserve(n_iters + 1);

  std::mt19937_64 select_rng(options.selection_seed);
  std::bernoulli_distribution coin(0.5);

  Vector x = x0;
  Vector grad = problem.f.gradient(x);
  tr.iterates.push_back(x);
  tr.noise.push_back(Vector::Zero(d));
  tr.oracle_calls.push_back(Vector::Zero(d));
  if (markov) tr.hidden.push_back(oracle.hidden_state());
  detail::push_record(tr, problem, x, grad, 0.0, 0.0, 0.0, 0.0, 0.0);

  double t = 0.0;
  for (std::size_t k = 1; k <= n_iters; ++k) {
    const double gamma = schedule.gamma(k);
    if (options.inject_nan_at && *options.inject_nan_at == k) grad[0] = std::numeric_limits<double>::quiet_NaN();
    if (!grad.allFinite()) throw RunAborted(k, "non-finite gradient", std::move(tr));

    Vector delta = oracle.next(x, grad, k);
    Vector call;
    Vector x_next;
    double y_gap = 0.0;
    switch (algorithm) {
      case Algorithm::ProxSgdA: {
        call = grad + delta;
        x_next = prox_with_indicator(problem.g, problem.body, gamma, x - gamma * call).point;
        break;
      }
      case Algorithm::ProxSgdB: {
        call = grad + delta;
        const Vector y = prox(problem.g, gamma, x - gamma * call).point;
        x_next = project(problem.body, y);
        y_gap = (x_next - y).norm();
        break;
      }
      case Algorithm::Subgradient: {
        Vector v = grad;
        for (Index i = 0; i < d; ++i) {
          const Interval c = problem.g.clarke1(x[i]);
          v[i] += options.selection == Selection::Midpoint ? c.mid() : (coin(select_rng) ? c.hi : c.lo);
        }
        call = v + delta;
        x_next = project(problem.body, x - gamma * call);
        y_gap = (x_next - x).norm();
        break;
      }
    }
    if (!x_next.allFinite()) throw RunAborted(k, "non-finite iterate", std::move(tr));

    t += gamma;
    const double step_norm = (x_next - x).norm();
    const double noise_norm = delta.norm();
    x = std::move(x_next);
    grad = problem.f.gradient(x);
    tr.iterates.push_back(x);
    tr.noise.push_back(std::move(delta));
    tr.oracle_calls.push_back(std::move(call));
    if (markov) tr.hidden.push_back(oracle.hidden_state());
    detail::push_record(tr, problem, x, grad, t, gamma, step_norm, noise_norm, y_gap);
  }
  return tr;
}

inline Trace run_proxsgd_a(const Problem& p, const StepSchedule& s, NoiseOracle& o, const Vector& x0, std::size_t n) {
  return run(Algorithm::ProxSgdA, p, s, o, x0, n);
}

inline Trace run_proxsgd_b(const Problem& p, const StepSchedule& s, NoiseOracle& o, const Vector& x0, std::size_t n) {
  return run(Algorithm::ProxSgdB, p, s, o, x0, n);
}

inline Trace run_projected_subgradient(const Problem& p, const StepSchedule& s, NoiseOracle& o, const Vector& x0,
                                       std::size_t n, Selection selection = Selection::Midpoint) {
  RunOptions opt;
  opt.selection = selection;
  return run(Algorithm::Subgradient, p, s, o, x0, n, opt);
}

// ---------------------------------------------------------------------------
// Residual of the prox optimality inclusion

/// Distance of (x_{k−1} − x_k)/γ_k − H_k to ∂̄g(x_k) + N_K(x_k), in the sup norm.
/// Equivalently (w_k − x_k)/γ_k ∈ ∂̄g(x_k) + N_K(x_k) with w_k = x_{k−1} − γ_k H_k.
inline double vi_residual(const Trace& tr, const Problem& p, std::size_t k) {
  if (k == 0 || k >= tr.size()) throw UsageError("vi_residual: step index out of range");
  const Vector& x = tr.iterates[k];
  const double gamma = tr.records[k].gamma;
  const Vector r = (tr.iterates[k - 1] - x) / gamma - tr.oracle_calls[k];
  const NormalCone cone = normal_cone(p.body, x);
  if (cone.ray) {
    const double t = std::max(0.0, r.dot(*cone.ray));
    const IntervalBox cb = clarke_box(p.g, x);
    return dist_to_intervalbox(r - t * *cone.ray, cb);
  }
  double worst = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    Interval c = p.g.clarke1(x[i]);
    switch (cone.faces[static_cast<std::size_t>(i)]) {
      case ConeFace::Zero: break;
      case ConeFace::RayUp: c.hi = kInf; break;
      case ConeFace::RayDown: c.lo = -kInf; break;
      case ConeFace::Line: c.lo = -kInf; c.hi = kInf; break;
    }
    const double gap = std::max({0.0, c.lo - r[i], r[i] - c.hi});
    worst = std::max(worst, gap);
  }
  return worst;
}

inline double max_vi_residual(const Trace& tr, const Problem& p) {
  double worst = 0.0;
  for (std::size_t k = 1; k < tr.size(); ++k) worst = std::max(worst, vi_residual(tr, p, k));
  return worst;
}

// ---------------------------------------------------------------------------
// Empirical assumption checks

struct DriftReport {
  double slope = 0.0;      // least-squares fit of W(z_{k+1}) on W(z_k)
  double intercept = 0.0;
  double theory_slope = 0.0;
  double theory_intercept = 0.0;
  double max_excess_z = 0.0;  // worst bin excess over the bound, in standard errors
  bool passed = false;
};

/// Drift of W(z) = 1 + z² for the AR(1) chain:
/// E[W(z_{k+1}) | z_k] ≤ ρ²W(z_k) + (1−ρ²)(1+σ²), checked on quantile bins of W(z_k).
inline DriftReport drift_check(const std::vector<double>& chain, double rho, double sigma, int bins = 10,
                               double z_slack = 4.0) {
  if (chain.size() < static_cast<std::size_t>(2 * bins + 1)) throw UsageError("drift_check: chain too short");
  DriftReport rep;
  rep.theory_slope = rho * rho;
  rep.theory_intercept = (1.0 - rho * rho) * (1.0 + sigma * sigma);
  const std::size_t n = chain.size() - 1;
  std::vector<double> w(n), wn(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = 1.0 + chain[k] * chain[k];
    wn[k] = 1.0 + chain[k + 1] * chain[k + 1];
  }
  const double mw = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(n);
  const double mn = std::accumulate(wn.begin(), wn.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (w[k] - mw) * (wn[k] - mn);
    sxx += (w[k] - mw) * (w[k] - mw);
  }
  rep.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  rep.intercept = mn - rep.slope * mw;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  rep.max_excess_z = -kInf;
  for (int b = 0; b < bins; ++b) {
    const std::size_t lo = n * static_cast<std::size_t>(b) / static_cast<std::size_t>(bins);
    const std::size_t hi = n * static_cast<std::size_t>(b + 1) / static_cast<std::size_t>(bins);
    const double m = static_cast<double>(hi - lo);
    double s = 0.0, ss = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      const std::size_t k = order[j];
      const double e = wn[k] - (rep.theory_slope * w[k] + rep.theory_intercept);
      s += e;
      ss += e * e;
    }
    const double mean = s / m;
    const double var = std::max(0.0, ss / m - mean * mean);
    const double se = std::sqrt(var / m);
    const double z = se > 0.0 ? mean / se : (mean > 0.0 ? kInf : 0.0);
    rep.max_excess_z = std::max(rep.max_excess_z, z);
  }
  rep.passed = rep.max_excess_z <= z_slack;
  return rep;
}

struct AssumptionReport {
  /// Cauchy tail sup_{m ≥ n ≥ N} ‖Σ_{k=n}^m γ_k e_k‖ for each N in tail_starts.
  std::vector<std::size_t> tail_starts;
  std::vector<double> tail_sup;
  /// False when the noise is not collinear; tail_sup is then the anchored
  /// sup_{m ≥ N} ‖Σ_{k=N}^m γ_k e_k‖, which is within a factor 2 of the full sup.
  bool tail_exact = true;
  bool tail_decreasing = true;

  double max_step_ratio = 0.0;  // max_k ‖x_k − x_{k−1}‖ / γ_k
  double y_gap_head_max = 0.0;  // first half of the run
  double y_gap_tail_max = 0.0;  // last 10%
  bool y_gap_vanishing = true;

  double gamma_sq_sum = 0.0;
  bool schedule_summable = true;  // α ∈ (0.5, 1] ⇒ Σγ = ∞, Σγ² < ∞

  std::optional<DriftReport> drift;
  std::optional<double> noise_lag1_autocorr;  // Markov: empirical conditional bias coefficient
  std::optional<double> mean_bias_norm;       // Markov: mean ‖E[δ_k | z_{k−1}]‖ using the fitted coefficient
};

inline std::vector<std::size_t> default_tail_starts(std::size_t steps) {
  std::vector<std::size_t> out;
  for (std::size_t div : {std::size_t{100}, std::size_t{10}, std::size_t{2}}) {
    const std::size_t n = std::max<std::size_t>(1, steps / div);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

inline AssumptionReport check_assumptions(const Trace& tr, const NoiseOracle& oracle, const StepSchedule& schedule,
                                          std::vector<std::size_t> tail_starts = {}) {
  AssumptionReport rep;
  const std::size_t steps = tr.steps();
  if (steps == 0) throw UsageError("check_assumptions: empty trace");
  if (tail_starts.empty()) tail_starts = default_tail_starts(steps);
  rep.tail_starts = tail_starts;
  rep.tail_exact = oracle.collinear();

  const Vector& u = oracle.direction();
  if (rep.tail_exact) {
    // Scalar partial sums along u: S_j = Σ_{k ≤ j} γ_k ⟨e_k, u⟩.
    std::vector<double> s(steps + 1, 0.0);
    for (std::size_t k = 1; k <= steps; ++k) s[k] = s[k - 1] + tr.records[k].gamma * tr.noise[k].dot(u);
    for (std::size_t n0 : tail_starts) {
      if (n0 < 1 || n0 > steps) throw UsageError("check_assumptions: tail start out of range");
      const auto [mn, mx] = std::minmax_element(s.begin() + static_cast<std::ptrdiff_t>(n0 - 1), s.end());
      rep.tail_sup.push_back(*mx - *mn);
    }
  } else {
    for (std::size_t n0 : tail_starts) {
      if (n0 < 1 || n0 > steps) throw UsageError("check_assumptions: tail start out of range");
      Vector acc = Vector::Zero(tr.dim());
      double best = 0.0;
      for (std::size_t k = n0; k <= steps; ++k) {
        acc += tr.records[k].gamma * tr.noise[k];
        best = std::max(best, acc.norm());
      }
      rep.tail_sup.push_back(best);
    }
  }
  for (std::size_t i = 1; i < rep.tail_sup.size(); ++i) {
    if (!(rep.tail_sup[i] < rep.tail_sup[i - 1]) && !(rep.tail_sup[i] == 0.0 && rep.tail_sup[i - 1] == 0.0)) {
      rep.tail_decreasing = false;
    }
  }

  const std::size_t tail_from = steps - std::max<std::size_t>(1, steps / 10) + 1;
  for (std::size_t k = 1; k <= steps; ++k) {
    const auto& r = tr.records[k];
    rep.max_step_ratio = std::max(rep.max_step_ratio, r.step_norm / r.gamma);
    rep.gamma_sq_sum += r.gamma * r.gamma;
    if (k <= std::max<std::size_t>(1, steps / 2)) rep.y_gap_head_max = std::max(rep.y_gap_head_max, r.y_gap);
    if (k >= tail_from) rep.y_gap_tail_max = std::max(rep.y_gap_tail_max, r.y_gap);
  }
  rep.y_gap_vanishing = rep.y_gap_tail_max <= rep.y_gap_head_max;
  rep.schedule_summable = !schedule.is_constant() && schedule.alpha() > 0.5 && schedule.alpha() <= 1.0;

  if (oracle.spec().kind == NoiseKind::Markov && tr.hidden.size() == tr.size()) {
    rep.drift = drift_check(tr.hidden, oracle.spec().rho, oracle.spec().sigma);
    double sxy = 0.0, sxx = 0.0, abs_prev = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
      const double prev = tr.hidden[k - 1];
      sxy += tr.noise[k].dot(u) * prev;
      sxx += prev * prev;
      abs_prev += std::abs(prev);
    }
    const double coeff = sxx > 0.0 ? sxy / sxx : 0.0;
    rep.noise_lag1_autocorr = coeff;
    rep.mean_bias_norm = std::abs(coeff) * abs_prev / static_cast<double>(steps);
  }
  return rep;
}

}  // namespace incluso
