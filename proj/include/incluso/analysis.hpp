#pragma once

// Continuous-time diagnostics over a finished trace: the piecewise-linear
// interpolation X_0 on the time grid t_k, its shifts, windowed residuals of the
// projected differential inclusion, the Lyapunov series and tail statistics.

#include <algorithm>
#include <cmath>
#include <vector>

#include "incluso/engine.hpp"
#include "incluso/field.hpp"

namespace incluso {

/// X_0(t): x_0 for t ≤ 0, linear on [t_{k−1}, t_k], x_N for t ≥ t_N.
class InterpolatedPath {
 public:
  InterpolatedPath(std::vector<double> knots, std::vector<Vector> values)
      : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.empty() || knots_.size() != values_.size()) throw UsageError("interpolate: knots/values mismatch");
    for (std::size_t k = 1; k < knots_.size(); ++k) {
      if (!(knots_[k] > knots_[k - 1])) throw UsageError("interpolate: knots must be strictly increasing");
    }
  }

  Vector operator()(double t) const {
    if (t <= knots_.front()) return values_.front();
    if (t >= knots_.back()) return values_.back();
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - knots_.begin());
    const double t0 = knots_[k - 1];
    const double t1 = knots_[k];
    const double h = t1 - t0;
    return values_[k] * ((t - t0) / h) + values_[k - 1] * ((t1 - t) / h);
  }

  double start() const { return knots_.front(); }
  double end() const { return knots_.back(); }
  double duration() const { return knots_.back() - knots_.front(); }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<Vector>& values() const { return values_; }

 private:
  std::vector<double> knots_;
  std::vector<Vector> values_;
};

inline InterpolatedPath interpolate(const Trace& tr) {
  if (tr.size() == 0) throw UsageError("interpolate: empty trace");
  std::vector<double> knots;
  knots.reserve(tr.size());
  for (const auto& r : tr.records) knots.push_back(r.t);
  return InterpolatedPath(std::move(knots), tr.iterates);
}

/// Non-owning view t ↦ base(t + s). The base path must outlive the view.
template <class Path>
class ShiftedPath {
 public:
  ShiftedPath(const Path& base, double s) : base_(&base), s_(s) {
    if (!(s >= 0.0)) throw UsageError("shift: s must be nonnegative");
  }

  Vector operator()(double t) const { return (*base_)(t + s_); }
  double start() const { return 0.0; }
  double end() const { return base_->end() - s_; }
  double duration() const { return end(); }
  double offset() const { return s_; }

 private:
  const Path* base_;
  double s_;
};

template <class Path>
ShiftedPath<Path> shift(const Path& path, double s) {
  return ShiftedPath<Path>(path, s);
}

struct DIResidualReport {
  double window = 0.0;
  double stride = 0.0;
  std::vector<double> starts;
  std::vector<double> residuals;
  double mean = 0.0;
  double max = 0.0;
};

/// Distance of each secant slope (X(s+Δ) − X(s))/Δ to F(X(s)) − N_K(X(s)).
template <class Path>
DIResidualReport di_residual(const Path& path, const SmoothObjective& f, const Penalty& g, const ConvexBody& body,
                             double window, double stride) {
  if (!(window > 0.0)) throw UsageError("di_residual: window must be positive");
  if (!(stride > 0.0)) throw UsageError("di_residual: stride must be positive");
  if (window > path.duration()) throw UsageError("di_residual: window longer than path");
  DIResidualReport rep;
  rep.window = window;
  rep.stride = stride;
  const double t_end = path.end();
  for (std::size_t i = 0;; ++i) {
    const double s = path.start() + static_cast<double>(i) * stride;
    if (s + window > t_end) break;
    const Vector xs = path(s);
    const Vector slope = (path(s + window) - xs) / window;
    // Interpolated points stay in K up to rounding.
    const Vector xk = project(body, xs);
    const FieldValue fv = evaluate_field(f, g, xk);
    const NormalCone cone = normal_cone(body, xk);
    const double r = min_norm_minus_cone(fv.box, fv.offset - slope, cone);
    rep.starts.push_back(s);
    rep.residuals.push_back(r);
  }
  double sum = 0.0;
  for (double r : rep.residuals) {
    sum += r;
    rep.max = std::max(rep.max, r);
  }
  rep.mean = rep.residuals.empty() ? 0.0 : sum / static_cast<double>(rep.residuals.size());
  return rep;
}

inline std::vector<double> lyapunov_series(const Trace& tr, const SmoothObjective& f, const Penalty& g) {
  std::vector<double> v;
  v.reserve(tr.size());
  for (const auto& x : tr.iterates) v.push_back(f.value(x) + penalty_value(g, x));
  return v;
}

struct ConvergenceSummary {
  std::size_t tail_count = 0;
  double final_u = 0.0;
  double tail_mean_norm = 0.0;  // mean of √−u over the tail
  double tail_min_norm = 0.0;
  double v_tail_width = 0.0;    // max − min of V over the tail
  bool converged = false;
};

/// Tail statistics over the last ⌈tail_fraction·(N+1)⌉ iterates.
inline ConvergenceSummary convergence_report(const std::vector<double>& u_values, const std::vector<double>& v_values,
                                             double tail_fraction, double tol) {
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) throw UsageError("convergence_report: tail_fraction in (0,1)");
  if (u_values.empty() || u_values.size() != v_values.size()) throw UsageError("convergence_report: bad series");
  ConvergenceSummary s;
  const std::size_t n = u_values.size();
  s.tail_count = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n))), 1, n);
  s.final_u = u_values.back();
  double sum = 0.0;
  s.tail_min_norm = kInf;
  double vmin = kInf, vmax = -kInf;
  for (std::size_t k = n - s.tail_count; k < n; ++k) {
    const double m = std::sqrt(-u_values[k]);
    sum += m;
    s.tail_min_norm = std::min(s.tail_min_norm, m);
    vmin = std::min(vmin, v_values[k]);
    vmax = std::max(vmax, v_values[k]);
  }
  s.tail_mean_norm = sum / static_cast<double>(s.tail_count);
  s.v_tail_width = vmax - vmin;
  s.converged = s.tail_mean_norm <= tol;
  return s;
}

inline ConvergenceSummary convergence_report(const Trace& tr, double tail_fraction, double tol) {
  std::vector<double> u, v;
  u.reserve(tr.size());
  v.reserve(tr.size());
  for (const auto& r : tr.records) {
    u.push_back(r.u_value);
    v.push_back(r.V);
  }
  return convergence_report(u, v, tail_fraction, tol);
}

}  // namespace incluso
