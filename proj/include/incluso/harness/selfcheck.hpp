#pragma once

// Oracle suites run by `incluso selfcheck` and by the acceptance binary.

#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "incluso/harness/oracles.hpp"

namespace incluso::harness {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;  // largest observed error, in the suite's own units
  double seconds = 0.0;
  std::string detail;
};

struct ProxInstance {
  Penalty penalty = Penalty::zero();
  double gamma = 0.0;
  double z = 0.0;
};

/// λ ∈ [0.1, 2]; κ ∈ [1.5, 5]; a ∈ [2.5, 5]; γ ∈ [0.05, min(2, 0.8·γ_max)]; z ∈ [−4, 4].
inline ProxInstance random_prox_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lambda = 0.1 + 1.9 * unit(rng);
  ProxInstance in;
  switch (kind(rng)) {
    case 0: in.penalty = Penalty::l1(lambda); break;
    case 1: in.penalty = Penalty::mcp(lambda, 1.5 + 3.5 * unit(rng)); break;
    default: in.penalty = Penalty::scad(lambda, 2.5 + 2.5 * unit(rng)); break;
  }
  const double gmax = std::min(2.0, 0.8 * in.penalty.max_gamma());
  in.gamma = 0.05 + (gmax - 0.05) * unit(rng);
  in.z = -4.0 + 8.0 * unit(rng);
  return in;
}

namespace detail {

inline double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

/// Closed-form prox vs the grid argmin on [−5, 5] with step 1e-4.
inline SuiteResult prox_oracle_suite(std::size_t n = 500, std::uint64_t seed = 31337) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = "prox_oracle";
  r.cases = n;
  std::mt19937_64 rng(seed);
  double worst_arg = 0.0, worst_val = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto in = random_prox_instance(rng);
    const double y = in.penalty.prox1(in.gamma, in.z);
    const auto grid = oracle::prox_grid_full(in.penalty, in.gamma, in.z, -5.0, 5.0, 1e-4);
    const double arg_err = std::abs(y - grid.argmin);
    const double val_gap = grid.value - in.penalty.prox_objective1(in.gamma, in.z, y);
    const double val_tol = 1e-7 * (1.0 + 1.0 / in.gamma);
    worst_arg = std::max(worst_arg, arg_err);
    worst_val = std::max(worst_val, std::abs(val_gap) / val_tol);
    // The closed form may beat the grid; it may not lose by more than the tolerance.
    if (arg_err > 2e-4 || val_gap < -1e-12 || val_gap > val_tol) ++r.failures;
  }
  r.passed = r.failures == 0;
  r.worst = worst_arg;
  std::ostringstream ss;
  ss << "max |arg err| " << worst_arg << " (tol 2e-4), max value gap/tol " << worst_val;
  r.detail = ss.str();
  r.seconds = detail::elapsed(t0);
  return r;
}

/// MCP prox against S(z, γλ)/(1 − γ/κ) on |z| < λκ and the identity elsewhere.
inline SuiteResult mcp_formula_suite(std::size_t n = 10000, std::uint64_t seed = 2718) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = "mcp_formula";
  r.cases = n;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double lambda = 0.1 + 1.9 * unit(rng);
    const double kappa = 1.1 + 4.9 * unit(rng);
    const double gamma = kappa * (0.01 + 0.98 * unit(rng));
    const double z = (unit(rng) - 0.5) * 4.0 * lambda * kappa;
    const Penalty p = Penalty::mcp(lambda, kappa);
    const double got = p.prox1(gamma, z);
    double want = z;
    if (std::abs(z) < lambda * kappa) {
      const double shrunk = std::copysign(std::max(std::abs(z) - gamma * lambda, 0.0), z);
      want = shrunk / (1.0 - gamma / kappa);
    }
    const double err = std::abs(got - want);
    r.worst = std::max(r.worst, err);
    if (err > 1e-12) ++r.failures;
  }
  r.passed = r.failures == 0;
  std::ostringstream ss;
  ss << "max |err| " << r.worst << " (tol 1e-12)";
  r.detail = ss.str();
  r.seconds = detail::elapsed(t0);
  return r;
}

/// prox_with_indicator vs the grid argmin restricted to the box.
inline SuiteResult constrained_prox_suite(std::size_t n = 300, std::uint64_t seed = 99) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = "constrained_prox_oracle";
  r.cases = n;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto in = random_prox_instance(rng);
    const double lo = -3.0 * unit(rng) - 0.01, hi = 3.0 * unit(rng) + 0.01;
    const ConvexBody box = ConvexBody::box(Vector::Constant(1, lo), Vector::Constant(1, hi));
    const double y = prox_with_indicator(in.penalty, box, in.gamma, Vector::Constant(1, in.z)).point[0];
    const auto grid = oracle::prox_grid_full(in.penalty, in.gamma, in.z, lo, hi, 1e-4);
    const double val_gap = grid.value - in.penalty.prox_objective1(in.gamma, in.z, y);
    r.worst = std::max(r.worst, std::abs(y - grid.argmin));
    if (std::abs(y - grid.argmin) > 2e-4 || val_gap < -1e-12 || val_gap > 1e-7 * (1.0 + 1.0 / in.gamma)) ++r.failures;
  }
  r.passed = r.failures == 0;
  std::ostringstream ss;
  ss << "max |arg err| " << r.worst << " (tol 2e-4)";
  r.detail = ss.str();
  r.seconds = detail::elapsed(t0);
  return r;
}

/// Exact U against the sampled upper bound on random box instances with d ≤ 3.
inline SuiteResult u_oracle_suite(std::size_t n = 100, std::uint64_t seed = 123) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = "u_oracle";
  r.cases = n;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 3), kind(0, 2), pen(0, 2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_violation = 0.0;
  for (std::size_t rep = 0; rep < n; ++rep) {
    const Index d = dim(rng);
    Vector target(d), x(d);
    for (Index i = 0; i < d; ++i) target[i] = 2.0 * u(rng);
    const ConvexBody body = ConvexBody::cube(d, 1.0);
    for (Index i = 0; i < d; ++i) {
      const int c = kind(rng);
      x[i] = c == 0 ? 0.0 : (c == 1 ? (u(rng) > 0 ? 1.0 : -1.0) : u(rng));
    }
    const int pk = pen(rng);
    const Penalty g = pk == 0 ? Penalty::l1(0.5) : (pk == 1 ? Penalty::mcp(0.5, 2.0) : Penalty::scad(0.5, 3.7));
    const auto f = SmoothObjective::squared_distance(target);
    const auto exact = stationarity(f, g, body, x);
    const double sampled = oracle::u_sampling(f, g, body, x, 100000, 5.0, rep);
    const double violation = -exact.u_value - sampled;
    worst_violation = std::max(worst_violation, violation);
    if (exact.u_value > 0.0 || violation > 1e-9) ++r.failures;
  }
  r.passed = r.failures == 0;
  r.worst = worst_violation;
  std::ostringstream ss;
  ss << "max (exact −U − sampled) " << worst_violation << " (must be ≤ 1e-9)";
  r.detail = ss.str();
  r.seconds = detail::elapsed(t0);
  return r;
}

inline std::vector<SuiteResult> run_selfcheck(std::uint64_t seed_offset = 0) {
  return {prox_oracle_suite(500, 31337 + seed_offset), mcp_formula_suite(10000, 2718 + seed_offset),
          constrained_prox_suite(300, 99 + seed_offset), u_oracle_suite(100, 123 + seed_offset)};
}

}  // namespace incluso::harness
