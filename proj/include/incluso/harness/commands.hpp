#pragma once

// run / sweep / diagnose / selfcheck. Each returns a process exit code:
// 0 success, 1 check failure, 2 usage or validation error, 3 numeric failure.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "incluso/analysis.hpp"
#include "incluso/harness/config.hpp"
#include "incluso/harness/csv.hpp"
#include "incluso/harness/selfcheck.hpp"

namespace incluso::harness {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumeric = 3 };

/// Output directory: explicit flag, then INCLUSO_OUT, then the config's `out`, then ./incluso_out.
inline std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag, const ExperimentConfig& c) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("INCLUSO_OUT"); env != nullptr && *env != '\0') return env;
  if (!c.out.empty()) return resolve(c.base_dir, c.out);
  return "incluso_out";
}

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const AssumptionReport& r) {
  json j;
  j["tail_starts"] = r.tail_starts;
  json sup = json::array();
  for (double v : r.tail_sup) sup.push_back(number_or_null(v));
  j["tail_sup"] = sup;
  j["tail_exact"] = r.tail_exact;
  j["tail_decreasing"] = r.tail_decreasing;
  j["max_step_ratio"] = number_or_null(r.max_step_ratio);
  j["y_gap_head_max"] = number_or_null(r.y_gap_head_max);
  j["y_gap_tail_max"] = number_or_null(r.y_gap_tail_max);
  j["y_gap_vanishing"] = r.y_gap_vanishing;
  j["gamma_sq_sum"] = number_or_null(r.gamma_sq_sum);
  j["schedule_summable"] = r.schedule_summable;
  if (r.drift) {
    j["drift"] = {{"slope", number_or_null(r.drift->slope)},
                  {"intercept", number_or_null(r.drift->intercept)},
                  {"theory_slope", r.drift->theory_slope},
                  {"theory_intercept", r.drift->theory_intercept},
                  {"max_excess_z", number_or_null(r.drift->max_excess_z)},
                  {"passed", r.drift->passed}};
  }
  if (r.noise_lag1_autocorr) j["noise_lag1_autocorr"] = number_or_null(*r.noise_lag1_autocorr);
  if (r.mean_bias_norm) j["mean_bias_norm"] = number_or_null(*r.mean_bias_norm);
  return j;
}

/// Statistics shared by the run summary and the diagnose report.
struct Statistics {
  json summary;                  // scalar statistics and assumption checks
  std::optional<DIResidualReport> di;
};

inline Statistics compute_statistics(const ExperimentConfig& c, const Experiment& ex, const Trace& tr) {
  Statistics st;
  json& j = st.summary;
  const auto conv = convergence_report(tr, c.analysis.tail_fraction, c.analysis.tol);
  j["final_u"] = number_or_null(conv.final_u);
  j["final_min_norm"] = number_or_null(tr.records.back().min_norm);
  j["tail_u"] = number_or_null(conv.tail_mean_norm);
  j["tail_min_norm"] = number_or_null(conv.tail_min_norm);
  j["tail_count"] = conv.tail_count;
  j["tol"] = c.analysis.tol;
  j["converged"] = conv.converged;
  j["v_first"] = number_or_null(tr.records.front().V);
  j["v_last"] = number_or_null(tr.records.back().V);
  j["v_tail_width"] = number_or_null(conv.v_tail_width);
  j["max_vi_residual"] =
      ex.algorithm == Algorithm::ProxSgdA && tr.steps() > 0 ? number_or_null(max_vi_residual(tr, ex.problem)) : json(nullptr);
  const NoiseOracle oracle(ex.noise, ex.problem.body.dim(), c.seed);
  j["assumption_checks"] = tr.steps() > 0 ? to_json(check_assumptions(tr, oracle, ex.schedule)) : json(nullptr);

  const auto path = interpolate(tr);
  if (path.duration() >= c.analysis.window) {
    st.di = di_residual(path, ex.problem.f, ex.problem.g, ex.problem.body, c.analysis.window, c.analysis.stride);
    j["di_residual"] = {{"window", st.di->window},
                        {"stride", st.di->stride},
                        {"windows", st.di->residuals.size()},
                        {"mean", number_or_null(st.di->mean)},
                        {"max", number_or_null(st.di->max)}};
  } else {
    j["di_residual"] = nullptr;
  }
  return st;
}

/// Rebuilds the full trace from its CSV: iterates and stored diagnostics are
/// read back, and the perturbations δ_k (which do not depend on the iterates)
/// are regenerated from the config and seed.
inline Trace reconstruct_trace(const ExperimentConfig& c, const Experiment& ex, const TraceTable& table) {
  const Index d = ex.problem.body.dim();
  if (table.dim != d) throw UsageError("diagnose: trace dimension does not match the config");
  Trace tr;
  tr.algorithm = ex.algorithm;
  tr.iterates = table.x;
  tr.records = table.records;
  NoiseOracle oracle(ex.noise, d, c.seed);
  const bool markov = ex.noise.kind == NoiseKind::Markov;
  std::mt19937_64 select_rng(ex.options.selection_seed);
  std::bernoulli_distribution coin(0.5);
  tr.noise.push_back(Vector::Zero(d));
  tr.oracle_calls.push_back(Vector::Zero(d));
  if (markov) tr.hidden.push_back(oracle.hidden_state());
  for (std::size_t k = 1; k < table.size(); ++k) {
    const Vector& x = tr.iterates[k - 1];
    const Vector grad = ex.problem.f.gradient(x);
    Vector delta = oracle.next(x, grad, k);
    const double gamma = tr.records[k].gamma;
    Vector call;
    switch (ex.algorithm) {
      case Algorithm::ProxSgdA: call = grad + delta; break;
      case Algorithm::ProxSgdB: {
        call = grad + delta;
        const Vector y = prox(ex.problem.g, gamma, x - gamma * call).point;
        tr.records[k].y_gap = (tr.iterates[k] - y).norm();
        break;
      }
      case Algorithm::Subgradient: {
        Vector v = grad;
        for (Index i = 0; i < d; ++i) {
          const Interval ci = ex.problem.g.clarke1(x[i]);
          v[i] += ex.options.selection == Selection::Midpoint ? ci.mid() : (coin(select_rng) ? ci.hi : ci.lo);
        }
        call = v + delta;
        tr.records[k].y_gap = (tr.iterates[k] - x).norm();
        break;
      }
    }
    tr.noise.push_back(std::move(delta));
    tr.oracle_calls.push_back(std::move(call));
    if (markov) tr.hidden.push_back(oracle.hidden_state());
  }
  return tr;
}

struct RunOutcome {
  int code = kOk;
  json summary;
  std::string error;
};

/// One run: writes trace.csv and summary.json under `dir`.
inline RunOutcome execute_run(const ExperimentConfig& c, const std::filesystem::path& dir) {
  RunOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  Experiment ex = build_experiment(c);
  json& s = out.summary;
  s["config_hash"] = config_hash(c);
  s["seed"] = c.seed;
  s["algorithm"] = c.algorithm;
  s["iters"] = c.iters;
  NoiseOracle oracle(ex.noise, ex.problem.body.dim(), c.seed);
  try {
    const Trace tr = run(ex.algorithm, ex.problem, ex.schedule, oracle, ex.x0, c.iters, ex.options);
    write_atomic(dir / "trace.csv", trace_to_csv(tr));
    s["status"] = "ok";
    s.update(compute_statistics(c, ex, tr).summary);
  } catch (const RunAborted& e) {
    write_atomic(dir / "trace.csv.partial", trace_to_csv(e.partial()));
    s["status"] = "numeric_failure";
    s["failed_iteration"] = e.iteration();
    s["error"] = e.what();
    s["converged"] = false;
    out.code = kNumeric;
    out.error = "numeric failure at iteration " + std::to_string(e.iteration()) + ": " + e.what();
  }
  s["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_atomic(dir / "summary.json", s.dump(2) + "\n");
  return out;
}

inline int cmd_run(const ExperimentConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  const RunOutcome r = execute_run(c, dir);
  if (r.code != kOk) {
    log << "error: " << r.error << " (partial trace saved to " << (dir / "trace.csv.partial").string() << ")\n";
    return r.code;
  }
  log << "wrote " << (dir / "trace.csv").string() << " and " << (dir / "summary.json").string() << "\n";
  log << "final sqrt(-U) = " << std::sqrt(-r.summary["final_u"].get<double>())
      << ", tail mean = " << r.summary["tail_u"].get<double>() << "\n";
  return kOk;
}

/// Accepts "a,b,c" with optional inclusive ranges "lo-hi".
inline std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string tok = text.substr(start, comma - start);
    start = comma + 1;
    if (tok.empty()) {
      if (comma == text.size()) break;
      throw UsageError("--seeds: empty entry");
    }
    auto parse = [&](const std::string& s) {
      std::uint64_t v = 0;
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("--seeds: bad seed '" + tok + "'");
      return v;
    };
    const auto dash = tok.find('-');
    if (dash == std::string::npos) {
      seeds.push_back(parse(tok));
    } else {
      const auto lo = parse(tok.substr(0, dash)), hi = parse(tok.substr(dash + 1));
      if (hi < lo) throw UsageError("--seeds: descending range '" + tok + "'");
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    }
  }
  if (seeds.empty()) throw UsageError("--seeds: at least one seed is required");
  return seeds;
}

inline json sweep(const ExperimentConfig& base, const std::vector<std::uint64_t>& seeds, const std::filesystem::path& dir,
                  unsigned jobs = 0) {
  if (seeds.empty()) throw UsageError("sweep: at least one seed is required");
  validate(base);
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(seeds.size()));

  std::vector<json> per_seed(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      ExperimentConfig c = base;
      c.seed = seeds[i];
      json entry{{"seed", seeds[i]}};
      try {
        const RunOutcome r = execute_run(c, dir / ("seed_" + std::to_string(seeds[i])));
        entry["status"] = r.summary["status"];
        entry["converged"] = r.summary["converged"];
        if (r.summary.contains("tail_u")) entry["tail_u"] = r.summary["tail_u"];
        if (r.summary.contains("final_u")) entry["final_u"] = r.summary["final_u"];
        if (!r.error.empty()) entry["error"] = r.error;
      } catch (const std::exception& e) {
        entry["status"] = "error";
        entry["converged"] = false;
        entry["error"] = e.what();
      }
      per_seed[i] = std::move(entry);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::size_t ok = 0, converged = 0;
  for (const auto& e : per_seed) {
    if (e["status"] == "ok") ++ok;
    if (e["converged"] == true) ++converged;
  }
  json agg;
  agg["config_hash"] = config_hash(base);
  agg["tol"] = base.analysis.tol;
  agg["n_seeds"] = seeds.size();
  agg["n_succeeded"] = ok;
  agg["n_failed"] = seeds.size() - ok;
  agg["n_converged"] = converged;
  agg["converged"] = std::to_string(converged) + "/" + std::to_string(seeds.size());
  agg["converged_fraction"] = static_cast<double>(converged) / static_cast<double>(seeds.size());
  agg["per_seed"] = per_seed;
  write_atomic(dir / "aggregate.json", agg.dump(2) + "\n");
  return agg;
}

inline int cmd_sweep(const ExperimentConfig& c, const std::vector<std::uint64_t>& seeds,
                     const std::filesystem::path& dir, unsigned jobs, std::ostream& log) {
  const json agg = sweep(c, seeds, dir, jobs);
  log << "converged " << agg["converged"].get<std::string>() << " (failed runs: " << agg["n_failed"].get<std::size_t>()
      << "); wrote " << (dir / "aggregate.json").string() << "\n";
  return kOk;
}

/// Report for a stored trace; the statistics match the run summary.
inline json diagnose(const ExperimentConfig& c, const TraceTable& table) {
  const Experiment ex = build_experiment(c);
  const Trace tr = reconstruct_trace(c, ex, table);
  Statistics st = compute_statistics(c, ex, tr);
  json j = st.summary;
  j["config_hash"] = config_hash(c);
  j["seed"] = c.seed;
  j["algorithm"] = c.algorithm;
  j["iters"] = tr.steps();
  if (st.di) {
    json windows = json::array();
    for (std::size_t i = 0; i < st.di->residuals.size(); ++i) {
      windows.push_back({{"start", st.di->starts[i]}, {"residual", number_or_null(st.di->residuals[i])}});
    }
    j["di_residual"]["per_window"] = windows;
  }
  return j;
}

inline int cmd_diagnose(const ExperimentConfig& c, const std::filesystem::path& trace_path,
                        const std::optional<std::filesystem::path>& out_file, std::ostream& out) {
  const json report = diagnose(c, read_trace_csv(trace_path));
  const std::string text = report.dump(2) + "\n";
  if (out_file) {
    write_atomic(*out_file, text);
  } else {
    out << text;
  }
  return kOk;
}

inline int cmd_selfcheck(std::ostream& out, std::uint64_t seed_offset = 0) {
  bool all = true;
  for (const auto& r : run_selfcheck(seed_offset)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.failures << " failures; "
        << r.detail << " [" << r.seconds << " s]\n";
    all = all && r.passed;
  }
  out << (all ? "selfcheck passed\n" : "selfcheck FAILED\n");
  return all ? kOk : kCheckFailed;
}

}  // namespace incluso::harness
