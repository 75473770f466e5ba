#pragma once

// Experiment configuration: schema, validation, JSON round trip, content hash,
// and construction of the problem, schedule and noise oracle it describes.
//
// Schema (TOML or JSON):
//   algorithm      "proxsgd_a" | "proxsgd_b" | "subgradient"
//   iters, seed    integers
//   x0             optional array; defaults to the center of the constraint
//   out            optional output directory
//   selection      "midpoint" | "random_vertex" (subgradient only), selection_seed
//   [objective]    type = "least_squares" with data = "file.csv" or generator = {...}
//                  type = "logistic" with data = "file.csv" (last column ±1)
//                  type = "quadratic" with Q = [[...]], c = [...]
//                  type = "squared_distance" with target = [...]
//   [penalty]      type = "zero" | "l1" | "mcp" | "scad", lambda, kappa (mcp), a (scad)
//   [constraint]   type = "box", lo, hi (arrays or scalars) | type = "ball", center, radius
//   [schedule]     c, alpha | constant
//   [noise]        type = "none" | "rademacher" | "uniform_ball" | "markov" | "decaying",
//                  sigma, rho, r0, beta, direction
//   [analysis]     tail_fraction, tol, window, stride
//   [test_hook]    nan_seed, nan_iter

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "incluso/engine.hpp"
#include "incluso/harness/toml_lite.hpp"

namespace incluso::harness {

using json = nlohmann::json;

/// Planted sparse least squares: A = U·diag(s)·Vᵀ with singular values spaced
/// evenly in [sigma_min, sigma_max], b = A·x_true + noise·ξ.
struct GeneratorSpec {
  std::int64_t n = 50;
  std::int64_t d = 10;
  double sigma_min = 0.4;
  double sigma_max = 1.2;
  std::int64_t sparsity = 3;
  double magnitude = 1.0;
  double noise = 0.1;
  std::uint64_t seed = 0;
};

struct ObjectiveSpec {
  std::string type = "least_squares";
  std::string data;
  std::optional<GeneratorSpec> generator;
  std::vector<std::vector<double>> Q;
  std::vector<double> c;
  std::vector<double> target;
};

struct PenaltySpec {
  std::string type = "zero";
  double lambda = 0.0;
  double kappa = 3.0;
  double a = 3.7;
};

struct ConstraintSpec {
  std::string type = "box";
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> center;
  double radius = 1.0;
};

struct ScheduleSpec {
  double c = 0.5;
  double alpha = 0.7;
  std::optional<double> constant;
};

struct NoiseConfig {
  std::string type = "none";
  double sigma = 0.0;
  double rho = 0.0;
  double r0 = 0.0;
  double beta = 1.0;
  std::vector<double> direction;
};

struct AnalysisSpec {
  double tail_fraction = 0.1;
  double tol = 1e-2;
  double window = 0.5;
  double stride = 0.1;
};

struct TestHook {
  std::optional<std::uint64_t> nan_seed;
  std::size_t nan_iter = 1;
};

struct ExperimentConfig {
  std::string algorithm = "proxsgd_a";
  std::size_t iters = 1000;
  std::uint64_t seed = 0;
  std::vector<double> x0;
  std::string out;
  std::string selection = "midpoint";
  std::uint64_t selection_seed = 0;
  ObjectiveSpec objective;
  PenaltySpec penalty;
  ConstraintSpec constraint;
  ScheduleSpec schedule;
  NoiseConfig noise;
  AnalysisSpec analysis;
  TestHook test_hook;
  /// Directory relative data paths resolve against; not serialized.
  std::filesystem::path base_dir;
};

// ---------------------------------------------------------------------------
// JSON (de)serialization

namespace detail {

inline std::string join_path(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

/// Typed field access that reports the dotted path on failure.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw UsageError(where() + ": expected a table");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  std::string where(const std::string& key = "") const { return key.empty() ? (path_.empty() ? "config" : path_) : join_path(path_, key); }

  const json& at(const std::string& key) const {
    seen_.insert(key);
    return node_.at(key);
  }

  template <class T>
  void get(const std::string& key, T& out) const {
    if (!has(key)) return;
    const json& v = at(key);
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw UsageError("");
        out = v.get<double>();
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw UsageError("");
        out = v.get<std::string>();
      } else if constexpr (std::is_same_v<T, std::vector<double>>) {
        if (!v.is_array()) throw UsageError("");
        out.clear();
        for (const auto& e : v) {
          if (!e.is_number()) throw UsageError("");
          out.push_back(e.get<double>());
        }
      } else {
        static_assert(std::is_integral_v<T>);
        if (!v.is_number_integer() || (std::is_unsigned_v<T> && v.get<std::int64_t>() < 0)) throw UsageError("");
        out = v.get<T>();
      }
    } catch (const std::exception&) {
      throw UsageError(where(key) + ": wrong type");
    }
  }

  /// Scalar or array; scalars broadcast later once the dimension is known.
  void get_vector_or_scalar(const std::string& key, std::vector<double>& out) const {
    if (!has(key)) return;
    if (at(key).is_number()) {
      out = {at(key).get<double>()};
      broadcast_.insert(key);
      return;
    }
    get(key, out);
  }

  bool broadcast(const std::string& key) const { return broadcast_.count(key) > 0; }

  void reject_unknown() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) throw UsageError(where(it.key()) + ": unknown key");
    }
  }

  void mark(const std::string& key) const { seen_.insert(key); }

 private:
  const json& node_;
  std::string path_;
  mutable std::set<std::string> seen_;
  mutable std::set<std::string> broadcast_;
};

}  // namespace detail

inline json to_json(const ExperimentConfig& c) {
  json j;
  j["algorithm"] = c.algorithm;
  j["iters"] = c.iters;
  j["seed"] = c.seed;
  if (!c.x0.empty()) j["x0"] = c.x0;
  if (!c.out.empty()) j["out"] = c.out;
  j["selection"] = c.selection;
  j["selection_seed"] = c.selection_seed;

  json o;
  o["type"] = c.objective.type;
  if (!c.objective.data.empty()) o["data"] = c.objective.data;
  if (c.objective.generator) {
    const auto& g = *c.objective.generator;
    o["generator"] = {{"n", g.n},           {"d", g.d},           {"sigma_min", g.sigma_min},
                      {"sigma_max", g.sigma_max}, {"sparsity", g.sparsity}, {"magnitude", g.magnitude},
                      {"noise", g.noise},   {"seed", g.seed}};
  }
  if (!c.objective.Q.empty()) o["Q"] = c.objective.Q;
  if (!c.objective.c.empty()) o["c"] = c.objective.c;
  if (!c.objective.target.empty()) o["target"] = c.objective.target;
  j["objective"] = o;

  json p{{"type", c.penalty.type}};
  if (c.penalty.type != "zero") p["lambda"] = c.penalty.lambda;
  if (c.penalty.type == "mcp") p["kappa"] = c.penalty.kappa;
  if (c.penalty.type == "scad") p["a"] = c.penalty.a;
  j["penalty"] = p;

  json k{{"type", c.constraint.type}};
  if (c.constraint.type == "box") {
    k["lo"] = c.constraint.lo;
    k["hi"] = c.constraint.hi;
  } else {
    k["center"] = c.constraint.center;
    k["radius"] = c.constraint.radius;
  }
  j["constraint"] = k;

  if (c.schedule.constant) {
    j["schedule"] = {{"constant", *c.schedule.constant}};
  } else {
    j["schedule"] = {{"c", c.schedule.c}, {"alpha", c.schedule.alpha}};
  }

  json n{{"type", c.noise.type}};
  if (c.noise.type == "rademacher" || c.noise.type == "uniform_ball" || c.noise.type == "markov") {
    n["sigma"] = c.noise.sigma;
  }
  if (c.noise.type == "markov") n["rho"] = c.noise.rho;
  if (c.noise.type == "decaying") {
    n["r0"] = c.noise.r0;
    n["beta"] = c.noise.beta;
  }
  if (!c.noise.direction.empty()) n["direction"] = c.noise.direction;
  j["noise"] = n;

  j["analysis"] = {{"tail_fraction", c.analysis.tail_fraction},
                   {"tol", c.analysis.tol},
                   {"window", c.analysis.window},
                   {"stride", c.analysis.stride}};
  if (c.test_hook.nan_seed) {
    j["test_hook"] = {{"nan_seed", *c.test_hook.nan_seed}, {"nan_iter", c.test_hook.nan_iter}};
  }
  return j;
}

inline std::size_t objective_dim(const ObjectiveSpec& o, const std::filesystem::path& base_dir);

inline ExperimentConfig from_json(const json& j, const std::filesystem::path& base_dir = {}) {
  using detail::Reader;
  ExperimentConfig c;
  c.base_dir = base_dir;
  const Reader top(j, "");
  top.get("algorithm", c.algorithm);
  top.get("iters", c.iters);
  top.get("seed", c.seed);
  top.get("x0", c.x0);
  top.get("out", c.out);
  top.get("selection", c.selection);
  top.get("selection_seed", c.selection_seed);

  if (!top.has("objective")) throw UsageError("objective: missing");
  {
    const Reader r(top.at("objective"), "objective");
    r.get("type", c.objective.type);
    r.get("data", c.objective.data);
    if (r.has("generator")) {
      const Reader g(r.at("generator"), "objective.generator");
      GeneratorSpec gs;
      g.get("n", gs.n);
      g.get("d", gs.d);
      g.get("sigma_min", gs.sigma_min);
      g.get("sigma_max", gs.sigma_max);
      g.get("sparsity", gs.sparsity);
      g.get("magnitude", gs.magnitude);
      g.get("noise", gs.noise);
      g.get("seed", gs.seed);
      g.reject_unknown();
      c.objective.generator = gs;
    }
    if (r.has("Q")) {
      const json& q = r.at("Q");
      if (!q.is_array()) throw UsageError("objective.Q: wrong type");
      for (const auto& row : q) {
        std::vector<double> v;
        if (!row.is_array()) throw UsageError("objective.Q: wrong type");
        for (const auto& e : row) {
          if (!e.is_number()) throw UsageError("objective.Q: wrong type");
          v.push_back(e.get<double>());
        }
        c.objective.Q.push_back(std::move(v));
      }
    }
    r.get("c", c.objective.c);
    r.get("target", c.objective.target);
    r.reject_unknown();
  }

  if (top.has("penalty")) {
    const Reader r(top.at("penalty"), "penalty");
    r.get("type", c.penalty.type);
    r.get("lambda", c.penalty.lambda);
    r.get("kappa", c.penalty.kappa);
    r.get("a", c.penalty.a);
    r.reject_unknown();
  }

  if (!top.has("constraint")) throw UsageError("constraint: missing");
  std::optional<std::size_t> dim;
  {
    const Reader r(top.at("constraint"), "constraint");
    r.get("type", c.constraint.type);
    r.get_vector_or_scalar("lo", c.constraint.lo);
    r.get_vector_or_scalar("hi", c.constraint.hi);
    r.get("center", c.constraint.center);
    r.get("radius", c.constraint.radius);
    r.reject_unknown();
    if (r.broadcast("lo") || r.broadcast("hi")) {
      dim = objective_dim(c.objective, base_dir);
      if (r.broadcast("lo")) c.constraint.lo.assign(*dim, c.constraint.lo.front());
      if (r.broadcast("hi")) c.constraint.hi.assign(*dim, c.constraint.hi.front());
    }
  }

  if (top.has("schedule")) {
    const Reader r(top.at("schedule"), "schedule");
    r.get("c", c.schedule.c);
    r.get("alpha", c.schedule.alpha);
    if (r.has("constant")) {
      double v = 0.0;
      r.get("constant", v);
      c.schedule.constant = v;
    }
    r.reject_unknown();
  }

  if (top.has("noise")) {
    const Reader r(top.at("noise"), "noise");
    r.get("type", c.noise.type);
    r.get("sigma", c.noise.sigma);
    r.get("rho", c.noise.rho);
    r.get("r0", c.noise.r0);
    r.get("beta", c.noise.beta);
    r.get("direction", c.noise.direction);
    r.reject_unknown();
  }

  if (top.has("analysis")) {
    const Reader r(top.at("analysis"), "analysis");
    r.get("tail_fraction", c.analysis.tail_fraction);
    r.get("tol", c.analysis.tol);
    r.get("window", c.analysis.window);
    r.get("stride", c.analysis.stride);
    r.reject_unknown();
  }

  if (top.has("test_hook")) {
    const Reader r(top.at("test_hook"), "test_hook");
    if (r.has("nan_seed")) {
      std::uint64_t s = 0;
      r.get("nan_seed", s);
      c.test_hook.nan_seed = s;
    }
    r.get("nan_iter", c.test_hook.nan_iter);
    r.reject_unknown();
  }
  for (const char* k : {"objective", "penalty", "constraint", "schedule", "noise", "analysis", "test_hook"}) top.mark(k);
  top.reject_unknown();
  return c;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses a .json file as JSON and anything else as TOML.
inline ExperimentConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json j;
  if (path.extension() == ".json") {
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("config: ") + e.what());
    }
  } else {
    j = toml::parse(text);
  }
  return from_json(j, path.parent_path());
}

inline ExperimentConfig parse_config_text(const std::string& toml_text, const std::filesystem::path& base_dir = {}) {
  return from_json(toml::parse(toml_text), base_dir);
}

/// 64-bit FNV-1a over the canonical JSON of every semantic field (the output directory is excluded).
inline std::string config_hash(const ExperimentConfig& c) {
  json j = to_json(c);
  j.erase("out");
  const std::string canon = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Data and problem construction

struct CsvMatrix {
  Matrix features;
  Vector last;
};

/// Numeric CSV, one row per sample; the last column is split off. A first row
/// that does not parse as numbers is treated as a header.
inline CsvMatrix load_data_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    bool ok = true;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t comma = std::min(line.find(',', start), line.size());
      std::string cell = line.substr(start, comma - start);
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      cell = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
      double v = 0.0;
      const auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || p != cell.data() + cell.size()) ok = false;
      row.push_back(v);
      start = comma + 1;
    }
    if (!ok) {
      if (rows.empty() && lineno == 1) continue;
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": non-numeric cell");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().size() < 2) throw UsageError(path.string() + ": need at least one row and two columns");
  const auto n = static_cast<Index>(rows.size());
  const auto d = static_cast<Index>(rows.front().size() - 1);
  CsvMatrix out{Matrix(n, d), Vector(n)};
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) out.features(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    out.last[i] = rows[static_cast<std::size_t>(i)].back();
  }
  return out;
}

struct PlantedProblem {
  Matrix A;
  Vector b;
  Vector x_true;
};

inline PlantedProblem generate_least_squares(const GeneratorSpec& g) {
  if (g.n < g.d || g.d < 1) throw UsageError("objective.generator: need n >= d >= 1");
  if (!(g.sigma_min > 0.0 && g.sigma_max >= g.sigma_min)) {
    throw UsageError("objective.generator: need 0 < sigma_min <= sigma_max");
  }
  if (g.sparsity < 0 || g.sparsity > g.d) throw UsageError("objective.generator.sparsity: must lie in [0, d]");
  std::mt19937_64 rng(g.seed);
  std::normal_distribution<double> normal;
  auto gaussian = [&](Index r, Index c) {
    Matrix m(r, c);
    for (Index j = 0; j < c; ++j)
      for (Index i = 0; i < r; ++i) m(i, j) = normal(rng);
    return m;
  };
  const Matrix u = Eigen::HouseholderQR<Matrix>(gaussian(g.n, g.d)).householderQ() * Matrix::Identity(g.n, g.d);
  const Matrix v = Eigen::HouseholderQR<Matrix>(gaussian(g.d, g.d)).householderQ();
  const Vector s = g.d == 1 ? Vector(Vector::Constant(1, g.sigma_max)) : Vector(Vector::LinSpaced(g.d, g.sigma_min, g.sigma_max));
  PlantedProblem out;
  out.A = u * s.asDiagonal() * v.transpose();
  out.x_true = Vector::Zero(g.d);
  // First `sparsity` coordinates of a random permutation, random signs.
  std::vector<Index> idx(static_cast<std::size_t>(g.d));
  for (Index i = 0; i < g.d; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(idx[i - 1], idx[pick(rng)]);
  }
  std::bernoulli_distribution coin(0.5);
  for (std::int64_t i = 0; i < g.sparsity; ++i) out.x_true[idx[static_cast<std::size_t>(i)]] = coin(rng) ? g.magnitude : -g.magnitude;
  out.b = out.A * out.x_true + g.noise * gaussian(g.n, 1).col(0);
  return out;
}

inline std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

inline Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Index>(i)] = v[i];
  return out;
}

inline SmoothObjective build_objective(const ObjectiveSpec& o, const std::filesystem::path& base_dir) {
  if (o.type == "least_squares") {
    if (o.generator && !o.data.empty()) throw UsageError("objective: give either data or generator, not both");
    if (o.generator) {
      auto planted = generate_least_squares(*o.generator);
      return SmoothObjective::least_squares(std::move(planted.A), std::move(planted.b));
    }
    if (o.data.empty()) throw UsageError("objective.data: least_squares needs data or generator");
    auto m = load_data_csv(resolve(base_dir, o.data));
    return SmoothObjective::least_squares(std::move(m.features), std::move(m.last));
  }
  if (o.type == "logistic") {
    if (o.data.empty()) throw UsageError("objective.data: logistic needs a data file");
    auto m = load_data_csv(resolve(base_dir, o.data));
    return SmoothObjective::logistic(std::move(m.features), std::move(m.last));
  }
  if (o.type == "quadratic") {
    if (o.Q.empty()) throw UsageError("objective.Q: missing");
    const auto d = static_cast<Index>(o.Q.size());
    Matrix q(d, d);
    for (Index i = 0; i < d; ++i) {
      if (static_cast<Index>(o.Q[static_cast<std::size_t>(i)].size()) != d) throw UsageError("objective.Q: must be square");
      for (Index j = 0; j < d; ++j) q(i, j) = o.Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const Vector c = o.c.empty() ? Vector::Zero(d) : to_vector(o.c);
    if (c.size() != d) throw UsageError("objective.c: size must match Q");
    try {
      return SmoothObjective::quadratic(q, c);
    } catch (const UsageError& e) {
      throw UsageError(std::string("objective.Q: ") + e.what());
    }
  }
  if (o.type == "squared_distance") {
    if (o.target.empty()) throw UsageError("objective.target: missing");
    return SmoothObjective::squared_distance(to_vector(o.target));
  }
  throw UsageError("objective.type: unknown objective '" + o.type + "'");
}

inline std::size_t objective_dim(const ObjectiveSpec& o, const std::filesystem::path& base_dir) {
  if (o.type == "least_squares" && o.generator) return static_cast<std::size_t>(o.generator->d);
  if (o.type == "quadratic") return o.Q.size();
  if (o.type == "squared_distance") return o.target.size();
  return static_cast<std::size_t>(build_objective(o, base_dir).dim());
}

inline Penalty build_penalty(const PenaltySpec& p) {
  try {
    if (p.type == "zero") return Penalty::zero();
    if (p.type == "l1") return Penalty::l1(p.lambda);
    if (p.type == "mcp") return Penalty::mcp(p.lambda, p.kappa);
    if (p.type == "scad") return Penalty::scad(p.lambda, p.a);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("penalty: ") + e.what());
  }
  throw UsageError("penalty.type: unknown penalty '" + p.type + "'");
}

inline ConvexBody build_constraint(const ConstraintSpec& k) {
  try {
    if (k.type == "box") return ConvexBody::box(to_vector(k.lo), to_vector(k.hi));
    if (k.type == "ball") return ConvexBody::ball(to_vector(k.center), k.radius);
  } catch (const UsageError& e) {
    throw UsageError(std::string("constraint: ") + e.what());
  }
  throw UsageError("constraint.type: unknown constraint '" + k.type + "'");
}

inline StepSchedule build_schedule(const ScheduleSpec& s) {
  if (s.constant) return StepSchedule::constant(*s.constant);
  return StepSchedule::decaying(s.c, s.alpha);
}

inline NoiseSpec build_noise_spec(const NoiseConfig& n) {
  NoiseSpec spec;
  if (n.type == "none") spec = NoiseSpec::none();
  else if (n.type == "rademacher") spec = NoiseSpec::rademacher(n.sigma);
  else if (n.type == "uniform_ball") spec = NoiseSpec::uniform_ball(n.sigma);
  else if (n.type == "markov") spec = NoiseSpec::markov(n.rho, n.sigma);
  else if (n.type == "decaying") spec = NoiseSpec::decaying(n.r0, n.beta);
  else throw UsageError("noise.type: unknown noise '" + n.type + "'");
  if (!n.direction.empty()) spec.direction = to_vector(n.direction);
  return spec;
}

inline Algorithm parse_algorithm(const std::string& name) {
  if (name == "proxsgd_a") return Algorithm::ProxSgdA;
  if (name == "proxsgd_b") return Algorithm::ProxSgdB;
  if (name == "subgradient") return Algorithm::Subgradient;
  throw UsageError("algorithm: unknown algorithm '" + name + "'");
}

/// Everything a run needs, built from a validated config.
struct Experiment {
  Algorithm algorithm;
  Problem problem;
  StepSchedule schedule;
  NoiseSpec noise;
  Vector x0;
  RunOptions options;
};

/// Validates the config and builds the experiment for one seed.
inline Experiment build_experiment(const ExperimentConfig& c) {
  const Algorithm alg = parse_algorithm(c.algorithm);
  if (c.iters < 1) throw UsageError("iters: must be at least 1");
  SmoothObjective f = build_objective(c.objective, c.base_dir);
  Penalty g = build_penalty(c.penalty);
  ConvexBody body = build_constraint(c.constraint);
  const Index d = f.dim();
  if (body.dim() != d) throw UsageError("constraint: dimension " + std::to_string(body.dim()) + " does not match objective dimension " + std::to_string(d));
  if (body.is_ball() && g.kind() != PenaltyKind::Zero) throw UsageError("penalty.type: ball constraints support only the zero penalty");
  if (alg == Algorithm::ProxSgdA && !body.is_box()) throw UsageError("constraint.type: proxsgd_a requires a box");

  const StepSchedule schedule = build_schedule(c.schedule);
  if (alg != Algorithm::Subgradient && g.kind() == PenaltyKind::MCP && !(schedule.first() < g.shape())) {
    throw UsageError("schedule: gamma_1 = " + std::to_string(schedule.first()) + " must be below penalty.kappa = " +
                     std::to_string(g.shape()));
  }
  if (alg != Algorithm::Subgradient && g.kind() == PenaltyKind::SCAD && !(schedule.first() < g.shape() - 1.0)) {
    throw UsageError("schedule: gamma_1 = " + std::to_string(schedule.first()) + " must be below penalty.a - 1");
  }

  NoiseSpec noise = build_noise_spec(c.noise);
  if (noise.kind == NoiseKind::Markov && !(std::abs(noise.rho) < 1.0)) throw UsageError("noise.rho: must satisfy |rho| < 1");
  if (noise.sigma < 0.0) throw UsageError("noise.sigma: must be nonnegative");
  if (noise.kind == NoiseKind::Decaying && !(noise.beta > 0.0)) throw UsageError("noise.beta: must be positive");
  if (noise.direction.size() != 0 && noise.direction.size() != d) throw UsageError("noise.direction: size must match dimension");

  Vector x0 = c.x0.empty() ? body.center() : to_vector(c.x0);
  if (x0.size() != d) throw UsageError("x0: size must match dimension");
  if (!body.contains(x0)) throw UsageError("x0: lies outside the constraint set");

  if (c.selection != "midpoint" && c.selection != "random_vertex") throw UsageError("selection: unknown rule '" + c.selection + "'");
  const auto& a = c.analysis;
  if (!(a.tail_fraction > 0.0 && a.tail_fraction < 1.0)) throw UsageError("analysis.tail_fraction: must lie in (0, 1)");
  if (!(a.tol > 0.0)) throw UsageError("analysis.tol: must be positive");
  if (!(a.window > 0.0)) throw UsageError("analysis.window: must be positive");
  if (!(a.stride > 0.0)) throw UsageError("analysis.stride: must be positive");

  RunOptions opt;
  opt.selection = c.selection == "midpoint" ? Selection::Midpoint : Selection::RandomVertex;
  opt.selection_seed = c.selection_seed;
  if (c.test_hook.nan_seed && *c.test_hook.nan_seed == c.seed) opt.inject_nan_at = c.test_hook.nan_iter;
  return Experiment{alg, Problem{std::move(f), std::move(g), std::move(body)}, schedule, std::move(noise), std::move(x0), opt};
}

inline void validate(const ExperimentConfig& c) { (void)build_experiment(c); }

}  // namespace incluso::harness
