#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "incluso/engine.hpp"

using namespace incluso;
using Catch::Approx;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

SmoothObjective zero_objective(Index d) { return SmoothObjective::quadratic(Matrix::Zero(d, d), Vector::Zero(d)); }

// A = U·diag(s)·Vᵀ with singular values in [1, 3].
SmoothObjective random_least_squares(std::mt19937_64& rng, Index n, Index d) {
  std::normal_distribution<double> normal;
  Matrix g1(n, n), g2(d, d);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g1(i, j) = normal(rng);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g2(i, j) = normal(rng);
  const Matrix u = Eigen::HouseholderQR<Matrix>(g1).householderQ();
  const Matrix v = Eigen::HouseholderQR<Matrix>(g2).householderQ();
  Vector s = Vector::LinSpaced(d, 1.0, 3.0);
  const Matrix a = u.leftCols(d) * s.asDiagonal() * v.transpose();
  Vector b(n);
  for (Index i = 0; i < n; ++i) b[i] = 2.0 * normal(rng);
  return SmoothObjective::least_squares(a, b);
}

bool same_trace(const Trace& a, const Trace& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.iterates[k] != b.iterates[k] || a.noise[k] != b.noise[k]) return false;
    if (a.records[k].V != b.records[k].V || a.records[k].u_value != b.records[k].u_value) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("step schedules", "[engine]") {
  const auto s = StepSchedule::decaying(0.5, 0.7);
  CHECK(s.gamma(1) == 0.5);
  CHECK(s.gamma(10) == Approx(0.5 * std::pow(10.0, -0.7)).epsilon(1e-15));
  CHECK(s.gamma(100) < s.gamma(10));
  CHECK_THROWS_AS(s.gamma(0), UsageError);
  CHECK_THROWS_WITH(StepSchedule::decaying(0.5, 0.4), Catch::Matchers::ContainsSubstring("schedule.alpha"));
  CHECK_THROWS_AS(StepSchedule::decaying(0.5, 1.1), UsageError);
  CHECK_THROWS_AS(StepSchedule::decaying(-1.0, 0.7), UsageError);
  CHECK_NOTHROW(StepSchedule::decaying(0.5, 1.0));
  CHECK(StepSchedule::constant(0.25).gamma(1000) == 0.25);
}

TEST_CASE("variant A on a quadratic halves the iterate each step", "[engine]") {
  const Problem p{SmoothObjective::squared_distance(Vector::Zero(2)), Penalty::zero(), ConvexBody::cube(2, 10)};
  NoiseOracle none(NoiseSpec::none(), 2, 0);
  const auto tr = run_proxsgd_a(p, StepSchedule::constant(0.5), none, vec({4, 0}), 20);
  REQUIRE(tr.size() == 21);
  CHECK(tr.iterates[1] == vec({2, 0}));
  // Direct loop of the recursion.
  Vector x = vec({4, 0});
  for (std::size_t k = 1; k <= 20; ++k) {
    x = x - 0.5 * x;
    CHECK(tr.iterates[k] == x);
    CHECK(tr.iterates[k][0] == std::ldexp(4.0, -static_cast<int>(k)));
  }
  CHECK(tr.records[20].t == Approx(10.0));
}

TEST_CASE("deterministic runs reach interior and boundary stationary points", "[engine]") {
  NoiseOracle none(NoiseSpec::none(), 1, 0);
  const Problem inner{SmoothObjective::squared_distance(vec({0.3})), Penalty::zero(), ConvexBody::cube(1, 1)};
  const auto tr = run_proxsgd_a(inner, StepSchedule::decaying(0.5, 0.7), none, vec({-1}), 2000);
  // Error contracts like exp(−t_k).
  CHECK(std::sqrt(-tr.records.back().u_value) < 1e-6);
  CHECK(std::sqrt(-tr.records[500].u_value) > std::sqrt(-tr.records.back().u_value));

  const Problem edge{SmoothObjective::squared_distance(vec({3})), Penalty::zero(), ConvexBody::cube(1, 1)};
  const auto te = run_proxsgd_a(edge, StepSchedule::decaying(0.5, 0.7), none, vec({0}), 500);
  CHECK(te.iterates.back()[0] == 1.0);
  CHECK(te.records.back().u_value == 0.0);
  CHECK(stationarity(edge, te.iterates.back()).u_value == 0.0);
}

TEST_CASE("variants A and B agree when they should", "[engine]") {
  std::mt19937_64 rng(5);
  const auto f = random_least_squares(rng, 12, 4);
  const auto sched = StepSchedule::decaying(0.2, 0.7);

  const Problem plain{f, Penalty::zero(), ConvexBody::cube(4, 0.5)};
  NoiseOracle o1(NoiseSpec::rademacher(0.3), 4, 9), o2(NoiseSpec::rademacher(0.3), 4, 9);
  const auto a = run_proxsgd_a(plain, sched, o1, Vector::Zero(4), 500);
  const auto b = run_proxsgd_b(plain, sched, o2, Vector::Zero(4), 500);
  CHECK(same_trace(a, b));

  // Constraint never active: prox with and without the indicator coincide.
  const Problem loose{f, Penalty::l1(0.3), ConvexBody::cube(4, 100)};
  NoiseOracle o3(NoiseSpec::rademacher(0.3), 4, 9), o4(NoiseSpec::rademacher(0.3), 4, 9);
  const auto la = run_proxsgd_a(loose, sched, o3, Vector::Zero(4), 500);
  const auto lb = run_proxsgd_b(loose, sched, o4, Vector::Zero(4), 500);
  double gap = 0.0;
  for (std::size_t k = 0; k < la.size(); ++k) gap = std::max(gap, (la.iterates[k] - lb.iterates[k]).norm());
  CHECK(gap <= 1e-12);
}

TEST_CASE("variant B stays feasible after an outward step", "[engine]") {
  const Problem p{SmoothObjective::squared_distance(vec({50, -50})), Penalty::l1(0.1), ConvexBody::cube(2, 1)};
  NoiseOracle none(NoiseSpec::none(), 2, 0);
  const auto tr = run_proxsgd_b(p, StepSchedule::decaying(0.5, 0.7), none, vec({1, -1}), 50);
  for (const auto& x : tr.iterates) CHECK(p.body.contains(x));
  CHECK(tr.records[1].y_gap > 0.0);
}

TEST_CASE("projected subgradient on the absolute value", "[engine]") {
  const Problem p{zero_objective(1), Penalty::l1(1.0), ConvexBody::cube(1, 1)};
  NoiseOracle none(NoiseSpec::none(), 1, 0);
  const auto sched = StepSchedule::decaying(0.5, 1.0);
  const auto tr = run_projected_subgradient(p, sched, none, vec({1}), 200);
  // Hand simulation: x_k = x_{k−1} − (0.5/k)·sign(x_{k−1}).
  const double expected[] = {1.0, 0.5, 0.25, 0.25 - 0.5 / 3, 0.25 - 0.5 / 3 - 0.125, 0.25 - 0.5 / 3 - 0.125 + 0.1};
  for (std::size_t k = 0; k < 6; ++k) CHECK(tr.iterates[k][0] == Approx(expected[k]).margin(1e-15));
  bool crossed = false;
  for (std::size_t k = 1; k < tr.size(); ++k) {
    crossed = crossed || tr.iterates[k][0] < 0.0;
    if (crossed) CHECK(std::abs(tr.iterates[k][0]) <= sched.gamma(k) + 1e-15);
  }
  CHECK(crossed);

  const auto still = run_projected_subgradient(p, sched, none, vec({0}), 10);
  for (const auto& x : still.iterates) CHECK(x[0] == 0.0);
}

TEST_CASE("subgradient with zero penalty is projected gradient descent", "[engine]") {
  const Problem p{SmoothObjective::squared_distance(vec({2, -0.5})), Penalty::zero(), ConvexBody::cube(2, 1)};
  NoiseOracle o1(NoiseSpec::none(), 2, 0), o2(NoiseSpec::none(), 2, 0);
  const auto sched = StepSchedule::decaying(0.5, 0.7);
  const auto sg = run_projected_subgradient(p, sched, o1, vec({0, 0}), 100);
  const auto pa = run_proxsgd_a(p, sched, o2, vec({0, 0}), 100);
  for (std::size_t k = 0; k < sg.size(); ++k) CHECK(sg.iterates[k] == pa.iterates[k]);
}

TEST_CASE("noise oracles", "[engine]") {
  NoiseOracle none(NoiseSpec::none(), 3, 1);
  CHECK(none.next(Vector::Zero(3), Vector::Zero(3), 1) == Vector::Zero(3));

  NoiseSpec dec = NoiseSpec::decaying(1.0, 1.0);
  dec.direction = vec({1, 0, 0});
  NoiseOracle decaying(dec, 3, 1);
  CHECK(noise_next(decaying, Vector::Zero(3), Vector::Zero(3), 4) == vec({0.25, 0, 0}));

  NoiseOracle rad(NoiseSpec::rademacher(0.5), 2, 11);
  const Vector u = rad.direction();
  double sum = 0.0;
  const int n = 100000;
  for (int k = 1; k <= n; ++k) {
    const Vector e = rad.next(Vector::Zero(2), Vector::Zero(2), static_cast<std::size_t>(k));
    const double c = e.dot(u);
    REQUIRE((c == Approx(0.5) || c == Approx(-0.5)));
    REQUIRE((e - c * u).norm() < 1e-15);
    sum += c;
  }
  CHECK(std::abs(sum / n) <= 3 * 0.5 / std::sqrt(static_cast<double>(n)));

  NoiseOracle ball(NoiseSpec::uniform_ball(0.7), 3, 2);
  Vector mean = Vector::Zero(3);
  for (int k = 1; k <= n; ++k) {
    const Vector e = ball.next(Vector::Zero(3), Vector::Zero(3), static_cast<std::size_t>(k));
    REQUIRE(e.norm() <= 0.7);
    mean += e / n;
  }
  CHECK(mean.norm() <= 3 * 0.7 / std::sqrt(static_cast<double>(n)));

  CHECK_THROWS_AS(NoiseOracle(NoiseSpec::markov(1.0, 0.5), 2, 0), UsageError);
  CHECK_THROWS_AS(NoiseOracle(NoiseSpec::rademacher(-1.0), 2, 0), UsageError);
  CHECK_THROWS_AS(none.next(Vector::Zero(3), Vector::Zero(3), 0), UsageError);
}

TEST_CASE("runs are deterministic under a seed", "[engine][property]") {
  std::mt19937_64 rng(8);
  const auto f = random_least_squares(rng, 20, 5);
  const Problem p{f, Penalty::mcp(0.5, 3.0), ConvexBody::cube(5, 2)};
  for (auto alg : {Algorithm::ProxSgdA, Algorithm::ProxSgdB, Algorithm::Subgradient}) {
    for (auto spec : {NoiseSpec::rademacher(0.5), NoiseSpec::uniform_ball(0.5), NoiseSpec::markov(0.9, 0.5)}) {
      NoiseOracle o1(spec, 5, 77), o2(spec, 5, 77), o3(spec, 5, 78);
      const auto sched = StepSchedule::decaying(0.1, 0.7);
      const auto a = run(alg, p, sched, o1, Vector::Zero(5), 300);
      const auto b = run(alg, p, sched, o2, Vector::Zero(5), 300);
      const auto c = run(alg, p, sched, o3, Vector::Zero(5), 300);
      CHECK(same_trace(a, b));
      CHECK_FALSE(same_trace(a, c));
    }
  }
}

TEST_CASE("every iterate is feasible", "[engine][property]") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const auto f = random_least_squares(rng, 8, 3);
    std::vector<Problem> problems{{f, Penalty::scad(0.4, 3.7), ConvexBody::box(vec({-0.2, -1, 0}), vec({0.3, 1, 2}))},
                                  {f, Penalty::zero(), ConvexBody::ball(vec({0.1, 0, -0.1}), 0.4)}};
    for (const auto& p : problems) {
      for (auto alg : {Algorithm::ProxSgdA, Algorithm::ProxSgdB, Algorithm::Subgradient}) {
        if (alg == Algorithm::ProxSgdA && p.body.is_ball()) continue;
        NoiseOracle o(NoiseSpec::uniform_ball(2.0), 3, static_cast<std::uint64_t>(rep));
        const auto tr = run(alg, p, StepSchedule::decaying(0.8, 0.6), o, p.body.center(), 200);
        for (const auto& x : tr.iterates) REQUIRE(p.body.contains(x));
      }
    }
  }
}

TEST_CASE("variant A satisfies the prox optimality inclusion at every step", "[engine][property]") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const auto f = random_least_squares(rng, 15, 4);
    for (const auto& g : {Penalty::l1(0.5), Penalty::mcp(0.5, 3.0), Penalty::scad(0.5, 3.7), Penalty::zero()}) {
      const Problem p{f, g, ConvexBody::cube(4, 1)};
      NoiseOracle o(NoiseSpec::rademacher(0.5), 4, static_cast<std::uint64_t>(rep));
      const auto tr = run_proxsgd_a(p, StepSchedule::decaying(0.5, 0.7), o, Vector::Zero(4), 500);
      CHECK(max_vi_residual(tr, p) <= 1e-8);
    }
  }
}

TEST_CASE("noiseless variant A with small constant step decreases V", "[engine][property]") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const auto f = random_least_squares(rng, 20, 6);
    const Penalty g = rep % 2 == 0 ? Penalty::mcp(0.5, 3.0) : Penalty::scad(0.5, 3.7);
    const Problem p{f, g, ConvexBody::cube(6, 5)};
    NoiseOracle none(NoiseSpec::none(), 6, 0);
    const auto tr = run_proxsgd_a(p, StepSchedule::constant(0.9 / f.lipschitz_grad()), none, Vector::Zero(6), 2000);
    for (std::size_t k = 1; k < tr.size(); ++k) REQUIRE(tr.records[k].V <= tr.records[k - 1].V + 1e-10);
  }
}

TEST_CASE("Markov chain drift condition", "[engine]") {
  NoiseOracle markov(NoiseSpec::markov(0.9, 0.5), 2, 31);
  std::vector<double> chain{markov.hidden_state()};
  for (std::size_t k = 1; k <= 100000; ++k) {
    markov.next(Vector::Zero(2), Vector::Zero(2), k);
    chain.push_back(markov.hidden_state());
  }
  const auto rep = drift_check(chain, 0.9, 0.5);
  CHECK(rep.passed);
  CHECK(rep.slope == Approx(0.81).margin(0.02));
  CHECK(rep.intercept == Approx(0.19 * 1.25).margin(0.03));
  // A faster-mixing bound than the true kernel is rejected.
  CHECK_FALSE(drift_check(chain, 0.5, 0.5).passed);
}

TEST_CASE("assumption checks", "[engine]") {
  const Problem p{SmoothObjective::squared_distance(vec({2, -3, 0.5})), Penalty::l1(0.3), ConvexBody::cube(3, 1)};
  NoiseOracle none(NoiseSpec::none(), 3, 0);
  const auto sched = StepSchedule::decaying(0.5, 1.0);
  const auto quiet = run_proxsgd_a(p, sched, none, Vector::Zero(3), 1000);
  const auto rq = check_assumptions(quiet, none, sched);
  for (double s : rq.tail_sup) CHECK(s == 0.0);
  CHECK(rq.tail_decreasing);
  CHECK(rq.schedule_summable);

  // Median Cauchy tail over 20 seeds decreases from N = 10³ to 10⁴.
  const auto rsched = StepSchedule::decaying(0.5, 0.7);
  std::vector<double> head, tail;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    NoiseOracle rad(NoiseSpec::rademacher(0.5), 3, seed);
    const auto tr = run_proxsgd_a(p, rsched, rad, Vector::Zero(3), 20000);
    const auto r = check_assumptions(tr, rad, rsched, {1000, 10000});
    head.push_back(r.tail_sup[0]);
    tail.push_back(r.tail_sup[1]);
  }
  std::sort(head.begin(), head.end());
  std::sort(tail.begin(), tail.end());
  CHECK(tail[10] < head[10]);
}

TEST_CASE("displacement ratio is bounded by gradient, noise and penalty Lipschitz constants", "[engine]") {
  const Vector target = vec({2, -3, 0.5});
  const Problem p{SmoothObjective::squared_distance(target), Penalty::l1(0.3), ConvexBody::cube(3, 1)};
  // sup over K of ‖x − target‖ is attained at the vertex farthest from target.
  const double grad_sup = (target.cwiseAbs() + Vector::Ones(3)).norm();
  const double sigma = 0.5;
  const double lip_g = 0.3 * std::sqrt(3.0);
  const auto sched = StepSchedule::decaying(0.5, 0.7);
  for (auto alg : {Algorithm::ProxSgdA, Algorithm::ProxSgdB, Algorithm::Subgradient}) {
    NoiseOracle o(NoiseSpec::rademacher(sigma), 3, 4);
    const auto tr = run(alg, p, sched, o, Vector::Zero(3), 5000);
    const auto r = check_assumptions(tr, o, sched);
    CHECK(r.max_step_ratio <= grad_sup + sigma + lip_g + 1e-9);
    CHECK(r.max_step_ratio > 0.0);
  }
}

TEST_CASE("run validation and numeric failure", "[engine]") {
  const Problem p{SmoothObjective::squared_distance(vec({0.5, 0})), Penalty::mcp(1.0, 2.0), ConvexBody::cube(2, 1)};
  NoiseOracle none(NoiseSpec::none(), 2, 0);
  CHECK_THROWS_AS(run_proxsgd_a(p, StepSchedule::constant(0.5), none, vec({2, 0}), 10), DomainError);
  CHECK_THROWS_AS(run_proxsgd_a(p, StepSchedule::constant(2.5), none, vec({0, 0}), 10), ParameterError);
  CHECK_THROWS_AS(run_proxsgd_a(p, StepSchedule::constant(0.5), none, vec({0, 0}), 0), UsageError);
  const Problem ball{p.f, Penalty::zero(), ConvexBody::ball(Vector::Zero(2), 1)};
  CHECK_THROWS_AS(run_proxsgd_a(ball, StepSchedule::constant(0.5), none, vec({0, 0}), 10), UsageError);
  const Problem ball_l1{p.f, Penalty::l1(0.1), ConvexBody::ball(Vector::Zero(2), 1)};
  CHECK_THROWS_AS(run_proxsgd_b(ball_l1, StepSchedule::constant(0.5), none, vec({0, 0}), 10), UsageError);

  RunOptions opt;
  opt.inject_nan_at = 7;
  try {
    run(Algorithm::ProxSgdB, p, StepSchedule::constant(0.5), none, vec({0, 0}), 20, opt);
    FAIL("expected RunAborted");
  } catch (const RunAborted& e) {
    CHECK(e.iteration() == 7);
    CHECK(e.partial().size() == 7);
    for (const auto& x : e.partial().iterates) CHECK(x.allFinite());
  }
}
