#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "incluso/functions.hpp"
#include "incluso/harness/oracles.hpp"

using namespace incluso;
using Catch::Approx;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

struct Instance {
  Penalty p;
  double gamma;
  double z;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lambda = 0.1 + 1.9 * unit(rng);
  Penalty p = Penalty::zero();
  switch (kind(rng)) {
    case 0: p = Penalty::l1(lambda); break;
    case 1: p = Penalty::mcp(lambda, 1.5 + 3.5 * unit(rng)); break;
    default: p = Penalty::scad(lambda, 2.5 + 2.5 * unit(rng)); break;
  }
  const double gmax = std::min(2.0, 0.8 * p.max_gamma());
  const double gamma = 0.05 + (gmax - 0.05) * unit(rng);
  const double z = -4.0 + 8.0 * unit(rng);
  return {p, gamma, z};
}

}  // namespace

TEST_CASE("penalty values", "[functions]") {
  CHECK(penalty_value(Penalty::l1(1.0), vec({1, -2})) == 3.0);
  CHECK(penalty_value(Penalty::mcp(1.0, 2.0), vec({0.5})) == Approx(0.4375).epsilon(1e-15));
  CHECK(penalty_value(Penalty::mcp(1.0, 2.0), vec({5})) == 1.0);
  CHECK(penalty_value(Penalty::zero(), vec({5, -3})) == 0.0);
  // SCAD pieces: λ=1, a=3.7
  const auto scad = Penalty::scad(1.0, 3.7);
  CHECK(scad.value1(0.5) == 0.5);
  CHECK(scad.value1(2.0) == Approx((2 * 3.7 * 2.0 - 4.0 - 1.0) / (2 * 2.7)));
  CHECK(scad.value1(10.0) == Approx(0.5 * 4.7));
}

TEST_CASE("penalty parameter validation", "[functions]") {
  CHECK_THROWS_AS(Penalty::l1(0.0), ParameterError);
  CHECK_THROWS_AS(Penalty::mcp(1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(Penalty::scad(1.0, 2.0), ParameterError);
  CHECK_THROWS_AS(prox(Penalty::mcp(1.0, 2.0), 2.0, vec({1})), ParameterError);
  CHECK_THROWS_AS(prox(Penalty::mcp(1.0, 2.0), 2.5, vec({1})), ParameterError);
  CHECK_THROWS_AS(prox(Penalty::scad(1.0, 3.0), 2.0, vec({1})), ParameterError);
  CHECK_NOTHROW(prox(Penalty::mcp(1.0, 2.0), 1.99, vec({1})));
}

TEST_CASE("penalties are continuous at their breakpoints", "[functions]") {
  for (double l : {0.3, 1.0, 2.5}) {
    for (double k : {1.2, 2.0, 7.0}) {
      const auto p = Penalty::mcp(l, k);
      const double z = k * l;
      const double first = l * z - z * z / (2 * k);
      CHECK(std::abs(first - p.value1(std::nextafter(z, kInf))) <= 1e-12);
      CHECK(std::abs(p.value1(z) - 0.5 * k * l * l) <= 1e-12);
    }
    const auto s = Penalty::scad(l, 3.7);
    CHECK(std::abs(s.value1(std::nextafter(l, kInf)) - s.value1(l)) <= 1e-12);
    CHECK(std::abs(s.value1(std::nextafter(3.7 * l, kInf)) - s.value1(3.7 * l)) <= 1e-12);
  }
}

TEST_CASE("clarke intervals", "[functions]") {
  const auto l1 = Penalty::l1(1.0);
  CHECK(l1.clarke1(0.0).lo == -1.0);
  CHECK(l1.clarke1(0.0).hi == 1.0);
  const auto mcp = Penalty::mcp(1.0, 2.0);
  CHECK(mcp.clarke1(0.5).lo == 0.75);
  CHECK(mcp.clarke1(0.5).is_singleton());
  CHECK(mcp.clarke1(3.0).lo == 0.0);
  CHECK(mcp.clarke1(3.0).hi == 0.0);
  CHECK(mcp.clarke1(-0.5).lo == -0.75);
  for (const auto& p : {Penalty::l1(0.7), Penalty::mcp(0.7, 3.0), Penalty::scad(0.7, 3.7)}) {
    CHECK(p.clarke1(0.0).lo == -0.7);
    CHECK(p.clarke1(0.0).hi == 0.7);
  }
  CHECK(Penalty::zero().clarke1(0.0).hi == 0.0);
}

TEST_CASE("clarke slopes match one-sided finite differences off kinks", "[functions][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> zdist(-6.0, 6.0);
  const double h = 1e-7;
  for (const auto& p : {Penalty::l1(0.8), Penalty::mcp(0.8, 2.5), Penalty::scad(0.8, 3.2)}) {
    for (int rep = 0; rep < 2000; ++rep) {
      const double z = zdist(rng);
      const double kinks[] = {0.0, 0.8, -0.8, 2.0, -2.0, 2.56, -2.56};
      bool near_kink = false;
      for (double kz : kinks) near_kink = near_kink || std::abs(z - kz) < 1e-5;
      if (near_kink) continue;
      const double right = (p.value1(z + h) - p.value1(z)) / h;
      const double left = (p.value1(z) - p.value1(z - h)) / h;
      const Interval c = p.clarke1(z);
      CHECK(std::abs(right - c.hi) <= 1e-5);
      CHECK(std::abs(left - c.lo) <= 1e-5);
    }
  }
}

TEST_CASE("prox examples checked against the grid oracle", "[functions]") {
  const auto l1 = Penalty::l1(1.0);
  const double oracle_l1 = oracle::prox_grid(l1, 0.5, 2.0, -4.0, 4.0, 1e-4);
  CHECK(std::abs(oracle_l1 - 1.5) <= 1e-4);
  CHECK(prox(l1, 0.5, vec({2})).point[0] == 1.5);

  const auto mcp = Penalty::mcp(1.0, 2.0);
  const double oracle_mcp = oracle::prox_grid(mcp, 0.5, 0.6, -4.0, 4.0, 1e-4);
  CHECK(std::abs(oracle_mcp - 0.1 / 0.75) <= 1e-4);
  CHECK(prox(mcp, 0.5, vec({0.6})).point[0] == Approx(0.1 / 0.75).epsilon(1e-14));
  // |x| ≥ λκ: identity
  CHECK(prox(mcp, 0.5, vec({3})).point[0] == 3.0);
  CHECK(prox(mcp, 0.5, vec({-2})).point[0] == -2.0);
}

TEST_CASE("prox with a box indicator", "[functions]") {
  const auto unit = ConvexBody::box(vec({-1}), vec({1}));
  CHECK(prox_with_indicator(Penalty::zero(), unit, 1.0, vec({5})).point[0] == 1.0);

  const auto narrow = ConvexBody::box(vec({-0.2}), vec({0.2}));
  const auto l1 = Penalty::l1(1.0);
  double best = kInf, arg = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double y = -0.2 + i * 1e-4;
    const double v = std::abs(y) + (y - 2.0) * (y - 2.0) / 2.0;
    if (v < best) best = v, arg = y;
  }
  CHECK(std::abs(arg - 0.2) <= 1e-9);
  CHECK(prox_with_indicator(l1, narrow, 1.0, vec({2})).point[0] == 0.2);

  const auto wide = ConvexBody::box(vec({-10}), vec({10}));
  const auto mcp = Penalty::mcp(1.0, 2.0);
  const double constrained = prox_with_indicator(mcp, wide, 0.5, vec({0.6})).point[0];
  CHECK(constrained == prox(mcp, 0.5, vec({0.6})).point[0]);
  CHECK(std::abs(constrained - oracle::prox_grid(mcp, 0.5, 0.6, -10.0, 10.0, 1e-4)) <= 1e-4);

  CHECK_THROWS_AS(prox_with_indicator(l1, ConvexBody::ball(vec({0}), 1.0), 1.0, vec({2})), UsageError);
}

TEST_CASE("closed-form prox is optimal against the grid oracle", "[functions][property]") {
  std::mt19937_64 rng(31337);
  for (int rep = 0; rep < 500; ++rep) {
    const auto [p, gamma, z] = random_instance(rng);
    const double y = p.prox1(gamma, z);
    const auto grid = oracle::prox_grid_full(p, gamma, z, -5.0, 5.0, 1e-4);
    const double exact_val = p.prox_objective1(gamma, z, y);
    INFO("kind=" << to_string(p.kind()) << " lambda=" << p.lambda() << " shape=" << p.shape() << " gamma=" << gamma
                 << " z=" << z);
    CHECK(std::abs(y - grid.argmin) <= 2e-4);
    CHECK(exact_val <= grid.value + 1e-12);
    CHECK(grid.value - exact_val <= 1e-7 * (1.0 + 1.0 / gamma));
  }
}

TEST_CASE("prox result satisfies the optimality inclusion", "[functions][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> bound(0.1, 2.0);
  for (int rep = 0; rep < 500; ++rep) {
    const auto [p, gamma, z] = random_instance(rng);
    const double y = p.prox1(gamma, z);
    CHECK(p.clarke1(y).contains((z - y) / gamma, 1e-8));

    // Constrained: (z − y)/γ ∈ ∂̄p(y) + N_[lo,hi](y).
    const double lo = -bound(rng), hi = bound(rng);
    const auto body = ConvexBody::box(vec({lo}), vec({hi}));
    const double yc = prox_with_indicator(p, body, gamma, vec({z})).point[0];
    Interval c = p.clarke1(yc);
    if (yc == hi) c.hi = kInf;
    if (yc == lo) c.lo = -kInf;
    CHECK(c.contains((z - yc) / gamma, 1e-8));
    const auto grid = oracle::prox_grid_full(p, gamma, z, lo, hi, 1e-4);
    CHECK(p.prox_objective1(gamma, z, yc) <= grid.value + 1e-12);
  }
}

TEST_CASE("convex prox is firmly nonexpansive", "[functions][property]") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& p : {Penalty::l1(0.6), Penalty::zero()}) {
    for (int rep = 0; rep < 500; ++rep) {
      Vector x(4), y(4);
      for (Index i = 0; i < 4; ++i) x[i] = u(rng), y[i] = u(rng);
      const Vector px = prox(p, 0.7, x).point, py = prox(p, 0.7, y).point;
      CHECK((px - py).squaredNorm() <= (px - py).dot(x - y) + 1e-10);
    }
  }
}

TEST_CASE("prox objective never exceeds the value at the input", "[functions][property]") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 500; ++rep) {
    const auto [p, gamma, z] = random_instance(rng);
    const auto r = prox(p, gamma, vec({z, -z / 2}));
    CHECK(r.objective_value <= penalty_value(p, vec({z, -z / 2})) + 1e-15);
  }
}

TEST_CASE("smooth objective gradients", "[functions]") {
  const auto ls0 = SmoothObjective::least_squares(Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK(ls0.gradient(vec({1, 2})) == vec({1, 2}));
  const auto ls1 = SmoothObjective::least_squares(Matrix::Identity(2, 2), vec({1, 1}));
  CHECK(ls1.gradient(vec({1, 1})) == vec({0, 0}));
  Matrix Q = Matrix::Zero(2, 2);
  Q.diagonal() << 2, 4;
  const auto q = SmoothObjective::quadratic(Q, Vector::Zero(2));
  CHECK(q.gradient(vec({1, 1})) == vec({2, 4}));
  CHECK(q.lipschitz_grad() == Approx(4.0));
  Matrix bad(2, 2);
  bad << 1, 2, 0, 1;
  CHECK_THROWS_AS(SmoothObjective::quadratic(bad, Vector::Zero(2)), UsageError);
  CHECK_THROWS_AS(SmoothObjective::least_squares(Matrix::Identity(2, 2), vec({1, 1, 1})), UsageError);
}

TEST_CASE("gradients match finite differences and respect the Lipschitz constant", "[functions][property]") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> n;
  Matrix A(8, 4);
  for (Index i = 0; i < A.size(); ++i) A.data()[i] = n(rng);
  Vector b(8), labels(8);
  for (Index i = 0; i < 8; ++i) b[i] = n(rng), labels[i] = i % 3 == 0 ? 1.0 : -1.0;
  Matrix Q = A.transpose() * A;
  const std::vector<SmoothObjective> objectives = {SmoothObjective::least_squares(A, b),
                                                   SmoothObjective::logistic(A, labels),
                                                   SmoothObjective::quadratic(Q, b.head(4))};
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& f : objectives) {
    for (int rep = 0; rep < 50; ++rep) {
      Vector x(4), y(4);
      for (Index i = 0; i < 4; ++i) x[i] = u(rng), y[i] = u(rng);
      const Vector g = f.gradient(x);
      Vector fd(4);
      for (Index i = 0; i < 4; ++i) {
        const double h = 1e-6;
        Vector xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        fd[i] = (f.value(xp) - f.value(xm)) / (2 * h);
      }
      CHECK((fd - g).norm() <= 1e-6 * (1.0 + g.norm()));
      CHECK((f.gradient(x) - f.gradient(y)).norm() <= f.lipschitz_grad() * (x - y).norm() * (1 + 1e-12));
    }
  }
}
