#pragma once

// Smooth objectives f and separable penalties g: values, gradients, Clarke
// gradients of the 1-D penalty, and proximal operators.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <variant>

#include "incluso/errors.hpp"
#include "incluso/geometry.hpp"

namespace incluso {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
  bool is_singleton() const { return lo == hi; }
};

inline double soft_threshold(double z, double t) {
  const double a = std::abs(z) - t;
  return a > 0.0 ? std::copysign(a, z) : 0.0;
}

enum class PenaltyKind { Zero, L1, MCP, SCAD };

inline const char* to_string(PenaltyKind k) {
  switch (k) {
    case PenaltyKind::Zero: return "zero";
    case PenaltyKind::L1: return "l1";
    case PenaltyKind::MCP: return "mcp";
    case PenaltyKind::SCAD: return "scad";
  }
  return "?";
}

/// Separable penalty g(x) = Σ p(x_i).
///
/// MCP(λ, κ): p(z) = λ|z| − z²/(2κ) for |z| ≤ κλ and κλ²/2 beyond.
/// SCAD(λ, a): λ|z| up to λ, (2aλ|z| − z² − λ²)/(2(a−1)) up to aλ, λ²(a+1)/2 beyond.
class Penalty {
 public:
  static Penalty zero() { return Penalty(PenaltyKind::Zero, 0.0, 0.0); }

  static Penalty l1(double lambda) {
    if (!(lambda > 0.0)) throw ParameterError("l1: lambda must be positive");
    return Penalty(PenaltyKind::L1, lambda, 0.0);
  }

  static Penalty mcp(double lambda, double kappa) {
    if (!(lambda > 0.0)) throw ParameterError("mcp: lambda must be positive");
    if (!(kappa > 1.0)) throw ParameterError("mcp: kappa must exceed 1");
    return Penalty(PenaltyKind::MCP, lambda, kappa);
  }

  static Penalty scad(double lambda, double a) {
    if (!(lambda > 0.0)) throw ParameterError("scad: lambda must be positive");
    if (!(a > 2.0)) throw ParameterError("scad: a must exceed 2");
    return Penalty(PenaltyKind::SCAD, lambda, a);
  }

  PenaltyKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  /// κ for MCP, a for SCAD, 0 otherwise.
  double shape() const { return shape_; }
  bool is_convex() const { return kind_ == PenaltyKind::Zero || kind_ == PenaltyKind::L1; }

  /// Global Lipschitz constant of the 1-D penalty.
  double lipschitz() const { return kind_ == PenaltyKind::Zero ? 0.0 : lambda_; }

  /// Largest step for which the 1-D prox objective is strongly convex and the closed form holds.
  double max_gamma() const {
    switch (kind_) {
      case PenaltyKind::MCP: return shape_;
      case PenaltyKind::SCAD: return shape_ - 1.0;
      default: return kInf;
    }
  }

  void check_gamma(double gamma) const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("prox: gamma must be positive and finite");
    if (!(gamma < max_gamma())) {
      throw ParameterError(std::string("prox: gamma must be below ") + std::to_string(max_gamma()) + " for " +
                           to_string(kind_));
    }
  }

  double value1(double z) const {
    const double az = std::abs(z);
    const double l = lambda_;
    switch (kind_) {
      case PenaltyKind::Zero: return 0.0;
      case PenaltyKind::L1: return l * az;
      case PenaltyKind::MCP: {
        const double k = shape_;
        return az <= k * l ? l * az - z * z / (2.0 * k) : 0.5 * k * l * l;
      }
      case PenaltyKind::SCAD: {
        const double a = shape_;
        if (az <= l) return l * az;
        if (az <= a * l) return (2.0 * a * l * az - z * z - l * l) / (2.0 * (a - 1.0));
        return 0.5 * l * l * (a + 1.0);
      }
    }
    return 0.0;
  }

  /// Clarke generalized gradient of the 1-D penalty at z.
  Interval clarke1(double z) const {
    const double l = lambda_;
    if (kind_ == PenaltyKind::Zero) return {0.0, 0.0};
    if (z == 0.0) return {-l, l};
    const double az = std::abs(z);
    const double s = z > 0.0 ? 1.0 : -1.0;
    double slope = 0.0;
    switch (kind_) {
      case PenaltyKind::L1: slope = l; break;
      case PenaltyKind::MCP: slope = az < shape_ * l ? l - az / shape_ : 0.0; break;
      case PenaltyKind::SCAD: {
        const double a = shape_;
        if (az <= l) slope = l;
        else if (az < a * l) slope = (a * l - az) / (a - 1.0);
        break;
      }
      case PenaltyKind::Zero: break;
    }
    return {s * slope, s * slope};
  }

  /// argmin_y p(y) + (y − z)²/(2γ); γ must satisfy check_gamma.
  double prox1(double gamma, double z) const {
    const double l = lambda_;
    switch (kind_) {
      case PenaltyKind::Zero: return z;
      case PenaltyKind::L1: return soft_threshold(z, gamma * l);
      case PenaltyKind::MCP: {
        const double k = shape_;
        if (std::abs(z) < l * k) return soft_threshold(z, gamma * l) / (1.0 - gamma / k);
        return z;
      }
      case PenaltyKind::SCAD: {
        const double a = shape_;
        const double az = std::abs(z);
        if (az <= l * (1.0 + gamma)) return soft_threshold(z, gamma * l);
        if (az <= a * l) return soft_threshold(z, gamma * a * l / (a - 1.0)) / (1.0 - gamma / (a - 1.0));
        return z;
      }
    }
    return z;
  }

  double prox_objective1(double gamma, double z, double y) const {
    return value1(y) + (y - z) * (y - z) / (2.0 * gamma);
  }

 private:
  Penalty(PenaltyKind kind, double lambda, double shape) : kind_(kind), lambda_(lambda), shape_(shape) {}

  PenaltyKind kind_;
  double lambda_;
  double shape_;
};

inline double penalty_value(const Penalty& p, const Vector& x) {
  double s = 0.0;
  for (Index i = 0; i < x.size(); ++i) s += p.value1(x[i]);
  return s;
}

inline Interval clarke_interval(const Penalty& p, double z) { return p.clarke1(z); }

/// Product of the 1-D Clarke gradients.
inline IntervalBox clarke_box(const Penalty& p, const Vector& x) {
  IntervalBox b{Vector(x.size()), Vector(x.size())};
  for (Index i = 0; i < x.size(); ++i) {
    const Interval c = p.clarke1(x[i]);
    b.lo[i] = c.lo;
    b.hi[i] = c.hi;
  }
  return b;
}

struct ProxResult {
  Vector point;
  double objective_value = 0.0;
};

inline ProxResult prox(const Penalty& p, double gamma, const Vector& x) {
  p.check_gamma(gamma);
  ProxResult r{Vector(x.size()), 0.0};
  for (Index i = 0; i < x.size(); ++i) {
    r.point[i] = p.prox1(gamma, x[i]);
    r.objective_value += p.prox_objective1(gamma, x[i], r.point[i]);
  }
  return r;
}

namespace detail {

/// Best of the candidates for min p(y) + (y − z)²/(2γ) on [lo, hi]; ties go to smaller |y|.
inline double constrained_prox1(const Penalty& p, double gamma, double z, double lo, double hi) {
  std::array<double, 3> cand{p.prox1(gamma, z), lo, hi};
  double best = std::clamp(cand[0], lo, hi);
  double best_val = p.prox_objective1(gamma, z, best);
  for (std::size_t j = 1; j < cand.size(); ++j) {
    const double y = cand[j];
    const double v = p.prox_objective1(gamma, z, y);
    if (v < best_val || (v == best_val && std::abs(y) < std::abs(best))) {
      best = y;
      best_val = v;
    }
  }
  return best;
}

}  // namespace detail

/// prox of γ(g + indicator of K) for a box K, coordinate-wise.
inline ProxResult prox_with_indicator(const Penalty& p, const ConvexBody& body, double gamma, const Vector& x) {
  if (!body.is_box()) throw UsageError("prox_with_indicator: constraint must be a box");
  detail::require_dim(body.dim(), x.size(), "prox_with_indicator");
  p.check_gamma(gamma);
  const auto& b = body.as_box();
  ProxResult r{Vector(x.size()), 0.0};
  for (Index i = 0; i < x.size(); ++i) {
    r.point[i] = detail::constrained_prox1(p, gamma, x[i], b.lo[i], b.hi[i]);
    r.objective_value += p.prox_objective1(gamma, x[i], r.point[i]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Smooth objectives

/// f(x) = ½‖Ax − b‖².
struct LeastSquares {
  Matrix A;
  Vector b;
};

/// f(x) = (1/n) Σ log(1 + exp(−y_i ⟨a_i, x⟩)), labels y_i ∈ {−1, +1}.
struct Logistic {
  Matrix features;
  Vector labels;
};

/// f(x) = ½ xᵀQx + cᵀx with Q symmetric PSD.
struct Quadratic {
  Matrix Q;
  Vector c;
};

class SmoothObjective {
 public:
  using Kind = std::variant<LeastSquares, Logistic, Quadratic>;

  static SmoothObjective least_squares(Matrix A, Vector b) {
    if (A.rows() != b.size() || A.cols() == 0) throw UsageError("least_squares: A rows must match b size");
    const double lip = A.rows() == 0 ? 0.0 : largest_eigenvalue(A.transpose() * A);
    return SmoothObjective(LeastSquares{std::move(A), std::move(b)}, lip);
  }

  static SmoothObjective logistic(Matrix features, Vector labels) {
    if (features.rows() != labels.size() || features.rows() == 0) {
      throw UsageError("logistic: feature rows must match label count");
    }
    for (Index i = 0; i < labels.size(); ++i) {
      if (labels[i] != 1.0 && labels[i] != -1.0) throw UsageError("logistic: labels must be +1 or -1");
    }
    const double n = static_cast<double>(features.rows());
    const double lip = largest_eigenvalue(features.transpose() * features) / (4.0 * n);
    return SmoothObjective(Logistic{std::move(features), std::move(labels)}, lip);
  }

  static SmoothObjective quadratic(Matrix Q, Vector c) {
    if (Q.rows() != Q.cols() || Q.rows() != c.size()) throw UsageError("quadratic: Q must be square and match c");
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + Q.cwiseAbs().maxCoeff())) {
      throw UsageError("quadratic: Q must be symmetric");
    }
    const Eigen::SelfAdjointEigenSolver<Matrix> es(Q, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12 * (1.0 + es.eigenvalues().cwiseAbs().maxCoeff())) {
      throw UsageError("quadratic: Q must be positive semidefinite");
    }
    const double lip = std::max(0.0, es.eigenvalues().maxCoeff());
    return SmoothObjective(Quadratic{std::move(Q), std::move(c)}, lip);
  }

  /// ½‖x − target‖².
  static SmoothObjective squared_distance(const Vector& target) {
    return quadratic(Matrix::Identity(target.size(), target.size()), -target);
  }

  Index dim() const {
    return std::visit([](const auto& k) -> Index {
      using T = std::decay_t<decltype(k)>;
      if constexpr (std::is_same_v<T, LeastSquares>) return k.A.cols();
      else if constexpr (std::is_same_v<T, Logistic>) return k.features.cols();
      else return k.Q.cols();
    }, kind_);
  }

  const Kind& kind() const { return kind_; }
  double lipschitz_grad() const { return lipschitz_; }

  double value(const Vector& x) const {
    detail::require_dim(dim(), x.size(), "objective value");
    return std::visit([&](const auto& k) -> double {
      using T = std::decay_t<decltype(k)>;
      if constexpr (std::is_same_v<T, LeastSquares>) {
        return 0.5 * (k.A * x - k.b).squaredNorm();
      } else if constexpr (std::is_same_v<T, Logistic>) {
        const Vector m = k.labels.cwiseProduct(k.features * x);
        double s = 0.0;
        for (Index i = 0; i < m.size(); ++i) s += softplus(-m[i]);
        return s / static_cast<double>(m.size());
      } else {
        return 0.5 * x.dot(k.Q * x) + k.c.dot(x);
      }
    }, kind_);
  }

  Vector gradient(const Vector& x) const {
    detail::require_dim(dim(), x.size(), "objective gradient");
    return std::visit([&](const auto& k) -> Vector {
      using T = std::decay_t<decltype(k)>;
      if constexpr (std::is_same_v<T, LeastSquares>) {
        return k.A.transpose() * (k.A * x - k.b);
      } else if constexpr (std::is_same_v<T, Logistic>) {
        const Vector m = k.labels.cwiseProduct(k.features * x);
        Vector w(m.size());
        for (Index i = 0; i < m.size(); ++i) w[i] = -k.labels[i] * sigmoid(-m[i]);
        return k.features.transpose() * w / static_cast<double>(m.size());
      } else {
        return k.Q * x + k.c;
      }
    }, kind_);
  }

 private:
  SmoothObjective(Kind kind, double lip) : kind_(std::move(kind)), lipschitz_(lip) {}

  static double largest_eigenvalue(const Matrix& sym) {
    const Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues().maxCoeff());
  }

  static double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }
  static double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
  }

  Kind kind_;
  double lipschitz_;
};

inline Vector gradient(const SmoothObjective& f, const Vector& x) { return f.gradient(x); }

/// f, g and K bundled together.
struct Problem {
  SmoothObjective f;
  Penalty g;
  ConvexBody body;

  double objective(const Vector& x) const { return f.value(x) + penalty_value(g, x); }
};

}  // namespace incluso
