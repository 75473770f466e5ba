#pragma once

// Compact convex bodies (boxes and balls), their normal cones, and the
// interval-box arithmetic used to represent set values coordinate-wise.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "incluso/errors.hpp"

namespace incluso {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {

inline void require_dim(Index expected, Index actual, const char* what) {
  if (expected != actual) {
    throw UsageError(std::string(what) + ": dimension mismatch (expected " + std::to_string(expected) +
                     ", got " + std::to_string(actual) + ")");
  }
}

}  // namespace detail

/// Points within this band of a face are treated as lying on it.
inline double default_boundary_tol(const Vector& x) { return 1e-9 * (1.0 + x.norm()); }

struct Box {
  Vector lo;
  Vector hi;
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

/// Compact convex set K with nonempty interior.
class ConvexBody {
 public:
  static ConvexBody box(Vector lo, Vector hi) {
    if (lo.size() == 0 || lo.size() != hi.size()) throw UsageError("box: lo/hi must be nonempty and of equal size");
    for (Index i = 0; i < lo.size(); ++i) {
      if (!(lo[i] < hi[i])) throw UsageError("box: lo[" + std::to_string(i) + "] must be < hi[" + std::to_string(i) + "]");
      if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) throw UsageError("box: bounds must be finite");
    }
    return ConvexBody(Box{std::move(lo), std::move(hi)});
  }

  static ConvexBody cube(Index dim, double half_width) {
    return box(Vector::Constant(dim, -half_width), Vector::Constant(dim, half_width));
  }

  static ConvexBody ball(Vector center, double radius) {
    if (center.size() == 0) throw UsageError("ball: center must be nonempty");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw UsageError("ball: radius must be positive and finite");
    return ConvexBody(Ball{std::move(center), radius});
  }

  Index dim() const {
    return std::visit([](const auto& k) -> Index {
      if constexpr (std::is_same_v<std::decay_t<decltype(k)>, Box>) return k.lo.size();
      else return k.center.size();
    }, kind_);
  }

  bool is_box() const { return std::holds_alternative<Box>(kind_); }
  bool is_ball() const { return std::holds_alternative<Ball>(kind_); }
  const Box& as_box() const { return std::get<Box>(kind_); }
  const Ball& as_ball() const { return std::get<Ball>(kind_); }

  Vector center() const {
    if (is_box()) return 0.5 * (as_box().lo + as_box().hi);
    return as_ball().center;
  }

  bool contains(const Vector& x, double tol = 0.0) const {
    detail::require_dim(dim(), x.size(), "contains");
    if (is_box()) {
      const auto& b = as_box();
      return ((x - b.lo).array() >= -tol).all() && ((b.hi - x).array() >= -tol).all();
    }
    const auto& b = as_ball();
    return (x - b.center).norm() <= b.radius + tol;
  }

  /// Box vertices (2^d of them); empty for balls.
  std::vector<Vector> vertices() const {
    std::vector<Vector> out;
    if (!is_box()) return out;
    const auto& b = as_box();
    const Index d = b.lo.size();
    if (d > 20) throw UsageError("vertices: dimension too large to enumerate");
    const std::uint64_t n = std::uint64_t{1} << d;
    out.reserve(n);
    for (std::uint64_t mask = 0; mask < n; ++mask) {
      Vector v(d);
      for (Index i = 0; i < d; ++i) v[i] = (mask >> i) & 1U ? b.hi[i] : b.lo[i];
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  explicit ConvexBody(std::variant<Box, Ball> kind) : kind_(std::move(kind)) {}
  std::variant<Box, Ball> kind_;
};

/// Euclidean projection onto K.
inline Vector project(const ConvexBody& body, const Vector& p) {
  detail::require_dim(body.dim(), p.size(), "project");
  if (body.is_box()) {
    const auto& b = body.as_box();
    return p.cwiseMax(b.lo).cwiseMin(b.hi);
  }
  const auto& b = body.as_ball();
  const Vector diff = p - b.center;
  const double r = diff.norm();
  if (r <= b.radius) return p;
  // Radial scaling can overshoot the sphere by an ulp; pull such points inside
  // so the result is feasible and a fixed point of the projection.
  Vector q = b.center + (b.radius / r) * diff;
  for (double shrink = 1.0; (q - b.center).norm() > b.radius;) {
    shrink -= 2.0 * std::numeric_limits<double>::epsilon();
    q = b.center + (shrink * b.radius / r) * diff;
  }
  return q;
}

/// Per-coordinate descriptor of N_K(x) for a box: which rays of ±e_i belong to the cone.
enum class ConeFace : std::uint8_t { Zero, RayUp, RayDown, Line };

/// N_K(x). For a box, `faces[i]` describes the cone along e_i. For a ball on
/// its boundary, `ray` holds the outward unit normal and faces are all Zero.
struct NormalCone {
  std::vector<ConeFace> faces;
  std::optional<Vector> ray;

  bool is_trivial() const {
    return !ray && std::all_of(faces.begin(), faces.end(), [](ConeFace f) { return f == ConeFace::Zero; });
  }

  /// Whether g lies in the cone, up to `tol` per component.
  bool contains(const Vector& g, double tol) const {
    if (ray) {
      const double t = std::max(0.0, g.dot(*ray));
      return (g - t * *ray).lpNorm<Eigen::Infinity>() <= tol;
    }
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const double gi = g[static_cast<Index>(i)];
      switch (faces[i]) {
        case ConeFace::Zero: if (std::abs(gi) > tol) return false; break;
        case ConeFace::RayUp: if (gi < -tol) return false; break;
        case ConeFace::RayDown: if (gi > tol) return false; break;
        case ConeFace::Line: break;
      }
    }
    return true;
  }
};

inline const char* to_string(ConeFace f) {
  switch (f) {
    case ConeFace::Zero: return "zero";
    case ConeFace::RayUp: return "ray_up";
    case ConeFace::RayDown: return "ray_down";
    case ConeFace::Line: return "line";
  }
  return "?";
}

inline NormalCone normal_cone(const ConvexBody& body, const Vector& x, double boundary_tol) {
  detail::require_dim(body.dim(), x.size(), "normal_cone");
  if (!body.contains(x, boundary_tol)) throw DomainError("normal_cone: point lies outside the body");
  NormalCone cone;
  cone.faces.assign(static_cast<std::size_t>(x.size()), ConeFace::Zero);
  if (body.is_box()) {
    const auto& b = body.as_box();
    for (Index i = 0; i < x.size(); ++i) {
      const bool up = x[i] >= b.hi[i] - boundary_tol;
      const bool down = x[i] <= b.lo[i] + boundary_tol;
      auto& f = cone.faces[static_cast<std::size_t>(i)];
      if (up && down) f = ConeFace::Line;
      else if (up) f = ConeFace::RayUp;
      else if (down) f = ConeFace::RayDown;
    }
    return cone;
  }
  const auto& b = body.as_ball();
  const Vector diff = x - b.center;
  const double r = diff.norm();
  if (r >= b.radius - boundary_tol && r > 0.0) cone.ray = diff / r;
  return cone;
}

inline NormalCone normal_cone(const ConvexBody& body, const Vector& x) {
  return normal_cone(body, x, default_boundary_tol(x));
}

/// Axis-aligned product of closed intervals; infinite endpoints allowed.
struct IntervalBox {
  Vector lo;
  Vector hi;

  static IntervalBox singleton(const Vector& v) { return {v, v}; }
  static IntervalBox zeros(Index d) { return singleton(Vector::Zero(d)); }

  Index dim() const { return lo.size(); }
  bool is_singleton() const { return lo == hi; }
  bool is_compact() const { return lo.allFinite() && hi.allFinite(); }

  bool contains(const Vector& p, double tol = 0.0) const {
    detail::require_dim(dim(), p.size(), "IntervalBox::contains");
    return ((p - lo).array() >= -tol).all() && ((hi - p).array() >= -tol).all();
  }

  Vector clamp(const Vector& p) const { return p.cwiseMax(lo).cwiseMin(hi); }
};

inline double dist_to_intervalbox(const Vector& p, const IntervalBox& box) {
  detail::require_dim(box.dim(), p.size(), "dist_to_intervalbox");
  return (p - box.clamp(p)).norm();
}

/// Minimizer of ‖v‖ over v ∈ (offset + box) − cone.
struct MinNorm {
  double norm = 0.0;
  Vector element;
};

/// Coordinate-wise for box cones: subtracting RayUp opens the interval to −∞,
/// RayDown to +∞, Line to ℝ. A ball ray is handled only when `box` is a singleton.
inline MinNorm min_norm_element_minus_cone(const IntervalBox& box, const Vector& offset, const NormalCone& cone) {
  const Index d = box.dim();
  detail::require_dim(d, offset.size(), "min_norm_minus_cone");
  if (cone.ray) {
    if (!box.is_singleton()) {
      throw UsageError("min_norm_minus_cone: ball normal cone requires a singleton set value");
    }
    const Vector v = offset + box.lo;
    const double t = std::max(0.0, v.dot(*cone.ray));
    MinNorm out{0.0, v - t * *cone.ray};
    out.norm = out.element.norm();
    return out;
  }
  detail::require_dim(d, static_cast<Index>(cone.faces.size()), "min_norm_minus_cone");
  Vector lo = offset + box.lo;
  Vector hi = offset + box.hi;
  for (Index i = 0; i < d; ++i) {
    switch (cone.faces[static_cast<std::size_t>(i)]) {
      case ConeFace::Zero: break;
      case ConeFace::RayUp: lo[i] = -kInf; break;
      case ConeFace::RayDown: hi[i] = kInf; break;
      case ConeFace::Line: lo[i] = -kInf; hi[i] = kInf; break;
    }
  }
  MinNorm out;
  out.element = Vector::Zero(d).cwiseMax(lo).cwiseMin(hi);
  out.norm = out.element.norm();
  return out;
}

inline double min_norm_minus_cone(const IntervalBox& box, const Vector& offset, const NormalCone& cone) {
  return min_norm_element_minus_cone(box, offset, cone).norm;
}

}  // namespace incluso
