#pragma once

// The set-valued field F(x) = −∇f(x) − ∂̄g(x) and the stationarity measure
// U(x) = −min{‖v‖² : v ∈ F(x) − N_K(x)}.

#include <cmath>
#include <vector>

#include "incluso/functions.hpp"
#include "incluso/geometry.hpp"

namespace incluso {

/// F(x) as offset + box: offset = −∇f(x), box = −∂̄g(x).
struct FieldValue {
  Vector offset;
  IntervalBox box;
};

inline FieldValue field_from_gradient(const Penalty& g, const Vector& grad, const Vector& x) {
  FieldValue fv{-grad, IntervalBox{Vector(x.size()), Vector(x.size())}};
  for (Index i = 0; i < x.size(); ++i) {
    const Interval c = g.clarke1(x[i]);
    fv.box.lo[i] = -c.hi;
    fv.box.hi[i] = -c.lo;
  }
  return fv;
}

inline FieldValue evaluate_field(const SmoothObjective& f, const Penalty& g, const Vector& x) {
  return field_from_gradient(g, f.gradient(x), x);
}

struct StationarityReport {
  double u_value = 0.0;
  Vector min_norm_element;
  std::vector<ConeFace> active_faces;

  double min_norm() const { return std::sqrt(-u_value); }
};

inline StationarityReport stationarity_from_field(const FieldValue& field, const ConvexBody& body, const Vector& x) {
  const NormalCone cone = normal_cone(body, x);
  if (cone.ray && !field.box.is_singleton()) {
    throw UsageError("stationarity: ball constraints are supported only with a zero penalty");
  }
  MinNorm mn = min_norm_element_minus_cone(field.box, field.offset, cone);
  StationarityReport rep;
  rep.u_value = -(mn.norm * mn.norm);
  rep.min_norm_element = std::move(mn.element);
  rep.active_faces = cone.faces;
  return rep;
}

inline StationarityReport stationarity(const SmoothObjective& f, const Penalty& g, const ConvexBody& body,
                                       const Vector& x) {
  return stationarity_from_field(evaluate_field(f, g, x), body, x);
}

inline StationarityReport stationarity(const Problem& p, const Vector& x) { return stationarity(p.f, p.g, p.body, x); }

/// True iff √(−U) ≤ tol.
inline bool is_stationary(const StationarityReport& report, double tol) {
  if (!(tol > 0.0)) throw UsageError("is_stationary: tol must be positive");
  return std::sqrt(-report.u_value) <= tol;
}

}  // namespace incluso
