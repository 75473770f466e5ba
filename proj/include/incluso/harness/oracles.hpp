#pragma once

// Brute-force reference computations. They only evaluate penalty values,
// gradients and Clarke intervals, never the closed forms they are used to check.

#include <cmath>
#include <cstdint>
#include <random>

#include "incluso/field.hpp"
#include "incluso/functions.hpp"
#include "incluso/geometry.hpp"

namespace incluso::oracle {

struct GridArgmin {
  double argmin = 0.0;
  double value = 0.0;
};

/// Grid argmin of p(y) + (y − z)²/(2γ) over {lo, lo + step, …} ∩ [lo, hi], plus hi and 0; ties go to smaller |y|.
inline GridArgmin prox_grid_full(const Penalty& p, double gamma, double z, double lo, double hi, double step) {
  if (!(lo < hi) || !(step > 0.0) || !(gamma > 0.0)) throw UsageError("oracle_prox_grid: need lo < hi, step > 0, gamma > 0");
  const auto n = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
  GridArgmin best{lo, p.prox_objective1(gamma, z, lo)};
  for (std::int64_t i = 1; i <= n; ++i) {
    const double y = lo + static_cast<double>(i) * step;
    const double v = p.prox_objective1(gamma, z, y);
    if (v < best.value || (v == best.value && std::abs(y) < std::abs(best.argmin))) best = {y, v};
  }
  if (const double v = p.prox_objective1(gamma, z, hi); v < best.value) best = {hi, v};
  // The penalties kink at 0; an offset grid would miss it.
  if (lo < 0.0 && hi > 0.0) {
    if (const double v = p.prox_objective1(gamma, z, 0.0); v <= best.value) best = {0.0, v};
  }
  return best;
}

inline double prox_grid(const Penalty& p, double gamma, double z, double lo, double hi, double step) {
  return prox_grid_full(p, gamma, z, lo, hi, step).argmin;
}

/// Sampled upper bound on −U(x): min ‖v‖² over random v ∈ F(x) − N_K(x), cone
/// coefficients drawn from [0, cone_cap].
inline double u_sampling(const SmoothObjective& f, const Penalty& g, const ConvexBody& body, const Vector& x,
                         std::size_t n_samples, double cone_cap, std::uint64_t seed = 0) {
  if (n_samples == 0 || !(cone_cap >= 0.0)) throw UsageError("oracle_u_sampling: need samples > 0, cone_cap >= 0");
  const Vector grad = f.gradient(x);
  const NormalCone cone = normal_cone(body, x);
  const Index d = x.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double best = kInf;
  Vector v(d);
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (Index i = 0; i < d; ++i) {
      const Interval c = g.clarke1(x[i]);
      const double sub = c.lo + (c.hi - c.lo) * unit(rng);
      v[i] = -grad[i] - sub;
      if (!cone.ray) {
        const double t = cone_cap * unit(rng);
        switch (cone.faces[static_cast<std::size_t>(i)]) {
          case ConeFace::Zero: break;
          case ConeFace::RayUp: v[i] -= t; break;
          case ConeFace::RayDown: v[i] += t; break;
          case ConeFace::Line: v[i] -= 2.0 * t - cone_cap; break;
        }
      }
    }
    if (cone.ray) v -= cone_cap * unit(rng) * *cone.ray;
    best = std::min(best, v.squaredNorm());
  }
  return best;
}

}  // namespace incluso::oracle
