#pragma once

// Interpolation with change of measures, and an exact check of it on
// multiplication operators f -> g f, whose L^p(v) -> L^p(u) norm is the
// nodewise sup of |g| (u/v)^{1/p}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "onesided/errors.hpp"
#include "onesided/grid.hpp"
#include "onesided/weight_spec.hpp"

namespace onesided {

struct InterpolationEndpoints {
  double p0 = 2.0;
  double p1 = 2.0;
  WeightSpec u0, v0, u1, v1;
  double c0 = 1.0;
  double c1 = 1.0;
  double theta = 0.5;

  void validate() const {
    if (!(p0 > 1.0) || !(p1 > 1.0) || !std::isfinite(p0) || !std::isfinite(p1))
      throw DomainError("interpolation: exponents must lie in (1, inf)");
    if (!(c0 > 0.0) || !(c1 > 0.0)) throw DomainError("interpolation: endpoint constants must be positive");
    if (!(theta > 0.0 && theta < 1.0)) throw DomainError("interpolation: theta must lie in (0, 1)");
  }
};

struct InterpolatedWeights {
  double p = 2.0;
  WeightSpec u;
  WeightSpec v;
  double c_bound = 1.0;
};

/// Exponents of the endpoint weights in the interpolated weight: u = u0^e0 u1^e1.
struct InterpolationExponents {
  double p;
  double e0;
  double e1;
};

inline InterpolationExponents interpolation_exponents(double p0, double p1, double theta) {
  const double p = 1.0 / (theta / p0 + (1.0 - theta) / p1);
  return {p, p * theta / p0, p * (1.0 - theta) / p1};
}

inline InterpolatedWeights interpolate_weights(const InterpolationEndpoints& e) {
  e.validate();
  const auto x = interpolation_exponents(e.p0, e.p1, e.theta);
  return {x.p, e.u0.pow(x.e0).times(e.u1.pow(x.e1)), e.v0.pow(x.e0).times(e.v1.pow(x.e1)),
          std::pow(e.c0, e.theta) * std::pow(e.c1, 1.0 - e.theta)};
}

struct MultiplierReport {
  double exact_norm = 0.0;
  double c_bound = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  bool pass = false;
};

namespace detail {

inline double multiplier_norm(const std::vector<double>& g, const std::vector<double>& u, const std::vector<double>& v,
                              double p) {
  double best = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) best = std::max(best, g[i] * std::pow(u[i] / v[i], 1.0 / p));
  return best;
}

inline std::vector<double> finite_realization(const WeightSpec& w, const Grid& grid) {
  auto r = w.realize(grid).values;
  for (const double x : r) {
    if (!std::isfinite(x) || !(x > 0.0)) throw DomainError("interpolation: weight must be finite and positive on the grid");
  }
  return r;
}

}  // namespace detail

/// Sets c0, c1 to the exact endpoint norms of f -> g f, builds the
/// interpolated weights nodewise from the endpoint samples, and compares
/// the exact interpolated norm with c0^theta c1^{1-theta}.
inline MultiplierReport verify_on_multiplier(const SampledFunction& g, const InterpolationEndpoints& e) {
  e.validate();
  const Grid& grid = g.grid();
  const auto gm = g.moduli();
  const auto u0 = detail::finite_realization(e.u0, grid);
  const auto v0 = detail::finite_realization(e.v0, grid);
  const auto u1 = detail::finite_realization(e.u1, grid);
  const auto v1 = detail::finite_realization(e.v1, grid);
  const auto x = interpolation_exponents(e.p0, e.p1, e.theta);
  std::vector<double> u(grid.n);
  std::vector<double> v(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    u[i] = std::pow(u0[i], x.e0) * std::pow(u1[i], x.e1);
    v[i] = std::pow(v0[i], x.e0) * std::pow(v1[i], x.e1);
  }
  MultiplierReport rep;
  rep.c0 = detail::multiplier_norm(gm, u0, v0, e.p0);
  rep.c1 = detail::multiplier_norm(gm, u1, v1, e.p1);
  rep.c_bound = std::pow(rep.c0, e.theta) * std::pow(rep.c1, 1.0 - e.theta);
  rep.exact_norm = detail::multiplier_norm(gm, u, v, x.p);
  rep.pass = rep.exact_norm <= rep.c_bound * (1.0 + 1e-9);
  return rep;
}

/// c_j = unweighted_j^theta * weighted_j^{1-theta}.
inline std::vector<double> weighted_decay_combination(const std::vector<double>& unweighted,
                                                      const std::vector<double>& weighted, double theta) {
  if (unweighted.size() != weighted.size()) throw ConfigError("decay combination: length mismatch");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("decay combination: theta must lie in (0, 1)");
  std::vector<double> out(unweighted.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (!(unweighted[j] > 0.0) || !(weighted[j] > 0.0)) throw DomainError("decay combination: norms must be positive");
    out[j] = std::pow(unweighted[j], theta) * std::pow(weighted[j], 1.0 - theta);
  }
  return out;
}

}  // namespace onesided
