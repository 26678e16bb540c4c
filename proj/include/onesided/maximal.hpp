#pragma once

// One-sided maximal and minimal averaging operators on a uniform grid.
//
// The supremum (infimum) runs over every averaging length that is a grid
// multiple and keeps the interval inside the window, together with the h -> 0
// limit |f(x)|. Windowed sums are accumulated outward from the base node so
// that the backward operators are exact mirror images of the forward ones.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "onesided/grid.hpp"

namespace onesided {

namespace detail {

enum class Extremum { max, min };

/// Extremal forward average over every grid multiple k*h (k = 1..edge) plus
/// the h -> 0 value a[i], for every node i.
inline std::vector<double> forward_extremal_average(std::span<const double> a, double h, Extremum kind) {
  const std::size_t n = a.size();
  std::size_t first = n;
  std::size_t last = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != 0.0) {
      if (first == n) first = i;
      last = i;
    }
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double best = a[i];
    const std::size_t k_edge = n - 1 - i;
    auto consider = [&](double avg) {
      if (kind == Extremum::max ? avg > best : avg < best) best = avg;
    };
    if (k_edge == 0) {
      out[i] = best;
      continue;
    }
    // Cells 1..zeros lie left of the first nonzero sample; cells past k_mass
    // lie right of the last one, where the running sum is frozen and the
    // averages decrease monotonically.
    std::size_t zeros = k_edge;
    std::size_t k_mass = 0;
    if (first < n) {
      zeros = std::min(k_edge, first > i ? first - 1 - i : std::size_t{0});
      k_mass = last + 1 > i ? std::min(k_edge, last + 1 - i) : 0;
    }
    if (zeros >= 1) consider(0.0);
    if (k_mass <= zeros) {
      consider(0.0);
      out[i] = best;
      continue;
    }
    double sum = 0.0;
    for (std::size_t k = zeros + 1; k <= k_mass; ++k) {
      sum += 0.5 * (a[i + k - 1] + a[i + k]) * h;
      consider(sum / (static_cast<double>(k) * h));
    }
    if (k_mass < k_edge) consider(sum / (static_cast<double>(k_edge) * h));
    out[i] = best;
  }
  return out;
}

inline std::vector<double> backward_extremal_average(std::span<const double> a, double h, Extremum kind) {
  std::vector<double> rev(a.rbegin(), a.rend());
  auto out = forward_extremal_average(rev, h, kind);
  std::reverse(out.begin(), out.end());
  return out;
}

inline SampledFunction to_function(const Grid& g, const std::vector<double>& v) {
  std::vector<Complex> c(v.begin(), v.end());
  return SampledFunction(g, std::move(c));
}

}  // namespace detail

/// One-sided maximal function: sup over h > 0 of (1/h) * integral_x^{x+h} |f|.
inline SampledFunction m_plus(const SampledFunction& f) {
  const auto a = f.moduli();
  return detail::to_function(f.grid(), detail::forward_extremal_average(a, f.spacing(), detail::Extremum::max));
}

/// Backward counterpart: sup over h > 0 of (1/h) * integral_{x-h}^x |f|.
inline SampledFunction m_minus(const SampledFunction& f) {
  const auto a = f.moduli();
  return detail::to_function(f.grid(), detail::backward_extremal_average(a, f.spacing(), detail::Extremum::max));
}

/// One-sided minimal function: inf over h > 0 of (1/h) * integral_x^{x+h} |f|.
inline SampledFunction m_plus_min(const SampledFunction& f) {
  const auto a = f.moduli();
  return detail::to_function(f.grid(), detail::forward_extremal_average(a, f.spacing(), detail::Extremum::min));
}

}  // namespace onesided
