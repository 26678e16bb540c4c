#pragma once

// One-sided Calderon-Zygmund kernel catalog.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "onesided/errors.hpp"

namespace onesided {

/// plus: kernel supported in t < 0, operator integrates over y > x.
/// minus: kernel supported in t > 0, operator integrates over y < x.
enum class Side { plus, minus };

inline const char* to_string(Side s) { return s == Side::plus ? "plus" : "minus"; }

inline Side side_from_string(const std::string& s) {
  if (s == "plus") return Side::plus;
  if (s == "minus") return Side::minus;
  throw ConfigError("unknown side '" + s + "'");
}

enum class KernelTag { oscillating_log, truncated_power };

inline const char* to_string(KernelTag t) {
  return t == KernelTag::oscillating_log ? "oscillating-log" : "truncated-power";
}

inline KernelTag kernel_tag_from_string(const std::string& s) {
  if (s == "oscillating-log") return KernelTag::oscillating_log;
  if (s == "truncated-power") return KernelTag::truncated_power;
  throw ConfigError("unknown kernel tag '" + s + "'");
}

/// Smooth bump on (r_lo, r_hi) with peak value 1 at the midpoint.
struct BumpProfile {
  double r_lo = 0.25;
  double r_hi = 1.0;

  [[nodiscard]] double u(double r) const { return (2.0 * r - r_lo - r_hi) / (r_hi - r_lo); }

  [[nodiscard]] double operator()(double r) const {
    const double x = u(r);
    if (!(std::abs(x) < 1.0)) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
  }

  [[nodiscard]] double derivative(double r) const {
    const double x = u(r);
    if (!(std::abs(x) < 1.0)) return 0.0;
    const double q = 1.0 - x * x;
    return (*this)(r) * (-2.0 * x / (q * q)) * (2.0 / (r_hi - r_lo));
  }
};

/// Catalog kernel K with a recorded dilation: evaluates K0(t / dilation).
///
/// size_const bounds |K(t)| |t|; smooth_const bounds
/// |K(t - s) - K(t)| t^2 / |s| over |t| > 2|s|.
struct KernelSpec {
  KernelTag tag = KernelTag::oscillating_log;
  Side side = Side::plus;
  std::vector<double> params;  // truncated-power: {r_lo, r_hi}
  double dilation = 1.0;
  double size_const = 1.0;
  double smooth_const = 1.0;

  /// sin(ln|t|)/t on the support half-line.
  static KernelSpec oscillating_log(Side side = Side::plus) {
    KernelSpec k;
    k.tag = KernelTag::oscillating_log;
    k.side = side;
    k.size_const = 1.0;
    // sup of |K(t-s)-K(t)| t^2/|s| over |t| > 2|s|; attained as s -> t/2,
    // where it equals 2 max_u |sin u - 2 sin(u - ln 2)|.
    k.smooth_const = 2.0 * std::sqrt(5.0 - 4.0 * std::cos(std::numbers::ln2));
    return k;
  }

  /// eta(|t|)/|t| with eta a smooth bump supported on (r_lo, r_hi), 0 < r_lo < r_hi.
  static KernelSpec truncated_power(double r_lo, double r_hi, Side side = Side::plus) {
    if (!(r_lo > 0.0 && r_lo < r_hi)) throw ConfigError("truncated-power: need 0 < r_lo < r_hi");
    KernelSpec k;
    k.tag = KernelTag::truncated_power;
    k.side = side;
    k.params = {r_lo, r_hi};
    k.size_const = 1.0;
    k.smooth_const = truncated_power_smooth_bound(BumpProfile{r_lo, r_hi});
    return k;
  }

  /// K_lambda(t) = K(t / lambda); both hypothesis constants scale by lambda.
  [[nodiscard]] KernelSpec dilated(double lambda) const {
    if (!(lambda > 0.0)) throw DomainError("kernel dilation must be positive");
    KernelSpec k = *this;
    k.dilation = dilation * lambda;
    k.size_const = size_const * lambda;
    k.smooth_const = smooth_const * lambda;
    return k;
  }

  [[nodiscard]] bool in_support(double t) const { return side == Side::plus ? t < 0.0 : t > 0.0; }

  /// Profile of the kernel on the support half-line, as a function of r = |t| > 0
  /// before the 1/t factor: value = sign(t) * profile(r) / r.
  [[nodiscard]] double profile(double r) const {
    if (tag == KernelTag::oscillating_log) return std::sin(std::log(r));
    return BumpProfile{params.at(0), params.at(1)}(r);
  }

  [[nodiscard]] double operator()(double t) const {
    const double s = t / dilation;
    if (!in_support(s)) return 0.0;
    const double r = std::abs(s);
    return profile(r) / s;
  }

  /// D = sup_r |r eta'(r) - eta(r)|, smooth bound 4 D with a 1% margin for the
  /// sampled supremum.
  static double truncated_power_smooth_bound(const BumpProfile& eta) {
    double d = 0.0;
    constexpr int kSamples = 20000;
    for (int i = 0; i <= kSamples; ++i) {
      const double r = eta.r_lo + (eta.r_hi - eta.r_lo) * i / kSamples;
      d = std::max(d, std::abs(r * eta.derivative(r) - eta(r)));
    }
    return 4.0 * d * 1.01;
  }
};

/// Result of sampling a kernel hypothesis: the largest observed ratio and how
/// many samples exceeded the tested constant.
struct HypothesisCheck {
  double max_ratio = 0.0;
  std::size_t violations = 0;
  std::size_t samples = 0;
  [[nodiscard]] bool pass() const { return violations == 0; }
};

namespace detail {

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
}

inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// |K(t)| <= C / |t| on random t in the support, |t| log-uniform in [1e-4, 1e4].
inline HypothesisCheck check_size_condition(const KernelSpec& k, double c, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  HypothesisCheck out;
  out.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = detail::log_uniform(rng, 1e-4, 1e4) * k.dilation;
    const double t = k.side == Side::plus ? -r : r;
    const double ratio = std::abs(k(t)) * r;
    out.max_ratio = std::max(out.max_ratio, ratio);
    if (ratio > c * (1.0 + 1e-12)) ++out.violations;
  }
  return out;
}

/// |K(t - s) - K(t)| <= C |s| / t^2 on random pairs with |t| > 2|s|:
/// |t| log-uniform in [1e-4, 1e4], s = rho |t| with rho uniform in (-1/2, 1/2).
inline HypothesisCheck check_smoothness_condition(const KernelSpec& k, double c, std::size_t samples,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  HypothesisCheck out;
  out.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const double r = detail::log_uniform(rng, 1e-4, 1e4) * k.dilation;
    const double t = k.side == Side::plus ? -r : r;
    double rho = detail::unit_uniform(rng) - 0.5;
    if (rho == -0.5) rho = 0.25;
    if (rho == 0.0) rho = 1e-3;
    const double s = rho * r;
    const double ratio = std::abs(k(t - s) - k(t)) * t * t / std::abs(s);
    out.max_ratio = std::max(out.max_ratio, ratio);
    if (ratio > c * (1.0 + 1e-12)) ++out.violations;
  }
  return out;
}

/// Largest |integral over eps < |t| < N of K| over the (eps, N) pairs, by a
/// fine trapezoid in the logarithmic variable t = +-e^u.
template <class Kernel>
double kernel_cancellation_sup(const Kernel& kernel, const std::vector<double>& eps_grid,
                               const std::vector<double>& n_grid, double du = 1e-3) {
  double best = 0.0;
  for (const double eps : eps_grid) {
    for (const double big_n : n_grid) {
      if (!(eps > 0.0 && eps < big_n)) throw DomainError("kernel_cancellation_sup: need 0 < eps < N");
      const double u0 = std::log(eps);
      const double u1 = std::log(big_n);
      const auto steps = static_cast<std::size_t>(std::ceil((u1 - u0) / du));
      const double step = (u1 - u0) / static_cast<double>(steps);
      auto integrand = [&](double u) {
        const double r = std::exp(u);
        return (kernel(r) + kernel(-r)) * r;
      };
      double acc = 0.0;
      for (std::size_t m = 0; m < steps; ++m) {
        const double ua = u0 + static_cast<double>(m) * step;
        const double ub = m + 1 == steps ? u1 : ua + step;
        acc += 0.5 * (integrand(ua) + integrand(ub)) * (ub - ua);
      }
      best = std::max(best, std::abs(acc));
    }
  }
  return best;
}

inline double kernel_cancellation_sup(const KernelSpec& kernel, const std::vector<double>& eps_grid,
                                      const std::vector<double>& n_grid) {
  return kernel_cancellation_sup([&kernel](double t) { return kernel(t); }, eps_grid, n_grid);
}

}  // namespace onesided
