#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "onesided/errors.hpp"

namespace onesided {

using Complex = std::complex<double>;

/// Uniform grid x_i = x_lo + i * spacing, i = 0..n-1, on the window [x_lo, x_hi].
struct Grid {
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::size_t n = 2;

  Grid() = default;
  Grid(double lo, double hi, std::size_t count) : x_lo(lo), x_hi(hi), n(count) {
    if (!(lo < hi)) throw DomainError("grid: x_lo must be < x_hi");
    if (count < 2) throw DomainError("grid: need at least two nodes");
  }

  [[nodiscard]] double spacing() const { return (x_hi - x_lo) / static_cast<double>(n - 1); }
  /// Left half of the nodes counts from x_lo, right half from x_hi, and an odd
  /// grid's middle node is the midpoint. The mirrored grid's nodes are then
  /// exactly the negated nodes in reverse order.
  [[nodiscard]] double node(std::size_t i) const {
    const std::size_t last = n - 1;
    if (2 * i < last) return x_lo + static_cast<double>(i) * spacing();
    if (2 * i > last) return x_hi - static_cast<double>(last - i) * spacing();
    return 0.5 * (x_lo + x_hi);
  }

  /// Index of the node nearest to x (clamped to the grid).
  [[nodiscard]] std::size_t nearest(double x) const {
    const double t = std::round((x - x_lo) / spacing());
    if (t <= 0.0) return 0;
    if (t >= static_cast<double>(n - 1)) return n - 1;
    return static_cast<std::size_t>(t);
  }

  /// Grid mirrored through the origin: nodes -x_i in increasing order.
  [[nodiscard]] Grid mirrored() const { return Grid(-x_hi, -x_lo, n); }

  /// Grid dilated by lambda: nodes lambda * x_i.
  [[nodiscard]] Grid scaled(double lambda) const { return Grid(lambda * x_lo, lambda * x_hi, n); }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.x_lo == b.x_lo && a.x_hi == b.x_hi && a.n == b.n;
  }
};

/// Complex-valued function sampled on a uniform grid. Real functions carry
/// zero imaginary parts.
class SampledFunction {
 public:
  SampledFunction() = default;

  SampledFunction(const Grid& grid, std::vector<Complex> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n) throw GridError("sampled function: value count does not match grid");
    for (const auto& v : values_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("sampled function: non-finite sample");
    }
  }

  /// Samples fn at every node.
  template <class Fn>
  static SampledFunction from(const Grid& grid, Fn&& fn) {
    std::vector<Complex> v(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) v[i] = Complex(fn(grid.node(i)));
    return SampledFunction(grid, std::move(v));
  }

  static SampledFunction zeros(const Grid& grid) { return SampledFunction(grid, std::vector<Complex>(grid.n)); }

  static SampledFunction constant(const Grid& grid, Complex c) {
    return SampledFunction(grid, std::vector<Complex>(grid.n, c));
  }

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] double x_lo() const { return grid_.x_lo; }
  [[nodiscard]] double x_hi() const { return grid_.x_hi; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double spacing() const { return grid_.spacing(); }
  [[nodiscard]] double node(std::size_t i) const { return grid_.node(i); }

  [[nodiscard]] std::span<const Complex> values() const { return values_; }
  [[nodiscard]] const Complex& operator[](std::size_t i) const { return values_[i]; }

  /// Sample moduli |f(x_i)|.
  [[nodiscard]] std::vector<double> moduli() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](const Complex& z) { return std::abs(z); });
    return out;
  }

  [[nodiscard]] std::vector<double> real_parts() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(), [](const Complex& z) { return z.real(); });
    return out;
  }

  /// Same samples in reverse order on the mirrored grid, i.e. x -> f(-x).
  [[nodiscard]] SampledFunction reflected() const {
    std::vector<Complex> v(values_.rbegin(), values_.rend());
    return SampledFunction(grid_.mirrored(), std::move(v));
  }

  /// Pointwise map of the samples.
  template <class Fn>
  [[nodiscard]] SampledFunction map(Fn&& fn) const {
    std::vector<Complex> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Complex(fn(values_[i]));
    return SampledFunction(grid_, std::move(v));
  }

  /// Indices of the first and last nonzero samples; {n, 0} when f == 0.
  [[nodiscard]] std::pair<std::size_t, std::size_t> nonzero_range() const {
    std::size_t first = values_.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] != Complex(0.0, 0.0)) {
        if (first == values_.size()) first = i;
        last = i;
      }
    }
    return {first, last};
  }

  friend SampledFunction operator+(const SampledFunction& a, const SampledFunction& b) {
    if (!(a.grid_ == b.grid_)) throw GridError("add: grid mismatch");
    std::vector<Complex> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
    return SampledFunction(a.grid_, std::move(v));
  }

  friend SampledFunction operator*(Complex c, const SampledFunction& a) {
    return a.map([c](const Complex& z) { return c * z; });
  }

 private:
  Grid grid_{};
  std::vector<Complex> values_{Complex{}, Complex{}};
};

/// Exponent p in (1, inf) together with its conjugate p' = p / (p - 1).
class ExponentPair {
 public:
  explicit ExponentPair(double p) : p_(p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("exponent: p must lie in (1, inf)");
    p_conj_ = p / (p - 1.0);
  }
  [[nodiscard]] double p() const { return p_; }
  [[nodiscard]] double conj() const { return p_conj_; }
  /// 1 - p', the exponent of the dual weight.
  [[nodiscard]] double dual_exponent() const { return 1.0 - p_conj_; }

 private:
  double p_;
  double p_conj_;
};

namespace detail {

inline void check_same_grid(const SampledFunction& a, const SampledFunction& b, const char* what) {
  if (!(a.grid() == b.grid())) throw GridError(std::string(what) + ": grid mismatch");
}

/// Composite trapezoid over nodes i0..i1 (inclusive), summed left to right.
template <class T>
T trapezoid(std::span<const T> v, std::size_t i0, std::size_t i1, double h) {
  T acc{};
  for (std::size_t k = i0; k < i1; ++k) acc += 0.5 * (v[k] + v[k + 1]);
  return acc * h;
}

}  // namespace detail

/// Composite trapezoid value of the integral of f over [a, b]; a and b snap to
/// the nearest nodes.
inline Complex integrate(const SampledFunction& f, double a, double b) {
  const double slack = 1e-9 * f.spacing();
  if (a < f.x_lo() - slack || b > f.x_hi() + slack) throw DomainError("integrate: endpoint outside window");
  if (a > b) throw DomainError("integrate: a > b");
  const Grid& g = f.grid();
  return detail::trapezoid<Complex>(f.values(), g.nearest(a), g.nearest(b), g.spacing());
}

/// (integral of |f|^p w)^(1/p) on the shared grid.
inline double lp_weighted_norm(const SampledFunction& f, const SampledFunction& w, double p) {
  detail::check_same_grid(f, w, "lp_weighted_norm");
  if (!(p >= 1.0)) throw DomainError("lp_weighted_norm: p must be >= 1");
  std::vector<double> integrand(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double wi = w[i].real();
    if (wi < 0.0) throw DomainError("lp_weighted_norm: negative weight sample");
    const double m = std::abs(f[i]);
    integrand[i] = (p == 2.0 ? m * m : std::pow(m, p)) * wi;
  }
  const double total = detail::trapezoid<double>(integrand, 0, f.size() - 1, f.spacing());
  return p == 2.0 ? std::sqrt(total) : std::pow(total, 1.0 / p);
}

/// Linear interpolation of f onto the grid [x_lo, x_hi] with n nodes.
inline SampledFunction resample(const SampledFunction& f, double x_lo, double x_hi, std::size_t n) {
  const double slack = 1e-9 * f.spacing();
  if (x_lo < f.x_lo() - slack || x_hi > f.x_hi() + slack) throw DomainError("resample: target window escapes source");
  const Grid target(x_lo, x_hi, n);
  if (target == f.grid()) return f;
  const double h = f.spacing();
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (target.node(i) - f.x_lo()) / h;
    double cell = std::floor(t);
    cell = std::clamp(cell, 0.0, static_cast<double>(f.size() - 2));
    const auto k = static_cast<std::size_t>(cell);
    const double frac = std::clamp(t - cell, 0.0, 1.0);
    v[i] = (1.0 - frac) * f[k] + frac * f[k + 1];
  }
  return SampledFunction(target, std::move(v));
}

inline SampledFunction resample(const SampledFunction& f, const Grid& target) {
  return resample(f, target.x_lo, target.x_hi, target.n);
}

/// O(1) trapezoid integrals between arbitrary node pairs of a nonnegative
/// sample array, with +inf samples tracked separately so that any interval
/// touching one integrates to +inf.
///
/// Both prefix and suffix sums are kept. An interval is taken as the
/// difference of whichever running total is smaller at its far end, so a
/// short interval where the weight is tiny (e^{-2x} near the right edge) is
/// not swamped by mass elsewhere. Reversing the samples swaps the two sums.
class IntervalIntegrals {
 public:
  IntervalIntegrals(std::span<const double> v, double spacing)
      : h_(spacing), prefix_(v.size()), suffix_(v.size()), inf_cells_(v.size()) {
    const std::size_t n = v.size();
    std::vector<long double> cell(n > 0 ? n - 1 : 0);
    std::size_t bad = 0;
    if (n > 0) inf_cells_[0] = 0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const bool finite = std::isfinite(v[k]) && std::isfinite(v[k + 1]);
      cell[k] = finite ? 0.5L * (static_cast<long double>(v[k]) + static_cast<long double>(v[k + 1])) : 0.0L;
      bad += finite ? 0 : 1;
      inf_cells_[k + 1] = bad;
    }
    long double acc = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
      prefix_[k] = acc;
      if (k + 1 < n) acc += cell[k];
    }
    acc = 0.0L;
    for (std::size_t k = n; k-- > 0;) {
      suffix_[k] = acc;
      if (k > 0) acc += cell[k - 1];
    }
  }

  /// Integral between nodes i <= j.
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    if (inf_cells_[j] != inf_cells_[i]) return std::numeric_limits<double>::infinity();
    const long double fwd = prefix_[j] - prefix_[i];
    const long double bwd = suffix_[i] - suffix_[j];
    long double d;
    if (prefix_[j] < suffix_[i]) {
      d = fwd;
    } else if (suffix_[i] < prefix_[j]) {
      d = bwd;
    } else {
      d = 0.5L * (fwd + bwd);
    }
    return static_cast<double>(d * static_cast<long double>(h_));
  }

  [[nodiscard]] double spacing() const { return h_; }

 private:
  double h_;
  std::vector<long double> prefix_;
  std::vector<long double> suffix_;
  std::vector<std::size_t> inf_cells_;
};

}  // namespace onesided
