#pragma once

// One-sided singular and oscillatory integral operators
//
//   T f(x) = lim_{eps -> 0} int_{x+eps}^{x_hi} e^{i P(x,y)} K(x - y) f(y) dy
//
// (mirrored for the minus side), realized by eps-truncation at a whole number
// of cells. On each cell the amplitude K(x - y) f(y) is taken linear between
// the nodes and the phase linear in y, and the cell integral is then done in
// closed form (Filon-trapezoid weights). With P == 0 the weights are exactly
// 1/2 and the rule is the composite trapezoid. Phases of degree >= 2 in y
// subdivide cells whose phase curvature over the cell exceeds pi/16.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "onesided/grid.hpp"
#include "onesided/kernel.hpp"
#include "onesided/phase.hpp"

namespace onesided {

/// eps = eps_cells * spacing; refine_checks eps-halvings (on refined grids)
/// are used to report how far the truncations are from settling.
struct PVConfig {
  std::size_t eps_cells = 1;
  std::size_t refine_checks = 0;
};

struct OperatorResult {
  SampledFunction values;
  /// Largest nodewise change across the eps-halvings; 0 when none requested.
  double pv_change = 0.0;
  /// False when the integration range misses the window for every node.
  bool in_window = true;
};

/// Weights (W0, W1) with int_0^1 e^{i theta u} ((1-u) g0 + u g1) du = W0 g0 + W1 g1.
inline std::pair<Complex, Complex> filon_weights(double theta) {
  if (std::abs(theta) < 0.5) {
    Complex w0{};
    Complex w1{};
    Complex term{1.0, 0.0};  // (i theta)^k / k!
    for (int k = 0; k < 24; ++k) {
      w0 += term / static_cast<double>((k + 1) * (k + 2));
      w1 += term / static_cast<double>(k + 2);
      term *= Complex(0.0, theta) / static_cast<double>(k + 1);
    }
    return {w0, w1};
  }
  const Complex e = std::polar(1.0, theta);
  const Complex i_theta(0.0, theta);
  const Complex w1 = e / i_theta + (e - 1.0) / (theta * theta);
  const Complex w0 = (e - 1.0) / i_theta - w1;
  return {w0, w1};
}

namespace detail {

struct CellRange {
  std::size_t lo;  // first node of the integration range
  std::size_t hi;  // last node (inclusive)
  bool empty;
};

/// Node range [i + start, i + end] (plus) or [i - end, i - start] (minus), clipped to the grid.
inline CellRange node_range(Side side, std::size_t i, std::size_t n, std::size_t start, std::size_t end) {
  if (side == Side::plus) {
    const std::size_t lo = i + start;
    if (lo >= n - 1 || end <= start) return {0, 0, true};
    const std::size_t hi = std::min(n - 1, i + std::min(end, n));
    return {lo, hi, hi <= lo};
  }
  if (start > i || end <= start) return {0, 0, true};
  const std::size_t hi = i - start;
  const std::size_t lo = end >= i ? 0 : i - end;
  return {lo, hi, hi <= lo};
}

inline std::vector<double> kernel_table(const KernelSpec& kernel, std::size_t n, double h) {
  std::vector<double> table(n, 0.0);
  const double sign = kernel.side == Side::plus ? -1.0 : 1.0;
  for (std::size_t d = 1; d < n; ++d) table[d] = kernel(sign * static_cast<double>(d) * h);
  return table;
}

/// Cell sums for every node over the node range [start, end] cells away.
inline std::vector<Complex> oscillatory_sum(const SampledFunction& f, const KernelSpec& kernel,
                                            const PolynomialPhase& phase, std::size_t start, std::size_t end,
                                            bool force_general = false) {
  const std::size_t n = f.size();
  const double h = f.spacing();
  const auto [first, last] = f.nonzero_range();
  std::vector<Complex> out(n);
  if (first >= n) return out;
  const auto table = kernel_table(kernel, n, h);
  const auto vals = f.values();
  const bool linear = phase.l() <= 1 && !force_general;
  const std::size_t cell_lo_mass = first == 0 ? 0 : first - 1;
  const std::size_t cell_hi_mass = last;  // cells j..j+1 with j <= last

  auto dist = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };

  for (std::size_t i = 0; i < n; ++i) {
    const CellRange r = node_range(kernel.side, i, n, start, end);
    if (r.empty) continue;
    const std::size_t j_lo = std::max(r.lo, cell_lo_mass);
    const std::size_t j_hi = std::min(r.hi - 1 + 1, cell_hi_mass + 1);  // exclusive
    if (j_lo >= j_hi) continue;
    const double x = f.node(i);
    double acc_re = 0.0;
    double acc_im = 0.0;

    if (linear) {
      const auto [a0, b0] = phase.linear_in_y(x);
      const double theta = b0 * h;
      const auto [w0, w1] = filon_weights(theta);
      const Complex rot = std::polar(1.0, theta);
      double z_re = 1.0;
      double z_im = 0.0;
      for (std::size_t j = j_lo; j < j_hi; ++j) {
        if ((j - j_lo) % 32 == 0) {
          const Complex z = std::polar(1.0, a0 + b0 * f.node(j));
          z_re = z.real();
          z_im = z.imag();
        }
        const double k0 = table[dist(i, j)];
        const double k1 = table[dist(i, j + 1)];
        const double g0_re = k0 * vals[j].real();
        const double g0_im = k0 * vals[j].imag();
        const double g1_re = k1 * vals[j + 1].real();
        const double g1_im = k1 * vals[j + 1].imag();
        const double c_re = w0.real() * g0_re - w0.imag() * g0_im + w1.real() * g1_re - w1.imag() * g1_im;
        const double c_im = w0.real() * g0_im + w0.imag() * g0_re + w1.real() * g1_im + w1.imag() * g1_re;
        acc_re += z_re * c_re - z_im * c_im;
        acc_im += z_re * c_im + z_im * c_re;
        const double nz_re = z_re * rot.real() - z_im * rot.imag();
        const double nz_im = z_re * rot.imag() + z_im * rot.real();
        z_re = nz_re;
        z_im = nz_im;
      }
      out[i] = Complex(acc_re, acc_im) * h;
      continue;
    }

    // General phase: secant-linearized phase per (sub)cell.
    Complex acc{};
    for (std::size_t j = j_lo; j < j_hi; ++j) {
      const double y0 = f.node(j);
      const double curvature = std::abs(phase.dyy(x, y0 + 0.5 * h)) * h * h / 8.0;
      const auto m = static_cast<std::size_t>(
          std::min(64.0, std::max(1.0, std::ceil(std::sqrt(curvature / (std::numbers::pi / 16.0))))));
      if (m == 1) {
        const double p0 = phase(x, y0);
        const double p1 = phase(x, f.node(j + 1));
        const auto [w0, w1] = filon_weights(p1 - p0);
        const Complex g0 = table[dist(i, j)] * vals[j];
        const Complex g1 = table[dist(i, j + 1)] * vals[j + 1];
        acc += std::polar(1.0, p0) * (w0 * g0 + w1 * g1);
        continue;
      }
      for (std::size_t q = 0; q < m; ++q) {
        const double ta = static_cast<double>(q) / static_cast<double>(m);
        const double tb = static_cast<double>(q + 1) / static_cast<double>(m);
        const double ya = y0 + ta * h;
        const double yb = q + 1 == m ? f.node(j + 1) : y0 + tb * h;
        const Complex fa = (1.0 - ta) * vals[j] + ta * vals[j + 1];
        const Complex fb = (1.0 - tb) * vals[j] + tb * vals[j + 1];
        const double ka = q == 0 ? table[dist(i, j)] : kernel(x - ya);
        const double kb = q + 1 == m ? table[dist(i, j + 1)] : kernel(x - yb);
        const double pa = phase(x, ya);
        const double pb = phase(x, yb);
        const auto [w0, w1] = filon_weights(pb - pa);
        acc += std::polar(1.0, pa) * (w0 * (ka * fa) + w1 * (kb * fb)) / static_cast<double>(m);
      }
    }
    out[i] = acc * h;
  }
  return out;
}

inline void check_pv(const PVConfig& pv, const SampledFunction& f) {
  if (pv.eps_cells < 1) throw ConfigError("pv: eps_cells must be >= 1");
  if (pv.eps_cells >= f.size() - 1) throw ConfigError("pv: truncation radius exceeds the window");
}

}  // namespace detail

/// Oscillatory sum over the node range [start, end] cells away from each node
/// (towards the kernel's integration side). end may exceed the window.
inline SampledFunction oscillatory_on_range(const SampledFunction& f, const KernelSpec& kernel,
                                            const PolynomialPhase& phase, std::size_t start, std::size_t end) {
  return SampledFunction(f.grid(), detail::oscillatory_sum(f, kernel, phase, start, end));
}

/// eps-truncated oscillatory integral with phase P; complex output.
inline OperatorResult oscillatory_one_sided(const SampledFunction& f, const KernelSpec& kernel,
                                            const PolynomialPhase& phase, const PVConfig& pv) {
  detail::check_pv(pv, f);
  const std::size_t n = f.size();
  OperatorResult res{oscillatory_on_range(f, kernel, phase, pv.eps_cells, n), 0.0, true};
  std::vector<Complex> previous(res.values.values().begin(), res.values.values().end());
  for (std::size_t k = 1; k <= pv.refine_checks; ++k) {
    const std::size_t factor = std::size_t{1} << k;
    const auto fine = resample(f, f.x_lo(), f.x_hi(), (n - 1) * factor + 1);
    const auto out = detail::oscillatory_sum(fine, kernel, phase, pv.eps_cells, fine.size());
    std::vector<Complex> coarse(n);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      coarse[i] = out[i * factor];
      change = std::max(change, std::abs(coarse[i] - previous[i]));
    }
    res.pv_change = std::max(res.pv_change, change);
    previous = std::move(coarse);
  }
  return res;
}

/// eps-truncated one-sided singular integral; the P == 0 case of the
/// oscillatory operator.
inline OperatorResult singular_one_sided(const SampledFunction& f, const KernelSpec& kernel, const PVConfig& pv) {
  return oscillatory_one_sided(f, kernel, PolynomialPhase{}, pv);
}

/// Cells from the base node to the dyadic boundary 2^m.
inline std::size_t dyadic_offset(int m, double spacing) {
  return static_cast<std::size_t>(std::llround(std::ldexp(1.0, m) / spacing));
}

/// Piece j of T f: range (x, x+1] for j = 0, (x + 2^{j-1}, x + 2^j] for j >= 1
/// (mirrored for the minus side). Consecutive pieces share their boundary
/// nodes, so the pieces tile the truncated range cell for cell.
inline OperatorResult dyadic_piece(const SampledFunction& f, const KernelSpec& kernel, const PolynomialPhase& phase,
                                   int j, const PVConfig& pv) {
  if (j < 0) throw DomainError("dyadic_piece: j must be >= 0");
  const double h = f.spacing();
  std::size_t start = 0;
  std::size_t end = 0;
  if (j == 0) {
    detail::check_pv(pv, f);
    start = pv.eps_cells;
    end = dyadic_offset(0, h);
  } else {
    start = dyadic_offset(j - 1, h);
    end = dyadic_offset(j, h);
  }
  OperatorResult res{SampledFunction::zeros(f.grid()), 0.0, true};
  if (start >= f.size() - 1) {
    res.in_window = false;
    return res;
  }
  res.values = oscillatory_on_range(f, kernel, phase, start, end);
  return res;
}

/// Largest nodewise gap between T f(x) and lambda^{-1} T_lambda(f(./lambda))(lambda x),
/// T_lambda using K(t/lambda) and the normalized phase Q. The dilated function
/// lives on the grid lambda * x_i, so both sides use the same cells.
inline double scaling_identity_check(const SampledFunction& f, const KernelSpec& kernel, const PolynomialPhase& phase,
                                     const PVConfig& pv) {
  const auto [lambda, q] = normalize_phase(phase);
  const PVConfig once{pv.eps_cells, 0};
  const auto direct = oscillatory_one_sided(f, kernel, phase, once).values;
  std::vector<Complex> v(f.values().begin(), f.values().end());
  const SampledFunction dilated(f.grid().scaled(lambda), std::move(v));
  const auto scaled = oscillatory_one_sided(dilated, kernel.dilated(lambda), q, once).values;
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(direct[i] - scaled[i] / lambda));
  return worst;
}

}  // namespace onesided
