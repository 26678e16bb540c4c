#pragma once

// Sup-search estimators for one-sided weight constants.
//
// Every estimator realizes the weight (and, where needed, its dual power) on
// the configuration's grid and maximizes a ratio of trapezoid integrals over a
// finite configuration set built from anchor nodes and log-spaced lengths.
// Minus-side estimators reverse the realized arrays and run the plus-side
// search, so plus-side results on w(-x) and minus-side results on w coincide
// bit for bit. Anchor sets and length lists are mirror-symmetric, which makes
// the enumerated configurations of both sides the same set.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "onesided/errors.hpp"
#include "onesided/grid.hpp"
#include "onesided/kernel.hpp"
#include "onesided/maximal.hpp"
#include "onesided/weight_spec.hpp"

namespace onesided {

struct TripleSearchConfig {
  double x_lo = -8.0;
  double x_hi = 8.0;
  std::size_t n_grid = 4096;
  std::size_t n_anchor = 256;
  std::size_t n_h = 32;
  double h_min = 0.01;
  double h_max = 4.0;
  double gamma = 0.25;
  double ceiling = 1e6;

  [[nodiscard]] Grid grid() const { return Grid(x_lo, x_hi, n_grid); }

  void validate() const {
    if (!(x_lo < x_hi)) throw ConfigError("search: window must satisfy x_lo < x_hi");
    if (n_grid < 3) throw ConfigError("search: n_grid must be >= 3");
    if (n_anchor < 1) throw ConfigError("search: n_anchor must be >= 1");
    if (n_h < 1) throw ConfigError("search: n_h must be >= 1");
    if (!(h_min > 0.0)) throw ConfigError("search: h_min must be positive");
    if (!(h_min < h_max)) throw ConfigError("search: h_min must be < h_max");
    if (2.0 * h_max > (x_hi - x_lo) * (1.0 + 1e-12)) throw ConfigError("search: window too small for h_max");
    if (!(ceiling > 0.0)) throw ConfigError("search: ceiling must be positive");
  }

  /// Window and lengths multiplied by f; counts unchanged.
  [[nodiscard]] TripleSearchConfig scaled(double f) const {
    TripleSearchConfig c = *this;
    c.x_lo = x_lo * f;
    c.x_hi = x_hi * f;
    c.h_min = h_min * f;
    c.h_max = h_max * f;
    return c;
  }

  /// Window reflected through the origin.
  [[nodiscard]] TripleSearchConfig mirrored() const {
    TripleSearchConfig c = *this;
    c.x_lo = -x_hi;
    c.x_hi = -x_lo;
    return c;
  }
};

/// Configuration attaining the reported constant. Unused coordinates are NaN;
/// h = 0 marks the pointwise (vanishing length) limit.
struct Witness {
  double a = std::numeric_limits<double>::quiet_NaN();
  double b = std::numeric_limits<double>::quiet_NaN();
  double c = std::numeric_limits<double>::quiet_NaN();
  double d = std::numeric_limits<double>::quiet_NaN();
  double h = std::numeric_limits<double>::quiet_NaN();
};

struct ConstantReport {
  /// Estimated sup, capped at the ceiling.
  double constant = 0.0;
  /// Same sup before capping (may be +inf).
  double uncapped = 0.0;
  Witness witness;
  TripleSearchConfig resolution;
  bool finite_flag = true;
};

namespace detail {

/// Node indices of the witness, mapped to coordinates at the end.
struct IndexWitness {
  std::ptrdiff_t a = -1, b = -1, c = -1, d = -1;
  std::size_t m = 0;  // length in cells; 0 = pointwise
};

struct SearchResult {
  double value = 0.0;
  IndexWitness at;
};

/// Uniform anchors, symmetrized: the set is closed under i -> n-1-i.
inline std::vector<std::size_t> anchor_indices(std::size_t n, std::size_t count) {
  std::vector<std::size_t> out;
  const std::size_t last = n - 1;
  if (count == 1) {
    out = {last / 2, last - last / 2};
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const auto i = static_cast<std::size_t>(
          std::llround(static_cast<double>(k) * static_cast<double>(last) / static_cast<double>(count - 1)));
      out.push_back(i);
      out.push_back(last - i);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Log-spaced lengths in [h_min, h_max] snapped to whole cells, ascending and distinct.
inline std::vector<std::size_t> length_cells(const TripleSearchConfig& cfg, double spacing) {
  std::vector<std::size_t> out;
  const std::size_t cap = std::max<std::size_t>(1, (cfg.n_grid - 1) / 2);
  for (std::size_t k = 0; k < cfg.n_h; ++k) {
    const double t = cfg.n_h == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(cfg.n_h - 1);
    const double h = cfg.h_min * std::pow(cfg.h_max / cfg.h_min, t);
    const auto m = static_cast<std::size_t>(std::max(1.0, static_cast<double>(std::llround(h / spacing))));
    out.push_back(std::min(m, cap));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline double power_pm1(double x, double p) { return p == 2.0 ? x : std::pow(x, p - 1.0); }

/// Keeps the largest value; strict comparison keeps the first maximizer in
/// enumeration order (anchors ascending, then lengths ascending).
inline void consider(SearchResult& best, double v, const IndexWitness& at) {
  if (std::isnan(v)) return;
  if (v > best.value) {
    best.value = v;
    best.at = at;
  }
}

inline std::vector<double> reversed(const std::vector<double>& v) { return {v.rbegin(), v.rend()}; }

/// Maps a witness found on reversed arrays back to original indices.
inline IndexWitness unreverse(IndexWitness w, std::size_t n) {
  auto flip = [n](std::ptrdiff_t i) { return i < 0 ? i : static_cast<std::ptrdiff_t>(n - 1) - i; };
  // The reversed configuration a < b < c (< d) becomes -d < -c < -b < -a.
  IndexWitness out = w;
  if (w.d >= 0) {
    out.a = flip(w.d);
    out.b = flip(w.c);
    out.c = flip(w.b);
    out.d = flip(w.a);
  } else if (w.c >= 0) {
    out.a = flip(w.c);
    out.b = flip(w.b);
    out.c = flip(w.a);
  } else {
    out.a = flip(w.a);
    out.b = flip(w.b);
  }
  return out;
}

inline ConstantReport make_report(const SearchResult& r, const Grid& g, const TripleSearchConfig& cfg) {
  ConstantReport rep;
  rep.uncapped = r.value;
  rep.finite_flag = std::isfinite(r.value) && r.value <= cfg.ceiling;
  rep.constant = rep.finite_flag ? r.value : cfg.ceiling;
  rep.resolution = cfg;
  auto coord = [&g](std::ptrdiff_t i) {
    return i < 0 ? std::numeric_limits<double>::quiet_NaN() : g.node(static_cast<std::size_t>(i));
  };
  rep.witness.a = coord(r.at.a);
  rep.witness.b = coord(r.at.b);
  rep.witness.c = coord(r.at.c);
  rep.witness.d = coord(r.at.d);
  rep.witness.h = static_cast<double>(r.at.m) * g.spacing();
  return rep;
}

/// Sawyer form at anchor a and length h: (1/h int_{a-h}^a w)(1/h int_a^{a+h} s)^{p-1}.
inline SearchResult sawyer_search(const std::vector<double>& w, const std::vector<double>& s, double p,
                                  const TripleSearchConfig& cfg, double spacing) {
  const std::size_t n = w.size();
  const IntervalIntegrals iw(w, spacing);
  const IntervalIntegrals is(s, spacing);
  SearchResult best{1.0, {}};  // vanishing-length limit
  const auto anchors = anchor_indices(n, cfg.n_anchor);
  const auto lengths = length_cells(cfg, spacing);
  best.at.a = static_cast<std::ptrdiff_t>(anchors.front());
  for (const std::size_t i : anchors) {
    for (const std::size_t m : lengths) {
      if (m > i || i + m > n - 1) continue;
      const double h = static_cast<double>(m) * spacing;
      const double v = (iw(i - m, i) / h) * power_pm1(is(i, i + m) / h, p);
      consider(best, v, {static_cast<std::ptrdiff_t>(i), -1, -1, -1, m});
    }
  }
  return best;
}

/// Three-point form over a = b - L, c = b + R with independent lengths L, R.
/// both = false: (c-a)^{-p} int_a^b w (int_b^c s)^{p-1};
/// both = true: classical A_p average over (a, c).
inline SearchResult triple_search(const std::vector<double>& w, const std::vector<double>& s, double p,
                                  const TripleSearchConfig& cfg, double spacing, bool both) {
  const std::size_t n = w.size();
  const IntervalIntegrals iw(w, spacing);
  const IntervalIntegrals is(s, spacing);
  SearchResult best{both ? 1.0 : 0.0, {}};
  const auto lengths = length_cells(cfg, spacing);
  for (const std::size_t b : anchor_indices(n, cfg.n_anchor)) {
    for (const std::size_t left : lengths) {
      if (left > b) break;
      for (const std::size_t right : lengths) {
        if (b + right > n - 1) break;
        const std::size_t a = b - left;
        const std::size_t c = b + right;
        const double len = static_cast<double>(left + right) * spacing;
        const double v = both ? (iw(a, c) / len) * power_pm1(is(a, c) / len, p)
                              : (iw(a, b) / len) * power_pm1(is(b, c) / len, p);
        consider(best, v,
                 {static_cast<std::ptrdiff_t>(a), static_cast<std::ptrdiff_t>(b), static_cast<std::ptrdiff_t>(c), -1,
                  left + right});
      }
    }
  }
  return best;
}

/// gamma form: a = centre - m, d = centre + m, b - a = d - c = round(2 m gamma) cells,
/// value (b-a)^{-p} int_a^b w (int_c^d s)^{p-1}.
inline SearchResult gamma_search(const std::vector<double>& w, const std::vector<double>& s, double p,
                                 const TripleSearchConfig& cfg, double spacing) {
  const std::size_t n = w.size();
  const IntervalIntegrals iw(w, spacing);
  const IntervalIntegrals is(s, spacing);
  SearchResult best{0.0, {}};
  const auto lengths = length_cells(cfg, spacing);
  for (const std::size_t mid : anchor_indices(n, cfg.n_anchor)) {
    for (const std::size_t m : lengths) {
      if (m > mid || mid + m > n - 1) continue;
      const auto g = static_cast<std::size_t>(std::llround(cfg.gamma * static_cast<double>(2 * m)));
      if (g < 1 || 2 * g >= 2 * m) continue;
      const std::size_t a = mid - m;
      const std::size_t d = mid + m;
      const std::size_t b = a + g;
      const std::size_t c = d - g;
      const double len = static_cast<double>(g) * spacing;
      const double v = (iw(a, b) / len) * power_pm1(is(c, d) / len, p);
      consider(best, v,
               {static_cast<std::ptrdiff_t>(a), static_cast<std::ptrdiff_t>(b), static_cast<std::ptrdiff_t>(c),
                static_cast<std::ptrdiff_t>(d), g});
    }
  }
  return best;
}

struct DualPair {
  Grid grid;
  std::vector<double> w;
  std::vector<double> sigma;
};

inline DualPair realize_pair(const WeightSpec& w, double p, const TripleSearchConfig& cfg) {
  const ExponentPair ep(p);
  const Grid g = cfg.grid();
  return {g, w.realize(g).values, w.pow(ep.dual_exponent()).realize(g).values};
}

}  // namespace detail

/// Sawyer A_p^+ constant, floored at its vanishing-length value 1.
inline ConstantReport ap_plus_constant(const WeightSpec& w, double p, const TripleSearchConfig& cfg) {
  cfg.validate();
  const auto pr = detail::realize_pair(w, p, cfg);
  return detail::make_report(detail::sawyer_search(pr.w, pr.sigma, p, cfg, pr.grid.spacing()), pr.grid, cfg);
}

/// Sawyer A_p^- constant: w averaged on (a, a+h), w^{1-p'} on (a-h, a).
inline ConstantReport ap_minus_constant(const WeightSpec& w, double p, const TripleSearchConfig& cfg) {
  cfg.validate();
  const auto pr = detail::realize_pair(w, p, cfg);
  auto r = detail::sawyer_search(detail::reversed(pr.w), detail::reversed(pr.sigma), p, cfg, pr.grid.spacing());
  r.at = detail::unreverse(r.at, pr.grid.n);
  return detail::make_report(r, pr.grid, cfg);
}

/// Three-point form sup_{a<b<c} (c-a)^{-p} int_a^b w (int_b^c w^{1-p'})^{p-1}
/// (plus); the minus side integrates w over (b, c) and w^{1-p'} over (a, b).
inline ConstantReport ap_general_constant(const WeightSpec& w, double p, Side side, const TripleSearchConfig& cfg) {
  cfg.validate();
  const auto pr = detail::realize_pair(w, p, cfg);
  const double h = pr.grid.spacing();
  if (side == Side::plus) return detail::make_report(detail::triple_search(pr.w, pr.sigma, p, cfg, h, false), pr.grid, cfg);
  auto r = detail::triple_search(detail::reversed(pr.w), detail::reversed(pr.sigma), p, cfg, h, false);
  r.at = detail::unreverse(r.at, pr.grid.n);
  return detail::make_report(r, pr.grid, cfg);
}

/// Classical (two-sided) A_p constant over the intervals (a, c) of the triple set.
inline ConstantReport ap_both_constant(const WeightSpec& w, double p, const TripleSearchConfig& cfg) {
  cfg.validate();
  const auto pr = detail::realize_pair(w, p, cfg);
  return detail::make_report(detail::triple_search(pr.w, pr.sigma, p, cfg, pr.grid.spacing(), true), pr.grid, cfg);
}

/// gamma-form constant with b - a = d - c = gamma (d - a), gamma in (0, 1/2).
inline ConstantReport lemma26_constant(const WeightSpec& w, double p, const TripleSearchConfig& cfg,
                                       Side side = Side::plus) {
  cfg.validate();
  if (!(cfg.gamma > 0.0 && cfg.gamma < 0.5)) throw ConfigError("gamma form: gamma must lie in (0, 1/2)");
  const auto pr = detail::realize_pair(w, p, cfg);
  const double h = pr.grid.spacing();
  if (side == Side::plus) return detail::make_report(detail::gamma_search(pr.w, pr.sigma, p, cfg, h), pr.grid, cfg);
  auto r = detail::gamma_search(detail::reversed(pr.w), detail::reversed(pr.sigma), p, cfg, h);
  r.at = detail::unreverse(r.at, pr.grid.n);
  return detail::make_report(r, pr.grid, cfg);
}

namespace detail {

/// sup_x num(x) / w(x) with the node as witness; the ratio is >= 1 by
/// construction of the extremal averages.
inline ConstantReport pointwise_ratio(const std::vector<double>& num, const std::vector<double>& den, const Grid& g,
                                      const TripleSearchConfig& cfg, bool invert) {
  SearchResult best{1.0, {0, -1, -1, -1, 0}};
  for (std::size_t i = 0; i < den.size(); ++i) {
    const double q = invert ? den[i] / num[i] : num[i] / den[i];
    consider(best, q, {static_cast<std::ptrdiff_t>(i), -1, -1, -1, 0});
  }
  return make_report(best, g, cfg);
}

inline std::vector<double> checked_positive(const RealizedWeight& r, const char* what) {
  for (const double v : r.values) {
    if (!(v > 0.0)) throw DomainError(std::string(what) + ": weight vanishes at a node");
  }
  return r.values;
}

}  // namespace detail

/// A_1^+ (side plus): sup M^- w / w; A_1^- (side minus): sup M^+ w / w.
inline ConstantReport a1_constant(const WeightSpec& w, Side side, const TripleSearchConfig& cfg) {
  cfg.validate();
  const Grid g = cfg.grid();
  const auto v = detail::checked_positive(w.realize(g), "a1_constant");
  for (const double x : v) {
    if (!std::isfinite(x)) return detail::make_report({std::numeric_limits<double>::infinity(), {}}, g, cfg);
  }
  const auto avg = side == Side::plus ? detail::backward_extremal_average(v, g.spacing(), detail::Extremum::max)
                                      : detail::forward_extremal_average(v, g.spacing(), detail::Extremum::max);
  return detail::pointwise_ratio(avg, v, g, cfg, false);
}

/// RH_infinity^+: sup w / m^+ w.
inline ConstantReport rh_infty_constant(const WeightSpec& w, const TripleSearchConfig& cfg) {
  cfg.validate();
  const Grid g = cfg.grid();
  const auto v = detail::checked_positive(w.realize(g), "rh_infty_constant");
  for (const double x : v) {
    if (!std::isfinite(x)) return detail::make_report({std::numeric_limits<double>::infinity(), {}}, g, cfg);
  }
  const auto mins = detail::forward_extremal_average(v, g.spacing(), detail::Extremum::min);
  for (const double m : mins) {
    if (!(m > 0.0)) throw DomainError("rh_infty_constant: minimal function vanishes at a node");
  }
  return detail::pointwise_ratio(mins, v, g, cfg, true);
}

namespace detail {

inline SearchResult rh_search(const std::vector<double>& w, const std::vector<double>& wr, double r, int variant,
                              const TripleSearchConfig& cfg, double spacing) {
  const std::size_t n = w.size();
  const IntervalIntegrals iw(w, spacing);
  const IntervalIntegrals iwr(wr, spacing);
  const auto lengths = length_cells(cfg, spacing);
  const std::size_t max_len = lengths.back();
  SearchResult best{0.0, {}};
  auto idx = [](std::size_t i) { return static_cast<std::ptrdiff_t>(i); };
  auto avg = [spacing](double integral, std::size_t cells) { return integral / (static_cast<double>(cells) * spacing); };

  for (const std::size_t b : anchor_indices(n, cfg.n_anchor)) {
    if (variant == 1) {
      // Backward averages ending at b over t = 1..max_len cells, running maxima, and w(b).
      std::vector<double> run_max(max_len + 1, w[b]);
      for (std::size_t t = 1; t <= std::min(max_len, b); ++t) {
        run_max[t] = std::max(run_max[t - 1], avg(iw(b - t, b), t));
      }
      for (const std::size_t m : lengths) {
        if (m > b) break;
        const double big_m = run_max[m];
        const double v = iwr(b - m, b) / (std::pow(big_m, r - 1.0) * iw(b - m, b));
        consider(best, v, {idx(b - m), idx(b), -1, -1, m});
      }
      continue;
    }
    for (const std::size_t m : lengths) {
      // Lengths in cells: (a, b) has L cells, comparison interval (c, d).
      std::size_t left = 0, c = 0, d = 0;
      switch (variant) {
        case 2: left = 2 * m; c = b; d = b + m; break;                    // b-a = 2(c-b)
        case 3: left = 2 * m; c = b + m; d = b + 2 * m; break;            // b-a = d-b = 2(d-c)
        case 4: left = m; c = b; d = b + m; break;                        // b-a = c-b
        case 5: {                                                         // b-a = d-c = gamma (d-a)
          left = m;
          const auto total = static_cast<std::size_t>(std::llround(static_cast<double>(m) / cfg.gamma));
          if (total < 2 * m) continue;
          d = b - m + total;
          c = d - m;
          break;
        }
        default: throw ConfigError("rh_plus_constant: variant must be 1..5");
      }
      if (left > b || d > n - 1) continue;
      const std::size_t a = b - left;
      const double lhs = avg(iwr(a, b), left);
      const double rhs = std::pow(avg(iw(c, d), d - c), r);
      const bool three_point = variant == 2 || variant == 4;
      consider(best, lhs / rhs, {idx(a), idx(b), three_point ? idx(d) : idx(c), three_point ? -1 : idx(d), m});
    }
  }
  return best;
}

}  // namespace detail

/// Smallest C in the selected reverse Holder form (variants 1..5) over the
/// sampled configurations, anchored at b with (a, b) of the listed lengths.
inline ConstantReport rh_plus_constant(const WeightSpec& w, double r, int variant, const TripleSearchConfig& cfg) {
  cfg.validate();
  if (!(r > 1.0) || !std::isfinite(r)) throw DomainError("rh_plus_constant: r must lie in (1, inf)");
  if (variant < 1 || variant > 5) throw ConfigError("rh_plus_constant: variant must be 1..5");
  if (variant == 5 && !(cfg.gamma > 0.0 && cfg.gamma <= 0.5))
    throw ConfigError("rh_plus_constant: gamma must lie in (0, 1/2]");
  const Grid g = cfg.grid();
  const auto wv = w.realize(g).values;
  const auto wr = w.pow(r).realize(g).values;
  return detail::make_report(detail::rh_search(wv, wr, r, variant, cfg, g.spacing()), g, cfg);
}

/// w^{1-p'}.
inline WeightSpec dual_weight(const WeightSpec& w, double p) { return w.pow(ExponentPair(p).dual_exponent()); }

/// w1 * w2^{1-p}.
inline WeightSpec factor_weight(const WeightSpec& w1, const WeightSpec& w2, double p) {
  const ExponentPair ep(p);
  return w1.times(w2.pow(1.0 - ep.p()));
}

/// x -> w(lambda x).
inline WeightSpec dilate(const WeightSpec& w, double lambda) { return w.dilated(lambda); }

struct BumpResult {
  double epsilon = 0.0;
  bool found = false;
};

/// Largest eps in (0, 1] (to 1e-3) with A_p^+(w^{1+eps}) <= ceiling.
inline BumpResult power_bump_search(const WeightSpec& w, double p, const TripleSearchConfig& cfg, double ceiling) {
  constexpr double kTol = 1e-3;
  TripleSearchConfig c = cfg;
  c.ceiling = ceiling;
  auto ok = [&](double eps) {
    const auto rep = ap_plus_constant(w.pow(1.0 + eps), p, c);
    return rep.finite_flag;
  };
  if (ok(1.0)) return {1.0, true};
  if (!ok(kTol)) return {0.0, false};
  double lo = kTol;
  double hi = 1.0;
  while (hi - lo > kTol) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return {lo, true};
}

}  // namespace onesided
