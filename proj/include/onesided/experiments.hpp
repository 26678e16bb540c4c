#pragma once

// Norm-ratio probes of the operators over seeded test-function families,
// coefficient sweeps, and dyadic decay fits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "onesided/errors.hpp"
#include "onesided/grid.hpp"
#include "onesided/kernel.hpp"
#include "onesided/maximal.hpp"
#include "onesided/oscillatory.hpp"
#include "onesided/phase.hpp"
#include "onesided/weight_spec.hpp"

namespace onesided {

enum class FamilyKind { random_bump_sums, modulated_gaussians, haar_like_steps };

inline const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::random_bump_sums: return "random-bump-sums";
    case FamilyKind::modulated_gaussians: return "modulated-gaussians";
    case FamilyKind::haar_like_steps: return "haar-like-steps";
  }
  return "?";
}

inline FamilyKind family_kind_from_string(const std::string& s) {
  if (s == "random-bump-sums") return FamilyKind::random_bump_sums;
  if (s == "modulated-gaussians") return FamilyKind::modulated_gaussians;
  if (s == "haar-like-steps") return FamilyKind::haar_like_steps;
  throw ConfigError("unknown family kind '" + s + "'");
}

struct TestFunctionFamily {
  FamilyKind kind = FamilyKind::random_bump_sums;
  std::size_t count = 64;
  std::uint64_t seed = 20240901;
  double support_lo = -2.0;
  double support_hi = 2.0;
};

namespace detail {

/// Member k draws from its own stream, so a family is a prefix of any larger
/// family with the same seed.
class MemberRng {
 public:
  MemberRng(std::uint64_t seed, std::size_t k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffU), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    eng_.seed(seq);
  }
  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(u01() * static_cast<double>(n)) % n; }

 private:
  std::mt19937_64 eng_;
};

inline bool inside(double x, double lo, double hi) { return x >= lo && x <= hi; }

inline SampledFunction bump_sum(MemberRng& rng, const Grid& g, double lo, double hi) {
  const double len = hi - lo;
  const std::size_t bumps = 1 + rng.below(8);
  struct Bump { double centre, half, amp; };
  std::vector<Bump> list;
  for (std::size_t b = 0; b < bumps; ++b) {
    const double half = std::min(0.5 * len, rng.uniform(2.0 * g.spacing(), 0.25 * len));
    const double centre = rng.uniform(lo + half, hi - half);
    const double amp = rng.uniform(-1.0, 1.0);
    list.push_back({centre, half, amp});
  }
  return SampledFunction::from(g, [&](double x) {
    if (!inside(x, lo, hi)) return 0.0;
    double s = 0.0;
    for (const auto& b : list) s += b.amp * std::max(0.0, 1.0 - std::abs(x - b.centre) / b.half);
    return s;
  });
}

inline SampledFunction modulated_gaussian(MemberRng& rng, const Grid& g, double lo, double hi) {
  const double len = hi - lo;
  const double sigma = rng.uniform(4.0 * g.spacing(), len / 6.0);
  const double centre = rng.uniform(lo + 0.25 * len, hi - 0.25 * len);
  const double omega = rng.uniform(0.0, std::numbers::pi / (4.0 * g.spacing()));
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    if (!inside(x, lo, hi)) continue;
    const double t = (x - centre) / sigma;
    v[i] = std::polar(std::exp(-0.5 * t * t), omega * x + phase);
  }
  return SampledFunction(g, std::move(v));
}

inline SampledFunction haar_steps(MemberRng& rng, const Grid& g, double lo, double hi) {
  const std::size_t pieces = std::size_t{1} << (1 + rng.below(6));
  std::vector<double> signs(pieces);
  for (auto& s : signs) s = rng.u01() < 0.5 ? -1.0 : 1.0;
  const double a = rng.uniform(lo, lo + 0.5 * (hi - lo));
  const double b = rng.uniform(a + 0.25 * (hi - a), hi);
  return SampledFunction::from(g, [&](double x) {
    if (!(x >= a && x < b)) return 0.0;
    const auto k = std::min(pieces - 1, static_cast<std::size_t>((x - a) / (b - a) * static_cast<double>(pieces)));
    return signs[k];
  });
}

}  // namespace detail

/// Deterministic family on the grid; every member vanishes outside the support.
inline std::vector<SampledFunction> generate_family(const TestFunctionFamily& fam, const Grid& g) {
  if (!(fam.support_lo < fam.support_hi)) throw ConfigError("family: support must satisfy lo < hi");
  if (fam.support_lo < g.x_lo || fam.support_hi > g.x_hi) throw ConfigError("family: support outside the window");
  std::vector<SampledFunction> out;
  out.reserve(fam.count);
  for (std::size_t k = 0; k < fam.count; ++k) {
    detail::MemberRng rng(fam.seed, k);
    switch (fam.kind) {
      case FamilyKind::random_bump_sums: out.push_back(detail::bump_sum(rng, g, fam.support_lo, fam.support_hi)); break;
      case FamilyKind::modulated_gaussians:
        out.push_back(detail::modulated_gaussian(rng, g, fam.support_lo, fam.support_hi));
        break;
      case FamilyKind::haar_like_steps: out.push_back(detail::haar_steps(rng, g, fam.support_lo, fam.support_hi)); break;
    }
  }
  return out;
}

enum class OperatorKind { identity, m_plus, m_minus, singular, oscillatory, dyadic };

inline const char* to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::identity: return "identity";
    case OperatorKind::m_plus: return "m_plus";
    case OperatorKind::m_minus: return "m_minus";
    case OperatorKind::singular: return "singular";
    case OperatorKind::oscillatory: return "oscillatory";
    case OperatorKind::dyadic: return "dyadic";
  }
  return "?";
}

inline OperatorKind operator_kind_from_string(const std::string& s) {
  for (auto k : {OperatorKind::identity, OperatorKind::m_plus, OperatorKind::m_minus, OperatorKind::singular,
                 OperatorKind::oscillatory, OperatorKind::dyadic}) {
    if (s == to_string(k)) return k;
  }
  throw ConfigError("unknown operator '" + s + "'");
}

struct OperatorSpec {
  OperatorKind kind = OperatorKind::identity;
  KernelSpec kernel = KernelSpec::oscillating_log();
  PolynomialPhase phase;
  PVConfig pv;
  int j = 0;  // dyadic piece index

  [[nodiscard]] SampledFunction apply(const SampledFunction& f) const {
    switch (kind) {
      case OperatorKind::identity: return f;
      case OperatorKind::m_plus: return m_plus(f);
      case OperatorKind::m_minus: return m_minus(f);
      case OperatorKind::singular: return singular_one_sided(f, kernel, pv).values;
      case OperatorKind::oscillatory: return oscillatory_one_sided(f, kernel, phase, pv).values;
      case OperatorKind::dyadic: return dyadic_piece(f, kernel, phase, j, pv).values;
    }
    return f;
  }
};

struct NormRatioReport {
  double best_ratio = 0.0;
  std::size_t argmax_index = 0;
  std::size_t skipped = 0;  // members with zero weighted norm
  TestFunctionFamily family;
  std::string config_digest;
};

/// Weight samples as a function on the grid; must be finite.
inline SampledFunction weight_function(const WeightSpec& w, const Grid& g) {
  const auto r = w.realize(g);
  std::vector<Complex> v(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    if (!std::isfinite(r.values[i])) throw DomainError("weight is not finite on the grid");
    v[i] = r.values[i];
  }
  return SampledFunction(g, std::move(v));
}

/// max over precomputed members of ||S f||_{L^p(w)} / ||f||_{L^p(w)}; first maximizer wins.
inline NormRatioReport norm_ratio(const OperatorSpec& op, const SampledFunction& weight, double p,
                                  const std::vector<SampledFunction>& members, const TestFunctionFamily& fam) {
  NormRatioReport rep;
  rep.family = fam;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const double den = lp_weighted_norm(members[k], weight, p);
    if (!(den > 0.0)) {
      ++rep.skipped;
      continue;
    }
    const double ratio = lp_weighted_norm(op.apply(members[k]), weight, p) / den;
    if (ratio > rep.best_ratio) {
      rep.best_ratio = ratio;
      rep.argmax_index = k;
    }
  }
  return rep;
}

inline NormRatioReport norm_ratio(const OperatorSpec& op, const WeightSpec& w, double p, const TestFunctionFamily& fam,
                                  const Grid& g) {
  return norm_ratio(op, weight_function(w, g), p, generate_family(fam, g), fam);
}

/// norm_ratio of T with phase a x^k y^l for each a, in order.
inline std::vector<NormRatioReport> coefficient_sweep(const KernelSpec& kernel, int k, int l,
                                                      const std::vector<double>& coeffs, const WeightSpec& w, double p,
                                                      const TestFunctionFamily& fam, const Grid& g,
                                                      const PVConfig& pv = {}) {
  const auto members = generate_family(fam, g);
  const auto weight = weight_function(w, g);
  std::vector<NormRatioReport> out;
  for (const double a : coeffs) {
    if (a == 0.0) throw DomainError("coefficient_sweep: coefficients must be nonzero");
    OperatorSpec op{OperatorKind::oscillatory, kernel, PolynomialPhase::monomial(a, k, l), pv, 0};
    out.push_back(norm_ratio(op, weight, p, members, fam));
  }
  return out;
}

struct DecayFit {
  std::vector<int> j_values;
  std::vector<double> log2_ratios;
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (j, y_j).
inline DecayFit fit_line(std::vector<int> js, std::vector<double> ys) {
  DecayFit fit{std::move(js), std::move(ys), 0.0, 0.0};
  const auto m = static_cast<double>(fit.j_values.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < fit.j_values.size(); ++i) {
    const double x = fit.j_values[i];
    sx += x;
    sy += fit.log2_ratios[i];
    sxx += x * x;
    sxy += x * fit.log2_ratios[i];
  }
  const double den = m * sxx - sx * sx;
  fit.slope = den == 0.0 ? 0.0 : (m * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

/// Fits log2 of the dyadic-piece norm ratios for j = 1..j_max. The window
/// must hold every shell reaching out of the support on the kernel's side.
inline DecayFit dyadic_decay(const KernelSpec& kernel, const PolynomialPhase& phase, double p,
                             const std::optional<WeightSpec>& w, const TestFunctionFamily& fam, const Grid& g,
                             int j_max, const PVConfig& pv = {}) {
  if (j_max < 3) throw ConfigError("dyadic_decay: j_max must be >= 3");
  const double reach = std::ldexp(1.0, j_max);
  const bool fits = kernel.side == Side::plus ? fam.support_lo - reach >= g.x_lo - 1e-9
                                              : fam.support_hi + reach <= g.x_hi + 1e-9;
  if (!fits) throw ConfigError("dyadic_decay: window too small for the outermost shell");
  const auto members = generate_family(fam, g);
  const auto weight = w ? weight_function(*w, g) : SampledFunction::constant(g, 1.0);
  std::vector<int> js;
  std::vector<double> ys;
  for (int j = 1; j <= j_max; ++j) {
    OperatorSpec op{OperatorKind::dyadic, kernel, phase, pv, j};
    const auto rep = norm_ratio(op, weight, p, members, fam);
    js.push_back(j);
    ys.push_back(std::log2(rep.best_ratio));
  }
  return fit_line(std::move(js), std::move(ys));
}

}  // namespace onesided
