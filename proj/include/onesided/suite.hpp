#pragma once

// Acceptance battery: one check per numbered criterion at the standard
// configuration, plus the campaign tables those checks are computed from.
// The battery only reads the standard config; CSV content depends on nothing
// else, so a rerun reproduces every table byte for byte.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "onesided/experiments.hpp"
#include "onesided/interpolate.hpp"
#include "onesided/json_io.hpp"
#include "onesided/kernel.hpp"
#include "onesided/maximal.hpp"
#include "onesided/oscillatory.hpp"
#include "onesided/weights.hpp"

namespace onesided {

struct StandardConfig {
  double x_lo = -8.0;
  double x_hi = 8.0;
  std::size_t n = 4096;
  double p = 2.0;
  std::uint64_t seed = 20240901;
  std::size_t count = 64;
  double support_lo = -2.0;
  double support_hi = 2.0;
  FamilyKind kind = FamilyKind::random_bump_sums;

  [[nodiscard]] Grid grid() const { return Grid(x_lo, x_hi, n); }
  [[nodiscard]] TestFunctionFamily family() const { return {kind, count, seed, support_lo, support_hi}; }
  [[nodiscard]] TripleSearchConfig search() const {
    TripleSearchConfig c;
    c.x_lo = x_lo;
    c.x_hi = x_hi;
    c.n_grid = n;
    c.h_max = std::min(c.h_max, 0.5 * (x_hi - x_lo));
    return c;
  }
};

inline Json to_json(const StandardConfig& s) {
  return Json{{"window", {s.x_lo, s.x_hi}}, {"n", s.n},          {"p", s.p},
              {"seed", s.seed},             {"count", s.count},  {"support", {s.support_lo, s.support_hi}},
              {"family", to_string(s.kind)}};
}

inline StandardConfig standard_from_json(const Json& j, const std::string& ptr) {
  using namespace json_detail;
  allow_keys(j, ptr, {"window", "n", "p", "seed", "count", "support", "family"});
  StandardConfig s;
  if (j.contains("window")) std::tie(s.x_lo, s.x_hi) = interval(j.at("window"), child(ptr, "window"));
  s.n = unsigned_or(j, ptr, "n", s.n);
  s.p = number_or(j, ptr, "p", s.p);
  s.seed = unsigned_or(j, ptr, "seed", s.seed);
  s.count = unsigned_or(j, ptr, "count", s.count);
  if (j.contains("support")) std::tie(s.support_lo, s.support_hi) = interval(j.at("support"), child(ptr, "support"));
  if (j.contains("family"))
    s.kind = at_path(child(ptr, "family"), [&] { return family_kind_from_string(text(j.at("family"), child(ptr, "family"))); });
  if (s.n < 16) throw SchemaError(child(ptr, "n"), "must be >= 16");
  if (!(s.p > 1.0)) throw SchemaError(child(ptr, "p"), "must be > 1");
  if (s.support_lo < s.x_lo || s.support_hi > s.x_hi) throw SchemaError(child(ptr, "support"), "must lie in the window");
  return s;
}

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;        // wall time, reported on stdout only
  double limit_seconds = 0.0;  // expected desk runtime
};

struct SuiteOutput {
  std::vector<CriterionResult> criteria;
  std::map<std::string, std::vector<CsvRow>> tables;  // file stem -> rows
};

namespace suite_detail {

inline bool close_rel(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

inline std::string num(double v) { return fmt_number(v); }

class Battery {
 public:
  explicit Battery(const StandardConfig& s) : s_(s) {}

  SuiteOutput run(const std::function<void(const CriterionResult&)>& progress) {
    using Fn = void (Battery::*)(CriterionResult&);
    const std::vector<std::tuple<int, const char*, double, Fn>> list = {
        {1, "unit-weight identities", 1, &Battery::c01},
        {2, "duality power law", 30, &Battery::c02},
        {3, "dilation invariance", 30, &Battery::c03},
        {4, "one-sided vs both-sided separation", 10, &Battery::c04},
        {5, "power-weight threshold", 60, &Battery::c05},
        {6, "maximal-operator closed form", 5, &Battery::c06},
        {7, "reverse Holder equivalence", 30, &Battery::c07},
        {8, "power bump", 60, &Battery::c08},
        {9, "interpolation on multipliers", 5, &Battery::c09},
        {10, "kernel hypotheses", 10, &Battery::c10},
        {11, "scaling identity", 30, &Battery::c11},
        {12, "dyadic structure", 30, &Battery::c12},
        {13, "dyadic decay", 120, &Battery::c13},
        {14, "coefficient independence", 300, &Battery::c14},
        {15, "boundedness signatures", 300, &Battery::c15},
    };
    for (const auto& [id, title, limit, fn] : list) {
      CriterionResult r{id, title, false, "", 0.0, limit};
      const auto t0 = std::chrono::steady_clock::now();
      try {
        (this->*fn)(r);
      } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (progress) progress(r);
      out_.criteria.push_back(r);
    }
    return out_;
  }

 private:
  StandardConfig s_;
  SuiteOutput out_;

  void row(const std::string& table, const std::string& op, const std::string& weight, double p,
           const std::string& param, double value, long long argmax, const Grid& g) {
    out_.tables[table].push_back({table, op, weight, p, param, value, argmax, g.x_lo, g.x_hi, g.n, s_.seed});
  }

  static long long node_of(const Grid& g, double x) { return std::isnan(x) ? -1 : static_cast<long long>(g.nearest(x)); }

  void constant_row(const std::string& table, const std::string& op, const WeightSpec& w, double p,
                    const std::string& param, const ConstantReport& r) {
    const Grid g = r.resolution.grid();
    row(table, op, w.label(), p, param + (param.empty() ? "" : ";") + "finite=" + (r.finite_flag ? "1" : "0"),
        r.uncapped, node_of(g, r.witness.a), g);
  }

  // 1 -----------------------------------------------------------------
  void c01(CriterionResult& r) {
    const auto cfg = s_.search();
    const auto one = WeightSpec::constant();
    const std::vector<std::pair<std::string, ConstantReport>> reps = {
        {"ap_plus", ap_plus_constant(one, s_.p, cfg)},
        {"ap_minus", ap_minus_constant(one, s_.p, cfg)},
        {"a1_plus", a1_constant(one, Side::plus, cfg)},
        {"a1_minus", a1_constant(one, Side::minus, cfg)},
        {"rh_infty", rh_infty_constant(one, cfg)},
        {"lemma26", lemma26_constant(one, s_.p, cfg)},
    };
    double worst = 0.0;
    for (const auto& [name, rep] : reps) {
      worst = std::max(worst, std::abs(rep.constant - 1.0));
      constant_row("c01_unit_weight", name, one, s_.p, "", rep);
    }
    r.pass = worst <= 1e-12;
    r.detail = "max |C-1| = " + num(worst) + " (tol 1e-12)";
  }

  // 2 -----------------------------------------------------------------
  void c02(CriterionResult& r) {
    const auto cfg = s_.search();
    const std::vector<WeightSpec> ws = {WeightSpec::exponential(1.0), WeightSpec::power(0.5),
                                        WeightSpec::powexp(0.3, 1.0)};
    double worst = 0.0;
    bool ok = true;
    for (const auto& w : ws) {
      for (const double p : {1.5, 2.0, 3.0}) {
        const ExponentPair ep(p);
        const auto plus = ap_general_constant(w, p, Side::plus, cfg);
        const auto dual = ap_general_constant(dual_weight(w, p), ep.conj(), Side::minus, cfg);
        const double lhs = std::pow(plus.uncapped, ep.conj() - 1.0);
        const double rhs = dual.uncapped;
        const bool same = close_rel(lhs, rhs, 1e-9);
        if (std::isfinite(lhs) && std::isfinite(rhs)) worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        ok = ok && same;
        constant_row("c02_duality", "general_plus", w, p, "", plus);
        constant_row("c02_duality", "general_minus_dual", dual_weight(w, p), ep.conj(), "", dual);
      }
    }
    r.pass = ok;
    r.detail = "max rel gap " + num(worst) + " over finite cases (tol 1e-9); infinite cases matched";
  }

  // 3 -----------------------------------------------------------------
  void c03(CriterionResult& r) {
    const auto cfg = s_.search();
    const std::vector<WeightSpec> ws = {WeightSpec::constant(),  WeightSpec::exponential(1.0),
                                        WeightSpec::exponential(-1.0), WeightSpec::power(0.5),
                                        WeightSpec::power(-0.5), WeightSpec::powexp(0.3, 1.0)};
    using Est = std::function<ConstantReport(const WeightSpec&, const TripleSearchConfig&)>;
    const double p = s_.p;
    const std::vector<std::pair<std::string, Est>> ests = {
        {"ap_plus", [p](const WeightSpec& w, const TripleSearchConfig& c) { return ap_plus_constant(w, p, c); }},
        {"ap_minus", [p](const WeightSpec& w, const TripleSearchConfig& c) { return ap_minus_constant(w, p, c); }},
        {"general_plus",
         [p](const WeightSpec& w, const TripleSearchConfig& c) { return ap_general_constant(w, p, Side::plus, c); }},
        {"lemma26", [p](const WeightSpec& w, const TripleSearchConfig& c) { return lemma26_constant(w, p, c); }},
    };
    double worst = 0.0;
    bool ok = true;
    for (const auto& w : ws) {
      for (const auto& [name, est] : ests) {
        const auto base = est(w, cfg);
        for (const double lambda : {2.0, 0.5, 4.0}) {
          const auto d = est(dilate(w, lambda), cfg.scaled(1.0 / lambda));
          ok = ok && close_rel(base.uncapped, d.uncapped, 1e-9);
          if (std::isfinite(base.uncapped)) worst = std::max(worst, std::abs(base.uncapped - d.uncapped) / base.uncapped);
          constant_row("c03_dilation", name, w, p, "lambda=" + num(lambda), d);
        }
        constant_row("c03_dilation", name, w, p, "lambda=1", base);
      }
    }
    r.pass = ok;
    r.detail = "max rel gap " + num(worst) + " (tol 1e-9)";
  }

  // 4 -----------------------------------------------------------------
  void c04(CriterionResult& r) {
    auto cfg = s_.search();
    const auto w = WeightSpec::exponential(1.0);
    const auto a1 = a1_constant(w, Side::plus, cfg);
    cfg.h_max = 0.5 * (cfg.x_hi - cfg.x_lo);
    cfg.ceiling = 1e3;
    const auto both = ap_both_constant(w, 2.0, cfg);
    constant_row("c04_separation", "a1_plus", w, 2.0, "", a1);
    constant_row("c04_separation", "ap_both", w, 2.0, "ceiling=1000", both);
    r.pass = a1.uncapped <= 1.0 + 1e-6 && !both.finite_flag && both.uncapped > 1e3;
    r.detail = "A1+ = " + num(a1.uncapped) + ", both-sided A2 = " + num(both.uncapped) + " (finite_flag " +
               (both.finite_flag ? "true" : "false") + ")";
  }

  // 5 -----------------------------------------------------------------
  void c05(CriterionResult& r) {
    const auto base = s_.search();
    const auto w = WeightSpec::power(0.5);
    std::vector<double> values;
    bool finite = true;
    for (const std::size_t f : {1, 2, 4}) {
      auto c = base;
      c.n_grid = base.n_grid * f;
      c.n_anchor = base.n_anchor * f;
      c.n_h = base.n_h * f;
      const auto rep = ap_plus_constant(w, 2.0, c);
      finite = finite && rep.finite_flag;
      values.push_back(rep.uncapped);
      constant_row("c05_power_threshold", "ap_plus", w, 2.0, "refine=" + std::to_string(f), rep);
    }
    const double d1 = std::abs(values[1] - values[0]) / values[0];
    const double d2 = std::abs(values[2] - values[1]) / values[1];
    const auto bad = ap_plus_constant(WeightSpec::power(1.5), 2.0, base);
    constant_row("c05_power_threshold", "ap_plus", WeightSpec::power(1.5), 2.0, "refine=1", bad);
    r.pass = finite && d1 <= 0.1 && d2 <= 0.1 && !bad.finite_flag;
    r.detail = "|x|^0.5: " + num(values[0]) + ", " + num(values[1]) + ", " + num(values[2]) + " (drifts " + num(d1) +
               ", " + num(d2) + "); |x|^1.5 finite_flag " + (bad.finite_flag ? "true" : "false");
  }

  // 6 -----------------------------------------------------------------
  void c06(CriterionResult& r) {
    const Grid g(-4.0, 4.0, 8001);
    const auto chi = SampledFunction::from(g, [](double x) { return x >= 0.0 && x < 1.0 ? 1.0 : 0.0; });
    const auto m = m_plus(chi);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
      const double x = g.node(i);
      const double oracle = x < 0.0 ? 1.0 / (1.0 - x) : (x < 1.0 ? 1.0 : 0.0);
      worst = std::max(worst, std::abs(m[i].real() - oracle));
    }
    row("c06_maximal", "m_plus", "indicator[0,1)", 1.0, "max_abs_error", worst, 0, g);
    r.pass = worst <= 2.0 * g.spacing();
    r.detail = "max nodewise error " + num(worst) + " vs 2*spacing = " + num(2.0 * g.spacing());
  }

  // 7 -----------------------------------------------------------------
  void c07(CriterionResult& r) {
    auto cfg = s_.search();
    cfg.ceiling = 1e3;
    const auto pw = WeightSpec::power(0.5);
    const Grid g = cfg.grid();
    const auto spikes = WeightSpec::sampled(SampledFunction::from(g, [&](double x) {
      const std::size_t i = g.nearest(x);
      return i % 256 == 128 ? 1.0 : 1e-6;
    }));
    bool all_finite = true;
    bool all_trip = true;
    std::string vals;
    for (int v = 1; v <= 5; ++v) {
      const auto a = rh_plus_constant(pw, 1.2, v, cfg);
      const auto b = rh_plus_constant(spikes, 3.0, v, cfg);
      all_finite = all_finite && a.finite_flag;
      all_trip = all_trip && !b.finite_flag;
      constant_row("c07_reverse_holder", "rh_plus_v" + std::to_string(v), pw, 1.2, "r=1.2", a);
      constant_row("c07_reverse_holder", "rh_plus_v" + std::to_string(v), spikes, 3.0, "r=3", b);
      vals += (v > 1 ? ", " : "") + num(a.uncapped) + "/" + num(b.uncapped);
    }
    r.pass = all_finite && all_trip;
    r.detail = "|x|^0.5 r=1.2 / spike train r=3 per variant: " + vals + " (ceiling 1e3)";
  }

  // 8 -----------------------------------------------------------------
  void c08(CriterionResult& r) {
    const auto cfg = s_.search();
    const std::vector<WeightSpec> ws = {WeightSpec::constant(),   WeightSpec::exponential(1.0),
                                        WeightSpec::exponential(2.0), WeightSpec::power(0.5),
                                        WeightSpec::power(-0.5),  WeightSpec::powexp(0.3, 1.0),
                                        WeightSpec::power(0.9)};
    bool ok = true;
    std::string eps;
    for (const auto& w : ws) {
      const auto b = power_bump_search(w, 2.0, cfg, 100.0);
      ok = ok && b.found && b.epsilon >= 1e-3;
      row("c08_power_bump", "power_bump", w.label(), 2.0, std::string("ceiling=100;found=") + (b.found ? "1" : "0"),
          b.epsilon, 0, cfg.grid());
      eps += (eps.empty() ? "" : ", ") + w.label() + ":" + num(b.epsilon);
    }
    auto fine = cfg;
    fine.n_grid *= 4;
    fine.n_anchor *= 4;
    fine.n_h *= 2;
    const auto b = power_bump_search(WeightSpec::power(0.9), 2.0, fine, 100.0);
    row("c08_power_bump", "power_bump", "|x|^0.9", 2.0, std::string("ceiling=100;fine;found=") + (b.found ? "1" : "0"),
        b.epsilon, 0, fine.grid());
    r.pass = ok && b.epsilon < 0.12;
    r.detail = "eps " + eps + "; fine |x|^0.9 eps = " + num(b.epsilon);
  }

  // 9 -----------------------------------------------------------------
  void c09(CriterionResult& r) {
    std::seed_seq seq{static_cast<std::uint32_t>(s_.seed), static_cast<std::uint32_t>(s_.seed >> 32), 9U};
    std::mt19937_64 rng(seq);
    auto u = [&rng](double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53); };
    const Grid g(-4.0, 4.0, 512);
    auto random_weight = [&] { return WeightSpec::powexp(u(-0.9, 2.0), u(-2.0, 2.0), u(0.5, 2.0)); };
    std::size_t passes = 0;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      std::vector<double> levels(8);
      for (auto& l : levels) l = u(0.0, 2.0);
      const auto gfun = SampledFunction::from(g, [&](double x) {
        const auto idx = std::min<std::size_t>(7, static_cast<std::size_t>((x + 4.0) / 1.0));
        return levels[idx];
      });
      InterpolationEndpoints e;
      e.p0 = u(1.1, 6.0);
      e.p1 = u(1.1, 6.0);
      e.u0 = random_weight();
      e.v0 = random_weight();
      e.u1 = random_weight();
      e.v1 = random_weight();
      e.theta = u(0.05, 0.95);
      const auto rep = verify_on_multiplier(gfun, e);
      passes += rep.pass ? 1 : 0;
      worst = std::max(worst, rep.exact_norm / rep.c_bound);
      row("c09_interpolation", "multiplier", "random", interpolate_weights(e).p,
          "instance=" + std::to_string(k) + ";c_bound=" + num(rep.c_bound), rep.exact_norm, 0, g);
    }
    r.pass = passes == 100;
    r.detail = std::to_string(passes) + "/100 pass; max exact_norm/c_bound = " + num(worst);
  }

  // 10 ----------------------------------------------------------------
  void c10(CriterionResult& r) {
    const auto k = KernelSpec::oscillating_log();
    const auto size = check_size_condition(k, 1.0, 10000, s_.seed);
    const auto smooth = check_smoothness_condition(k, 2.0, 10000, s_.seed + 1);
    // eps in [1e-4, 1], N in [1, 8]; the pair eps = N = 1 is empty and skipped.
    std::vector<double> eps;
    for (int i = 0; i < 8; ++i) eps.push_back(std::pow(10.0, -4.0 + 0.5 * i));
    const double sup = std::max(kernel_cancellation_sup(k, eps, {1.0, 2.0, 4.0, 8.0}),
                                kernel_cancellation_sup(k, {1.0}, {2.0, 4.0, 8.0}));
    const Grid g = s_.grid();
    row("c10_kernel", "size", "oscillating-log", 1.0, "C=1;violations=" + std::to_string(size.violations),
        size.max_ratio, 0, g);
    row("c10_kernel", "smoothness", "oscillating-log", 2.0, "C=2;violations=" + std::to_string(smooth.violations),
        smooth.max_ratio, 0, g);
    row("c10_kernel", "cancellation_sup", "oscillating-log", 0.0, "eps=1e-4..1;N=1..8", sup, 0, g);
    r.pass = size.pass() && smooth.pass() && sup <= 2.0 + 1e-3;
    r.detail = "size max " + num(size.max_ratio) + " (" + std::to_string(size.violations) + " > 1); smoothness max " +
               num(smooth.max_ratio) + " (" + std::to_string(smooth.violations) + " > 2); cancellation sup " + num(sup);
  }

  // 11 ----------------------------------------------------------------
  void c11(CriterionResult& r) {
    const Grid g = s_.grid();
    const auto f = generate_family(s_.family(), g).front();
    const auto k = KernelSpec::oscillating_log();
    const double a = scaling_identity_check(f, k, PolynomialPhase::monomial(4.0, 1, 1), {});
    const double b = scaling_identity_check(f, k, PolynomialPhase::monomial(8.0, 2, 1), {});
    row("c11_scaling", "scaling_identity", "none", 2.0, "P=4xy", a, 0, g);
    row("c11_scaling", "scaling_identity", "none", 2.0, "P=8x^2y", b, 0, g);
    r.pass = a <= 1e-6 && b <= 1e-6;
    r.detail = "4xy: " + num(a) + ", 8x^2y: " + num(b) + " (tol 1e-6)";
  }

  // 12 ----------------------------------------------------------------
  void c12(CriterionResult& r) {
    const Grid g = s_.grid();
    auto fam = s_.family();
    fam.count = 16;
    const auto members = generate_family(fam, g);
    const auto k = KernelSpec::oscillating_log();
    const auto phase = PolynomialPhase::monomial(1.0, 1, 1);
    const PVConfig pv{};
    double sum_err = 0.0;
    double worst_bound = 0.0;
    for (const auto& f : members) {
      std::vector<std::vector<Complex>> pieces;
      for (int j = 0; j <= 5; ++j) {
        const auto d = dyadic_piece(f, k, phase, j, pv).values;
        pieces.emplace_back(d.values().begin(), d.values().end());
      }
      for (int jj = 1; jj <= 5; ++jj) {
        const auto direct = oscillatory_on_range(f, k, phase, pv.eps_cells, dyadic_offset(jj, g.spacing()));
        for (std::size_t i = 0; i < g.n; ++i) {
          Complex s{};
          for (int j = 0; j <= jj; ++j) s += pieces[j][i];
          sum_err = std::max(sum_err, std::abs(s - direct[i]));
        }
      }
      const auto mf = m_plus(f);
      for (int j = 1; j <= 5; ++j) {
        for (std::size_t i = 0; i < g.n; ++i) {
          const double bound = 2.0 * k.size_const * mf[i].real();
          const double v = std::abs(pieces[j][i]);
          if (v > 0.0) worst_bound = std::max(worst_bound, bound > 0.0 ? v / bound : HUGE_VAL);
        }
      }
    }
    row("c12_dyadic", "summation_error", "none", 2.0, "J=1..5", sum_err, 0, g);
    row("c12_dyadic", "pointwise_bound_ratio", "none", 2.0, "j=1..5", worst_bound, 0, g);
    r.pass = sum_err <= 1e-12 && worst_bound <= 1.0 + 1e-12;
    r.detail = "summation max error " + num(sum_err) + "; max |T_j f| / (2 C M+f) = " + num(worst_bound);
  }

  // 13 ----------------------------------------------------------------
  void c13(CriterionResult& r) {
    const int j_max = 8;
    const double h = s_.grid().spacing();
    const double lo = s_.x_lo - std::ldexp(1.0, j_max);
    const auto cells = static_cast<std::size_t>(std::llround((s_.x_hi - lo) / h));
    const Grid g(s_.x_hi - static_cast<double>(cells) * h, s_.x_hi, cells + 1);
    const auto k = KernelSpec::oscillating_log();
    const auto phase = PolynomialPhase::monomial(1.0, 1, 1);
    const auto fam = s_.family();
    const auto plain = dyadic_decay(k, phase, s_.p, std::nullopt, fam, g, j_max);
    const auto weighted = dyadic_decay(k, phase, s_.p, WeightSpec::exponential(1.0), fam, g, j_max);
    auto emit = [&](const DecayFit& fit, const std::string& wname) {
      for (std::size_t i = 0; i < fit.j_values.size(); ++i)
        row("c13_decay", "dyadic_piece", wname, s_.p, "j=" + std::to_string(fit.j_values[i]),
            std::exp2(fit.log2_ratios[i]), 0, g);
      row("c13_decay", "decay_fit", wname, s_.p, "intercept=" + num(fit.intercept), fit.slope, 0, g);
    };
    emit(plain, "1");
    emit(weighted, "e^(1x)");
    r.pass = plain.slope <= -0.1 && weighted.slope < 0.0;
    r.detail = "unweighted slope " + num(plain.slope) + " (<= -0.1), weighted e^x slope " + num(weighted.slope) +
               " (< 0); window " + num(g.x_lo) + ":" + num(g.x_hi) + ", n " + std::to_string(g.n);
  }

  // 14 ----------------------------------------------------------------
  void c14(CriterionResult& r) {
    const Grid g = s_.grid();
    const std::vector<double> coeffs = {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
    bool ok = true;
    std::string spread;
    for (const auto& w : {WeightSpec::constant(), WeightSpec::exponential(1.0)}) {
      const auto reps = coefficient_sweep(KernelSpec::oscillating_log(), 1, 1, coeffs, w, s_.p, s_.family(), g);
      double lo = HUGE_VAL, hi = 0.0;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        lo = std::min(lo, reps[i].best_ratio);
        hi = std::max(hi, reps[i].best_ratio);
        row("c14_sweep", "oscillatory", w.label(), s_.p, "P=" + num(coeffs[i]) + "xy", reps[i].best_ratio,
            static_cast<long long>(reps[i].argmax_index), g);
      }
      ok = ok && hi / lo <= 20.0;
      spread += (spread.empty() ? "" : ", ") + w.label() + ": max/min " + num(hi / lo);
    }
    r.pass = ok;
    r.detail = spread + " (<= 20)";
  }

  // 15 ----------------------------------------------------------------
  void c15(CriterionResult& r) {
    const Grid g1 = s_.grid();
    const double h = g1.spacing();
    auto doubled = [&](double factor) {
      const double lo = s_.x_lo * factor;
      const double hi = s_.x_hi * factor;
      return Grid(lo, hi, static_cast<std::size_t>(std::llround((hi - lo) / h)) + 1);
    };
    const Grid g2 = doubled(2.0);
    const Grid g4 = doubled(4.0);
    const auto ex = WeightSpec::exponential(1.0);
    OperatorSpec mp{OperatorKind::m_plus, KernelSpec::oscillating_log(), {}, {}, 0};
    OperatorSpec tp{OperatorKind::oscillatory, KernelSpec::oscillating_log(), PolynomialPhase::monomial(1.0, 1, 1), {}, 0};
    const auto fam = s_.family();
    auto ratio = [&](const OperatorSpec& op, const WeightSpec& w, const TestFunctionFamily& f, const Grid& g,
                     const std::string& name) {
      const auto rep = norm_ratio(op, w, s_.p, f, g);
      row("c15_doubling", name, w.label(), s_.p,
          "support=" + num(f.support_lo) + ":" + num(f.support_hi), rep.best_ratio,
          static_cast<long long>(rep.argmax_index), g);
      return rep.best_ratio;
    };
    const double m1 = ratio(mp, ex, fam, g1, "m_plus");
    const double m2 = ratio(mp, ex, fam, g2, "m_plus");
    const double t1 = ratio(tp, ex, fam, g1, "oscillatory_xy");
    const double t2 = ratio(tp, ex, fam, g2, "oscillatory_xy");
    auto edge = [&](const Grid& g) {
      auto f = fam;
      f.support_lo = g.x_hi - 3.0;
      f.support_hi = g.x_hi - 1.0;
      return f;
    };
    const auto emx = WeightSpec::exponential(-1.0);
    const double c1 = ratio(mp, emx, edge(g1), g1, "m_plus");
    const double c2 = ratio(mp, emx, edge(g2), g2, "m_plus");
    const double c4 = ratio(mp, emx, edge(g4), g4, "m_plus");
    const double dm = std::abs(m2 - m1) / m1;
    const double dt = std::abs(t2 - t1) / t1;
    r.pass = dm <= 0.25 && dt <= 0.25 && c2 >= 2.0 * c1;
    r.detail = "(M+, e^x) drift " + num(dm) + "; (T+ xy, e^x) drift " + num(dt) + "; (M+, e^-x) " + num(c1) + " -> " +
               num(c2) + " -> " + num(c4);
  }
};

}  // namespace suite_detail

using SuiteProgress = std::function<void(const CriterionResult&)>;

inline SuiteOutput run_battery(const StandardConfig& s, const SuiteProgress& progress = {}) {
  return suite_detail::Battery(s).run(progress);
}

/// Writes <dir>/summary.csv and one CSV per campaign table; returns the files written.
inline std::vector<std::filesystem::path> write_suite(const SuiteOutput& out, const std::filesystem::path& dir,
                                                      const std::string& digest, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> files;
  std::ostringstream os;
  os << "# config_digest=" << digest << " seed=" << seed << "\n";
  os << "criterion,title,pass,detail\n";
  for (const auto& c : out.criteria)
    os << c.id << ',' << csv_field(c.title) << ',' << (c.pass ? "pass" : "fail") << ',' << csv_field(c.detail) << "\n";
  files.push_back(dir / "summary.csv");
  write_text(files.back(), os.str());
  for (const auto& [stem, rows] : out.tables) {
    files.push_back(dir / (stem + ".csv"));
    write_text(files.back(), render_csv(rows, digest, seed));
  }
  return files;
}

}  // namespace onesided
