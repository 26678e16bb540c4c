#pragma once

// Config-driven command line front end. Each subcommand reads one flat JSON
// object, applies the --seed/--window/--n overrides to it, validates it
// completely, and only then computes. Artifacts are <out>.csv and <out>.json;
// `suite run` treats --out as a directory.
//
// Exit status: 0 ok, 1 acceptance criteria failed (suite only),
// 2 validation failure, 3 divergence flags present (artifacts still written).

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "onesided/experiments.hpp"
#include "onesided/interpolate.hpp"
#include "onesided/json_io.hpp"
#include "onesided/suite.hpp"
#include "onesided/weights.hpp"

namespace onesided::cli {

enum ExitCode : int { ok = 0, criteria_failed = 1, invalid = 2, divergent = 3 };

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::pair<double, double>> window;
  std::optional<std::size_t> n;
};

/// Outcome of a subcommand before anything is written.
struct Artifacts {
  std::vector<CsvRow> rows;
  Json results = Json::array();
  bool divergent = false;
};

inline constexpr std::uint64_t default_seed = 20240901;

namespace detail {

using namespace json_detail;

inline Json read_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("", "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

/// Writes the overrides into the config so the digest covers what actually ran.
inline void apply_overrides(Json& j, const Overrides& o, const char* grid_key, const char* n_key) {
  if (!j.is_object()) throw SchemaError("", "expected a JSON object");
  if (o.seed) {
    j["seed"] = *o.seed;
    if (j.contains("family") && j["family"].is_object()) j["family"]["seed"] = *o.seed;
  }
  if ((o.window || o.n) && grid_key != nullptr) {
    Json& g = j[grid_key];
    if (g.is_null()) g = Json::object();
    if (!g.is_object()) throw SchemaError(std::string("/") + grid_key, "expected an object");
    if (o.window) g["window"] = {o.window->first, o.window->second};
    if (o.n) g[n_key] = *o.n;
  }
}

inline std::uint64_t seed_of(const Json& j) { return unsigned_or(j, "", "seed", default_seed); }

/// Family with its seed defaulting to the top-level seed.
inline TestFunctionFamily family_of(const Json& j, std::uint64_t seed) {
  Json f = j.contains("family") ? j.at("family") : Json::object();
  object(f, "/family");
  if (!f.contains("seed")) f["seed"] = seed;
  return family_from_json(f, "/family");
}

inline WeightSpec weight_of(const Json& j, const char* key = "weight") {
  return weight_from_json(need(j, "", key), std::string("/") + key);
}

inline TripleSearchConfig search_of(const Json& j) {
  return j.contains("search") ? search_from_json(j.at("search"), "/search") : TripleSearchConfig{};
}

inline double p_of(const Json& j, double dflt = 2.0) {
  const double p = number_or(j, "", "p", dflt);
  if (!(p > 1.0) || !std::isfinite(p)) throw SchemaError("/p", "must be a finite number > 1");
  return p;
}

inline std::string search_param(const TripleSearchConfig& c) {
  return "n_anchor=" + std::to_string(c.n_anchor) + ";n_h=" + std::to_string(c.n_h);
}

// ------------------------------------------------------------ weights estimate

inline const std::vector<std::string>& estimator_names() {
  static const std::vector<std::string> names = {"ap_plus",   "ap_minus",  "ap_both",   "general_plus", "general_minus",
                                                 "lemma26",   "a1_plus",   "a1_minus",  "rh_infty",     "rh_plus_v1",
                                                 "rh_plus_v2", "rh_plus_v3", "rh_plus_v4", "rh_plus_v5"};
  return names;
}

inline std::function<Artifacts()> weights_estimate(const Json& j) {
  allow_keys(j, "", {"weight", "p", "r", "estimators", "search", "seed"});
  const auto w = weight_of(j);
  const double p = p_of(j);
  const double r = number_or(j, "", "r", 1.2);
  if (!(r > 1.0)) throw SchemaError("/r", "must be > 1");
  const auto cfg = search_of(j);
  std::vector<std::string> names = {"ap_plus"};
  if (j.contains("estimators")) {
    const Json& e = j.at("estimators");
    if (!e.is_array() || e.empty()) throw SchemaError("/estimators", "expected a non-empty array of names");
    names.clear();
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto name = text(e[i], child("/estimators", i));
      const auto& all = estimator_names();
      if (std::find(all.begin(), all.end(), name) == all.end())
        throw SchemaError(child("/estimators", i), "unknown estimator '" + name + "'");
      names.push_back(name);
    }
  }
  return [=] {
    Artifacts a;
    for (const auto& name : names) {
      ConstantReport rep;
      double exponent = p;
      if (name == "ap_plus") rep = ap_plus_constant(w, p, cfg);
      else if (name == "ap_minus") rep = ap_minus_constant(w, p, cfg);
      else if (name == "ap_both") rep = ap_both_constant(w, p, cfg);
      else if (name == "general_plus") rep = ap_general_constant(w, p, Side::plus, cfg);
      else if (name == "general_minus") rep = ap_general_constant(w, p, Side::minus, cfg);
      else if (name == "lemma26") rep = lemma26_constant(w, p, cfg);
      else if (name == "a1_plus") rep = a1_constant(w, Side::plus, cfg), exponent = 1.0;
      else if (name == "a1_minus") rep = a1_constant(w, Side::minus, cfg), exponent = 1.0;
      else if (name == "rh_infty") rep = rh_infty_constant(w, cfg), exponent = HUGE_VAL;
      else rep = rh_plus_constant(w, r, name.back() - '0', cfg), exponent = r;
      const Grid g = cfg.grid();
      const long long arg = std::isnan(rep.witness.a) ? -1 : static_cast<long long>(g.nearest(rep.witness.a));
      a.rows.push_back({"weights_estimate", name, w.label(), exponent,
                        search_param(cfg) + ";finite=" + (rep.finite_flag ? "1" : "0"), rep.constant, arg, g.x_lo,
                        g.x_hi, g.n, 0});
      Json entry = to_json(rep);
      entry["estimator"] = name;
      a.results.push_back(entry);
      a.divergent = a.divergent || !rep.finite_flag;
    }
    return a;
  };
}

// ---------------------------------------------------------------- weights bump

inline std::function<Artifacts()> weights_bump(const Json& j) {
  allow_keys(j, "", {"weight", "p", "ceiling", "search", "seed"});
  const auto w = weight_of(j);
  const double p = p_of(j);
  const double ceiling = number_or(j, "", "ceiling", 100.0);
  if (!(ceiling > 1.0)) throw SchemaError("/ceiling", "must be > 1");
  const auto cfg = search_of(j);
  return [=] {
    const auto b = power_bump_search(w, p, cfg, ceiling);
    const Grid g = cfg.grid();
    Artifacts a;
    a.rows.push_back({"weights_bump", "power_bump", w.label(), p,
                      "ceiling=" + fmt_number(ceiling) + ";found=" + (b.found ? "1" : "0"), b.epsilon, 0, g.x_lo,
                      g.x_hi, g.n, 0});
    a.results.push_back({{"epsilon", b.epsilon}, {"found", b.found}, {"ceiling", ceiling}, {"search", to_json(cfg)}});
    a.divergent = !b.found;
    return a;
  };
}

// ------------------------------------------------------------- operators apply

inline OperatorSpec operator_of(const Json& j, const std::string& ptr) {
  allow_keys(j, ptr, {"kind", "kernel", "phase", "pv", "j"});
  OperatorSpec op;
  op.kind = at_path(child(ptr, "kind"),
                    [&] { return operator_kind_from_string(text(need(j, ptr, "kind"), child(ptr, "kind"))); });
  if (j.contains("kernel")) op.kernel = kernel_from_json(j.at("kernel"), child(ptr, "kernel"));
  if (j.contains("phase")) op.phase = phase_from_json(j.at("phase"), child(ptr, "phase"));
  if (j.contains("pv")) op.pv = pv_from_json(j.at("pv"), child(ptr, "pv"));
  op.j = static_cast<int>(unsigned_or(j, ptr, "j", 0));
  return op;
}

inline Grid grid_of(const Json& j) { return grid_from_json(need(j, "", "grid"), "/grid"); }

inline std::function<Artifacts()> operators_apply(const Json& j) {
  allow_keys(j, "", {"operator", "weight", "p", "family", "grid", "seed"});
  const auto op = operator_of(need(j, "", "operator"), "/operator");
  const auto w = weight_of(j);
  const double p = p_of(j);
  const auto fam = family_of(j, seed_of(j));
  const auto g = grid_of(j);
  if (fam.support_lo < g.x_lo || fam.support_hi > g.x_hi) throw SchemaError("/family/support", "must lie in the grid window");
  const std::string digest = config_digest(j);
  return [=] {
    auto rep = norm_ratio(op, w, p, fam, g);
    rep.config_digest = digest;
    Artifacts a;
    a.rows.push_back({"operators_apply", to_string(op.kind), w.label(), p, "j=" + std::to_string(op.j), rep.best_ratio,
                      static_cast<long long>(rep.argmax_index), g.x_lo, g.x_hi, g.n, fam.seed});
    a.results.push_back(to_json(rep));
    a.divergent = !std::isfinite(rep.best_ratio);
    return a;
  };
}

// -------------------------------------------------------- operators cancel-sup

inline std::function<Artifacts()> operators_cancel_sup(const Json& j) {
  allow_keys(j, "", {"kernel", "eps", "N", "seed"});
  const auto k = j.contains("kernel") ? kernel_from_json(j.at("kernel"), "/kernel") : KernelSpec::oscillating_log();
  const auto eps = numbers(need(j, "", "eps"), "/eps");
  const auto big = numbers(need(j, "", "N"), "/N");
  for (std::size_t a = 0; a < eps.size(); ++a)
    for (std::size_t b = 0; b < big.size(); ++b)
      if (!(eps[a] > 0.0 && eps[a] < big[b])) throw SchemaError(child("/eps", a), "need 0 < eps < N for every N");
  return [=] {
    const double sup = kernel_cancellation_sup(k, eps, big);
    Artifacts a;
    a.rows.push_back({"operators_cancel_sup", "cancellation_sup", to_string(k.tag), 0.0,
                      "pairs=" + std::to_string(eps.size() * big.size()), sup, 0, 0.0, 0.0, 0, 0});
    a.results.push_back({{"sup", sup}, {"kernel", to_json(k)}});
    a.divergent = !std::isfinite(sup);
    return a;
  };
}

// --------------------------------------------------------------- interp verify

inline std::function<Artifacts()> interp_verify(const Json& j) {
  allow_keys(j, "", {"endpoints", "multiplier", "grid", "seed"});
  const Json& e = need(j, "", "endpoints");
  allow_keys(e, "/endpoints", {"p0", "p1", "u0", "v0", "u1", "v1", "theta"});
  InterpolationEndpoints ep;
  ep.p0 = number(need(e, "/endpoints", "p0"), "/endpoints/p0");
  ep.p1 = number(need(e, "/endpoints", "p1"), "/endpoints/p1");
  ep.u0 = weight_from_json(need(e, "/endpoints", "u0"), "/endpoints/u0");
  ep.v0 = weight_from_json(need(e, "/endpoints", "v0"), "/endpoints/v0");
  ep.u1 = weight_from_json(need(e, "/endpoints", "u1"), "/endpoints/u1");
  ep.v1 = weight_from_json(need(e, "/endpoints", "v1"), "/endpoints/v1");
  ep.theta = number(need(e, "/endpoints", "theta"), "/endpoints/theta");
  at_path("/endpoints", [&] {
    ep.validate();
    return 0;
  });
  const auto g = grid_of(j);
  const auto levels = numbers(need(j, "", "multiplier"), "/multiplier");
  if (levels.empty()) throw SchemaError("/multiplier", "expected piecewise-constant levels");
  return [=] {
    // Levels are spread over equal pieces of the window.
    const auto m = SampledFunction::from(g, [&](double x) {
      const double t = (x - g.x_lo) / (g.x_hi - g.x_lo);
      const auto idx = std::min(levels.size() - 1, static_cast<std::size_t>(t * static_cast<double>(levels.size())));
      return levels[idx];
    });
    const auto rep = verify_on_multiplier(m, ep);
    const auto iw = interpolate_weights(ep);
    Artifacts a;
    a.rows.push_back({"interp_verify", "multiplier", iw.u.label(), iw.p,
                      "c_bound=" + fmt_number(rep.c_bound) + ";pass=" + (rep.pass ? "1" : "0"), rep.exact_norm, 0,
                      g.x_lo, g.x_hi, g.n, 0});
    a.results.push_back(to_json(rep));
    a.divergent = !std::isfinite(rep.exact_norm);
    return a;
  };
}

// ---------------------------------------------------------------- sweep coeffs

inline std::function<Artifacts()> sweep_coeffs(const Json& j) {
  allow_keys(j, "", {"kernel", "k", "l", "coeffs", "weight", "p", "family", "grid", "pv", "seed"});
  const auto kernel = j.contains("kernel") ? kernel_from_json(j.at("kernel"), "/kernel") : KernelSpec::oscillating_log();
  const int k = static_cast<int>(unsigned_or(j, "", "k", 1));
  const int l = static_cast<int>(unsigned_or(j, "", "l", 1));
  if (l < 1) throw SchemaError("/l", "the phase must depend on y");
  const auto coeffs = numbers(need(j, "", "coeffs"), "/coeffs");
  const auto w = j.contains("weight") ? weight_of(j) : WeightSpec::constant();
  const double p = p_of(j);
  const auto fam = family_of(j, seed_of(j));
  const auto g = grid_of(j);
  const PVConfig pv = j.contains("pv") ? pv_from_json(j.at("pv"), "/pv") : PVConfig{};
  if (fam.support_lo < g.x_lo || fam.support_hi > g.x_hi) throw SchemaError("/family/support", "must lie in the grid window");
  const std::string digest = config_digest(j);
  return [=] {
    auto reps = coefficient_sweep(kernel, k, l, coeffs, w, p, fam, g, pv);
    for (auto& r : reps) r.config_digest = digest;
    Artifacts a;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      a.rows.push_back({"sweep_coeffs", "oscillatory", w.label(), p,
                        "P=" + fmt_number(coeffs[i]) + "*x^" + std::to_string(k) + "*y^" + std::to_string(l),
                        reps[i].best_ratio, static_cast<long long>(reps[i].argmax_index), g.x_lo, g.x_hi, g.n,
                        fam.seed});
      Json r = to_json(reps[i]);
      r["coeff"] = coeffs[i];
      a.results.push_back(r);
      a.divergent = a.divergent || !std::isfinite(reps[i].best_ratio);
    }
    return a;
  };
}

// ------------------------------------------------------------------- decay fit

inline std::function<Artifacts()> decay_fit(const Json& j) {
  allow_keys(j, "", {"kernel", "phase", "p", "weight", "family", "grid", "j_max", "pv", "seed"});
  const auto kernel = j.contains("kernel") ? kernel_from_json(j.at("kernel"), "/kernel") : KernelSpec::oscillating_log();
  const auto phase = j.contains("phase") ? phase_from_json(j.at("phase"), "/phase") : PolynomialPhase::monomial(1.0, 1, 1);
  const double p = p_of(j);
  const std::optional<WeightSpec> w = j.contains("weight") ? std::optional(weight_of(j)) : std::nullopt;
  const auto fam = family_of(j, seed_of(j));
  const auto g = grid_of(j);
  const int j_max = static_cast<int>(unsigned_or(j, "", "j_max", 6));
  if (j_max < 3) throw SchemaError("/j_max", "must be >= 3");
  const PVConfig pv = j.contains("pv") ? pv_from_json(j.at("pv"), "/pv") : PVConfig{};
  at_path("/grid", [&] {
    const double reach = std::ldexp(1.0, j_max);
    const bool fits = kernel.side == Side::plus ? fam.support_lo - reach >= g.x_lo - 1e-9
                                                : fam.support_hi + reach <= g.x_hi + 1e-9;
    if (!fits) throw ConfigError("window too small for the outermost dyadic shell");
    return 0;
  });
  return [=] {
    const auto fit = dyadic_decay(kernel, phase, p, w, fam, g, j_max, pv);
    const std::string wl = w ? w->label() : "1";
    Artifacts a;
    for (std::size_t i = 0; i < fit.j_values.size(); ++i)
      a.rows.push_back({"decay_fit", "dyadic_piece", wl, p, "j=" + std::to_string(fit.j_values[i]),
                        std::exp2(fit.log2_ratios[i]), 0, g.x_lo, g.x_hi, g.n, fam.seed});
    a.rows.push_back({"decay_fit", "slope", wl, p, "intercept=" + fmt_number(fit.intercept), fit.slope, 0, g.x_lo,
                      g.x_hi, g.n, fam.seed});
    a.results.push_back(to_json(fit));
    a.divergent = !std::isfinite(fit.slope);
    return a;
  };
}

inline void write_artifacts(const std::string& prefix, const std::string& command, const Json& config,
                            const Artifacts& a, std::uint64_t seed) {
  const std::string digest = config_digest(config);
  auto rows = a.rows;
  for (auto& r : rows) r.seed = r.seed == 0 ? seed : r.seed;
  write_text(prefix + ".csv", render_csv(rows, digest, seed));
  const Json side{{"command", command}, {"config", config}, {"config_digest", digest}, {"seed", seed},
                  {"results", a.results}, {"divergent", a.divergent}};
  write_text(prefix + ".json", side.dump(2) + "\n");
}

struct Command {
  std::string group;
  std::string name;
  std::function<std::function<Artifacts()>(const Json&)> prepare;
  const char* grid_key;
  const char* n_key;
};

inline std::vector<Command> commands() {
  return {
      {"weights", "estimate", weights_estimate, "search", "n_grid"},
      {"weights", "bump", weights_bump, "search", "n_grid"},
      {"operators", "apply", operators_apply, "grid", "n"},
      {"operators", "cancel-sup", operators_cancel_sup, nullptr, nullptr},
      {"interp", "verify", interp_verify, "grid", "n"},
      {"sweep", "coeffs", sweep_coeffs, "grid", "n"},
      {"decay", "fit", decay_fit, "grid", "n"},
  };
}

inline int run_suite(const std::string& config_path, const std::string& out_dir, const Overrides& o,
                     std::ostream& out, std::ostream& err) {
  StandardConfig s;
  Json config;
  try {
    config = config_path.empty() ? to_json(s) : read_config(config_path);
    if (!config.is_object()) throw SchemaError("", "expected a JSON object");
    if (o.seed) config["seed"] = *o.seed;
    if (o.window) config["window"] = {o.window->first, o.window->second};
    if (o.n) config["n"] = *o.n;
    s = standard_from_json(config, "");
    config = to_json(s);
  } catch (const SchemaError& e) {
    err << "config error at " << e.what() << "\n";
    return invalid;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return invalid;
  }
  const std::string digest = config_digest(config);
  const auto res = run_battery(s, [&out](const CriterionResult& r) {
    out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.title << "): " << r.detail << "\n";
    out.flush();
  });
  write_suite(res, out_dir, digest, s.seed);
  Json summary = Json::array();
  bool all = true;
  for (const auto& c : res.criteria) {
    summary.push_back({{"criterion", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
    all = all && c.pass;
  }
  write_text(std::filesystem::path(out_dir) / "suite.json",
             Json{{"command", "suite run"}, {"config", config}, {"config_digest", digest}, {"seed", s.seed},
                  {"criteria", summary}}
                     .dump(2) +
                 "\n");
  return all ? ok : criteria_failed;
}

inline std::pair<double, double> parse_window(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--window", "expected lo,hi");
  try {
    std::size_t a = 0, b = 0;
    const double lo = std::stod(s.substr(0, comma), &a);
    const double hi = std::stod(s.substr(comma + 1), &b);
    if (a != comma || b != s.size() - comma - 1 || !(lo < hi)) throw std::invalid_argument("order");
    return {lo, hi};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--window", "expected lo,hi with lo < hi");
  }
}

}  // namespace detail

/// Entry point shared by the tool and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"one-sided weighted inequality toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_prefix = "out/run";
  std::optional<std::uint64_t> seed;
  std::string window;
  std::optional<std::size_t> n;
  auto add_flags = [&](CLI::App* sub, bool need_config) {
    auto* c = sub->add_option("--config", config_path, "JSON config file");
    if (need_config) c->required();
    sub->add_option("--out", out_prefix, "artifact prefix (directory for suite run)");
    sub->add_option("--seed", seed, "seed override");
    sub->add_option("--window", window, "window override lo,hi");
    sub->add_option("--n", n, "node count override");
  };
  std::string chosen_group;
  std::string chosen_name;
  const auto cmds = detail::commands();
  std::map<std::string, CLI::App*> groups;
  for (const auto& c : cmds) {
    if (!groups.count(c.group)) {
      groups[c.group] = app.add_subcommand(c.group, c.group + " commands");
      groups[c.group]->require_subcommand(1);
    }
    auto* sub = groups[c.group]->add_subcommand(c.name, c.group + " " + c.name);
    add_flags(sub, true);
    sub->callback([&chosen_group, &chosen_name, g = c.group, nm = c.name] {
      chosen_group = g;
      chosen_name = nm;
    });
  }
  auto* suite = app.add_subcommand("suite", "acceptance battery");
  suite->require_subcommand(1);
  auto* suite_run = suite->add_subcommand("run", "run the acceptance battery");
  add_flags(suite_run, false);
  suite_run->callback([&] {
    chosen_group = "suite";
    chosen_name = "run";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return e.get_exit_code() == 0 ? ok : invalid;
  }

  Overrides o{seed, std::nullopt, n};
  try {
    if (!window.empty()) o.window = detail::parse_window(window);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return invalid;
  }

  if (chosen_group == "suite") return detail::run_suite(config_path, out_prefix, o, out, err);

  const auto it = std::find_if(cmds.begin(), cmds.end(),
                               [&](const detail::Command& c) { return c.group == chosen_group && c.name == chosen_name; });
  Json config;
  std::function<Artifacts()> job;
  try {
    config = detail::read_config(config_path);
    detail::apply_overrides(config, o, it->grid_key, it->n_key);
    job = it->prepare(config);
  } catch (const SchemaError& e) {
    err << "config error at " << e.what() << "\n";
    return invalid;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return invalid;
  }
  {
    std::error_code ec;
    for (const char* ext : {".csv", ".json"}) {
      if (std::filesystem::equivalent(config_path, out_prefix + ext, ec)) {
        err << "output " << out_prefix << ext << " would overwrite the config file\n";
        return invalid;
      }
    }
  }
  const std::uint64_t used_seed = detail::seed_of(config);
  Artifacts a;
  try {
    a = job();
  } catch (const std::exception& e) {
    err << "computation failed: " << e.what() << "\n";
    return invalid;
  }
  detail::write_artifacts(out_prefix, chosen_group + " " + chosen_name, config, a, used_seed);
  out << "wrote " << out_prefix << ".csv and " << out_prefix << ".json\n";
  return a.divergent ? divergent : ok;
}

}  // namespace onesided::cli
