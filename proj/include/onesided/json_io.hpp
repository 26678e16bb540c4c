#pragma once

// JSON serialization of the domain types, schema-checked parsing with
// JSON-pointer diagnostics, config digests, and the campaign CSV format.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "onesided/errors.hpp"
#include "onesided/experiments.hpp"
#include "onesided/interpolate.hpp"
#include "onesided/kernel.hpp"
#include "onesided/oscillatory.hpp"
#include "onesided/phase.hpp"
#include "onesided/weight_spec.hpp"
#include "onesided/weights.hpp"

namespace onesided {

using Json = nlohmann::json;

/// Config problem located by a JSON pointer.
class SchemaError : public ConfigError {
 public:
  SchemaError(const std::string& pointer, const std::string& what)
      : ConfigError((pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(pointer) {}
  [[nodiscard]] const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

namespace json_detail {

inline std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
inline std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const Json& object(const Json& j, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  return j;
}

/// Rejects keys outside the allowed set.
inline void allow_keys(const Json& j, const std::string& ptr, std::initializer_list<const char*> keys) {
  object(j, ptr);
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.contains(k)) throw SchemaError(child(ptr, k), "unknown key");
  }
}

inline const Json& need(const Json& j, const std::string& ptr, const char* key) {
  object(j, ptr);
  if (!j.contains(key)) throw SchemaError(child(ptr, key), "missing required key");
  return j.at(key);
}

inline double number(const Json& j, const std::string& ptr) {
  if (!j.is_number()) throw SchemaError(ptr, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(ptr, "expected a finite number");
  return v;
}

inline double number_or(const Json& j, const std::string& ptr, const char* key, double dflt) {
  return j.contains(key) ? number(j.at(key), child(ptr, key)) : dflt;
}

inline std::uint64_t unsigned_int(const Json& j, const std::string& ptr) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw SchemaError(ptr, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline std::uint64_t unsigned_or(const Json& j, const std::string& ptr, const char* key, std::uint64_t dflt) {
  return j.contains(key) ? unsigned_int(j.at(key), child(ptr, key)) : dflt;
}

inline std::string text(const Json& j, const std::string& ptr) {
  if (!j.is_string()) throw SchemaError(ptr, "expected a string");
  return j.get<std::string>();
}

inline std::vector<double> numbers(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw SchemaError(ptr, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], child(ptr, i)));
  return out;
}

inline std::pair<double, double> interval(const Json& j, const std::string& ptr) {
  const auto v = numbers(j, ptr);
  if (v.size() != 2) throw SchemaError(ptr, "expected [lo, hi]");
  if (!(v[0] < v[1])) throw SchemaError(ptr, "expected lo < hi");
  return {v[0], v[1]};
}

/// Wraps a domain-level failure in the pointer of the object that caused it.
template <class Fn>
auto at_path(const std::string& ptr, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(ptr, e.what());
  }
}

inline Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace json_detail

// ---------------------------------------------------------------- weights

inline Json to_json(const WeightSpec& w) {
  Json j;
  j["form"] = to_string(w.form());
  if (w.is_sampled()) {
    const auto& s = w.samples();
    j["window"] = {s.x_lo(), s.x_hi()};
    j["values"] = s.real_parts();
  } else {
    j["params"] = w.params();
  }
  return j;
}

/// {"form": tag, "params": [...]} with params constant [scale?], power [alpha, scale?],
/// exponential [c, scale?], powexp [alpha, c, scale?]; sampled {"window", "values"}.
inline WeightSpec weight_from_json(const Json& j, const std::string& ptr) {
  using namespace json_detail;
  object(j, ptr);
  const std::string form_s = text(need(j, ptr, "form"), child(ptr, "form"));
  const WeightForm form = at_path(child(ptr, "form"), [&] { return weight_form_from_string(form_s); });
  if (form == WeightForm::sampled) {
    allow_keys(j, ptr, {"form", "window", "values"});
    const auto [lo, hi] = interval(need(j, ptr, "window"), child(ptr, "window"));
    const auto vals = numbers(need(j, ptr, "values"), child(ptr, "values"));
    return at_path(ptr, [&] {
      std::vector<Complex> v(vals.begin(), vals.end());
      return WeightSpec::sampled(SampledFunction(Grid(lo, hi, vals.size()), std::move(v)));
    });
  }
  allow_keys(j, ptr, {"form", "params"});
  const auto pp = j.contains("params") ? numbers(j.at("params"), child(ptr, "params")) : std::vector<double>{};
  const std::size_t need_n = form == WeightForm::constant ? 0 : form == WeightForm::powexp ? 2 : 1;
  if (pp.size() < need_n || pp.size() > need_n + 1)
    throw SchemaError(child(ptr, "params"), "wrong number of parameters for form '" + form_s + "'");
  const double scale = pp.size() > need_n ? pp.back() : 1.0;
  return at_path(child(ptr, "params"), [&] {
    switch (form) {
      case WeightForm::constant: return WeightSpec::constant(scale);
      case WeightForm::power: return WeightSpec::power(pp[0], scale);
      case WeightForm::exponential: return WeightSpec::exponential(pp[0], scale);
      case WeightForm::powexp: return WeightSpec::powexp(pp[0], pp[1], scale);
      default: return WeightSpec::constant(scale);
    }
  });
}

inline Json to_json(const TripleSearchConfig& c) {
  return Json{{"window", {c.x_lo, c.x_hi}}, {"n_grid", c.n_grid}, {"n_anchor", c.n_anchor}, {"n_h", c.n_h},
              {"h_min", c.h_min},           {"h_max", c.h_max},   {"gamma", c.gamma},       {"ceiling", c.ceiling}};
}

inline TripleSearchConfig search_from_json(const Json& j, const std::string& ptr, TripleSearchConfig base = {}) {
  using namespace json_detail;
  allow_keys(j, ptr, {"window", "n_grid", "n_anchor", "n_h", "h_min", "h_max", "gamma", "ceiling"});
  if (j.contains("window")) std::tie(base.x_lo, base.x_hi) = interval(j.at("window"), child(ptr, "window"));
  base.n_grid = unsigned_or(j, ptr, "n_grid", base.n_grid);
  base.n_anchor = unsigned_or(j, ptr, "n_anchor", base.n_anchor);
  base.n_h = unsigned_or(j, ptr, "n_h", base.n_h);
  base.h_min = number_or(j, ptr, "h_min", base.h_min);
  base.h_max = number_or(j, ptr, "h_max", base.h_max);
  base.gamma = number_or(j, ptr, "gamma", base.gamma);
  base.ceiling = number_or(j, ptr, "ceiling", base.ceiling);
  at_path(ptr, [&] {
    base.validate();
    return 0;
  });
  return base;
}

inline Json to_json(const Witness& w) {
  using json_detail::finite_or_null;
  return Json{{"a", finite_or_null(w.a)}, {"b", finite_or_null(w.b)}, {"c", finite_or_null(w.c)},
              {"d", finite_or_null(w.d)}, {"h", finite_or_null(w.h)}};
}

inline Json to_json(const ConstantReport& r) {
  return Json{{"constant", r.constant},
              {"uncapped", json_detail::finite_or_null(r.uncapped)},
              {"witness", to_json(r.witness)},
              {"finite_flag", r.finite_flag},
              {"resolution", to_json(r.resolution)}};
}

// ---------------------------------------------------------------- operators

inline Json to_json(const KernelSpec& k) {
  return Json{{"tag", to_string(k.tag)}, {"side", to_string(k.side)}, {"params", k.params}, {"dilation", k.dilation}};
}

inline KernelSpec kernel_from_json(const Json& j, const std::string& ptr) {
  using namespace json_detail;
  allow_keys(j, ptr, {"tag", "side", "params", "dilation"});
  const auto tag = at_path(child(ptr, "tag"), [&] { return kernel_tag_from_string(text(need(j, ptr, "tag"), child(ptr, "tag"))); });
  const Side side = j.contains("side")
                        ? at_path(child(ptr, "side"), [&] { return side_from_string(text(j.at("side"), child(ptr, "side"))); })
                        : Side::plus;
  const auto params = j.contains("params") ? numbers(j.at("params"), child(ptr, "params")) : std::vector<double>{};
  KernelSpec k;
  if (tag == KernelTag::oscillating_log) {
    if (!params.empty()) throw SchemaError(child(ptr, "params"), "oscillating-log takes no parameters");
    k = KernelSpec::oscillating_log(side);
  } else {
    if (params.size() != 2) throw SchemaError(child(ptr, "params"), "truncated-power takes [r_lo, r_hi]");
    k = at_path(child(ptr, "params"), [&] { return KernelSpec::truncated_power(params[0], params[1], side); });
  }
  const double lambda = number_or(j, ptr, "dilation", 1.0);
  return lambda == 1.0 ? k : at_path(child(ptr, "dilation"), [&] { return k.dilated(lambda); });
}

inline Json to_json(const PolynomialPhase& p) {
  Json c = Json::array();
  for (const auto& [m, a] : p.coeffs()) c.push_back({m.first, m.second, a});
  return Json{{"coeffs", c}};
}

inline PolynomialPhase phase_from_json(const Json& j, const std::string& ptr) {
  using namespace json_detail;
  allow_keys(j, ptr, {"coeffs"});
  const Json& c = need(j, ptr, "coeffs");
  const std::string cptr = child(ptr, "coeffs");
  if (!c.is_array()) throw SchemaError(cptr, "expected an array of [alpha, beta, value]");
  std::map<PolynomialPhase::Monomial, double> m;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::string eptr = child(cptr, i);
    if (!c[i].is_array() || c[i].size() != 3) throw SchemaError(eptr, "expected [alpha, beta, value]");
    const auto alpha = static_cast<int>(unsigned_int(c[i][0], child(eptr, 0)));
    const auto beta = static_cast<int>(unsigned_int(c[i][1], child(eptr, 1)));
    m[{alpha, beta}] += number(c[i][2], child(eptr, 2));
  }
  return at_path(cptr, [&] { return PolynomialPhase(std::move(m)); });
}

inline Json to_json(const PVConfig& pv) { return Json{{"eps_cells", pv.eps_cells}, {"refine_checks", pv.refine_checks}}; }

inline PVConfig pv_from_json(const Json& j, const std::string& ptr) {
  using namespace json_detail;
  allow_keys(j, ptr, {"eps_cells", "refine_checks"});
  PVConfig pv;
  pv.eps_cells = unsigned_or(j, ptr, "eps_cells", 1);
  pv.refine_checks = unsigned_or(j, ptr, "refine_checks", 0);
  if (pv.eps_cells < 1) throw SchemaError(child(ptr, "eps_cells"), "must be >= 1");
  if (pv.refine_checks > 4) throw SchemaError(child(ptr, "refine_checks"), "at most 4 halvings are supported");
  return pv;
}

// ---------------------------------------------------------------- experiments

inline Json grid_to_json(const Grid& g) { return Json{{"window", {g.x_lo, g.x_hi}}, {"n", g.n}}; }

inline Grid grid_from_json(const Json& j, const std::string& ptr) {
  using namespace json_detail;
  allow_keys(j, ptr, {"window", "n"});
  const auto [lo, hi] = interval(need(j, ptr, "window"), child(ptr, "window"));
  const auto n = unsigned_int(need(j, ptr, "n"), child(ptr, "n"));
  if (n < 2) throw SchemaError(child(ptr, "n"), "must be >= 2");
  return Grid(lo, hi, n);
}

inline Json to_json(const TestFunctionFamily& f) {
  return Json{{"kind", to_string(f.kind)}, {"count", f.count}, {"seed", f.seed}, {"support", {f.support_lo, f.support_hi}}};
}

inline TestFunctionFamily family_from_json(const Json& j, const std::string& ptr) {
  using namespace json_detail;
  allow_keys(j, ptr, {"kind", "count", "seed", "support"});
  TestFunctionFamily f;
  if (j.contains("kind"))
    f.kind = at_path(child(ptr, "kind"), [&] { return family_kind_from_string(text(j.at("kind"), child(ptr, "kind"))); });
  f.count = unsigned_or(j, ptr, "count", f.count);
  f.seed = unsigned_or(j, ptr, "seed", f.seed);
  if (j.contains("support")) std::tie(f.support_lo, f.support_hi) = interval(j.at("support"), child(ptr, "support"));
  return f;
}

inline Json to_json(const NormRatioReport& r) {
  return Json{{"best_ratio", r.best_ratio}, {"argmax_index", r.argmax_index}, {"skipped", r.skipped},
              {"family", to_json(r.family)}, {"config_digest", r.config_digest}};
}

inline Json to_json(const DecayFit& f) {
  return Json{{"j_values", f.j_values}, {"log2_ratios", f.log2_ratios}, {"slope", f.slope}, {"intercept", f.intercept}};
}

inline Json to_json(const MultiplierReport& r) {
  return Json{{"exact_norm", r.exact_norm}, {"c_bound", r.c_bound}, {"pass", r.pass}};
}

// ---------------------------------------------------------------- digests and CSV

/// FNV-1a 64 of the canonical (key-sorted, compact) dump.
inline std::string config_digest(const Json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

inline std::string fmt_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CsvRow {
  std::string campaign;
  std::string op;
  std::string weight;
  double p = 2.0;
  std::string param;
  double best_ratio = 0.0;
  long long argmax_index = 0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Columns campaign,operator,weight,p,param,best_ratio,argmax_index,window,n,seed
/// after a "# config_digest=... seed=..." line.
inline std::string render_csv(const std::vector<CsvRow>& rows, const std::string& digest, std::uint64_t seed) {
  std::ostringstream os;
  os << "# config_digest=" << digest << " seed=" << seed << "\n";
  os << "campaign,operator,weight,p,param,best_ratio,argmax_index,window,n,seed\n";
  for (const auto& r : rows) {
    os << csv_field(r.campaign) << ',' << csv_field(r.op) << ',' << csv_field(r.weight) << ',' << fmt_number(r.p) << ','
       << csv_field(r.param) << ',' << fmt_number(r.best_ratio) << ',' << r.argmax_index << ','
       << fmt_number(r.window_lo) << ':' << fmt_number(r.window_hi) << ',' << r.n << ',' << r.seed << "\n";
  }
  return os.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace onesided
