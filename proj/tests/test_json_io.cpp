#include <gtest/gtest.h>

#include "onesided/json_io.hpp"

using namespace onesided;

namespace {
std::string pointer_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const SchemaError& e) {
    return e.pointer();
  }
  return "<no error>";
}
}  // namespace

TEST(JsonIo, WeightRoundTrip) {
  for (const auto& w : {WeightSpec::constant(2.0), WeightSpec::power(0.5), WeightSpec::exponential(-1.0, 3.0),
                        WeightSpec::powexp(0.3, 1.0, 0.5)}) {
    const auto back = weight_from_json(to_json(w), "/weight");
    EXPECT_EQ(back.form(), w.form());
    EXPECT_EQ(back.params(), w.params());
  }
  const Grid g(0.0, 1.0, 3);
  const auto s = WeightSpec::sampled(SampledFunction::from(g, [](double x) { return 1.0 + x; }));
  const auto back = weight_from_json(to_json(s), "/w");
  EXPECT_TRUE(back.is_sampled());
  EXPECT_EQ(back.realize(g).values, s.realize(g).values);
  // Scale is optional.
  EXPECT_EQ(weight_from_json(Json::parse(R"({"form":"power","params":[0.5]})"), "").scale(), 1.0);
}

TEST(JsonIo, SchemaErrorsCarryPointers) {
  EXPECT_EQ(pointer_of([] { (void)weight_from_json(Json::parse(R"({"form":"power","params":[0.5],"x":1})"), "/weight"); }),
            "/weight/x");
  EXPECT_EQ(pointer_of([] { (void)weight_from_json(Json::parse(R"({"form":"power","params":["a"]})"), "/weight"); }),
            "/weight/params/0");
  EXPECT_EQ(pointer_of([] { (void)weight_from_json(Json::parse(R"({"form":"gauss"})"), "/weight"); }), "/weight/form");
  EXPECT_EQ(pointer_of([] { (void)weight_from_json(Json::parse(R"({"form":"power","params":[0.5,0]})"), "/w"); }),
            "/w/params");
  EXPECT_EQ(pointer_of([] { (void)search_from_json(Json::parse(R"({"h_max":100})"), "/search"); }), "/search");
  EXPECT_EQ(pointer_of([] { (void)grid_from_json(Json::parse(R"({"window":[1,0],"n":4})"), "/grid"); }),
            "/grid/window");
  EXPECT_EQ(pointer_of([] { (void)pv_from_json(Json::parse(R"({"refine_checks":9})"), "/pv"); }),
            "/pv/refine_checks");
  EXPECT_EQ(pointer_of([] { (void)phase_from_json(Json::parse(R"({"coeffs":[[1,-1,2]]})"), "/phase"); }),
            "/phase/coeffs/0/1");
}

TEST(JsonIo, KernelPhaseFamilyRoundTrip) {
  const auto k = KernelSpec::truncated_power(0.5, 2.0, Side::minus).dilated(3.0);
  const auto kb = kernel_from_json(to_json(k), "/kernel");
  EXPECT_EQ(kb.tag, k.tag);
  EXPECT_EQ(kb.side, k.side);
  EXPECT_EQ(kb.params, k.params);
  EXPECT_EQ(kb.dilation, 3.0);
  const PolynomialPhase p({{{1, 1}, 2.0}, {{2, 1}, -0.5}});
  EXPECT_EQ(phase_from_json(to_json(p), "/phase").coeffs(), p.coeffs());
  const TestFunctionFamily f{FamilyKind::haar_like_steps, 12, 77, -1.0, 1.5};
  const auto fb = family_from_json(to_json(f), "/family");
  EXPECT_EQ(fb.kind, f.kind);
  EXPECT_EQ(fb.count, 12u);
  EXPECT_EQ(fb.seed, 77u);
  EXPECT_EQ(fb.support_hi, 1.5);
  const TripleSearchConfig c;
  const auto cb = search_from_json(to_json(c), "/search");
  EXPECT_EQ(cb.n_grid, c.n_grid);
  EXPECT_EQ(cb.ceiling, c.ceiling);
}

TEST(JsonIo, DigestIsKeyOrderIndependent) {
  const auto a = Json::parse(R"({"b":1,"a":[1,2,{"y":0,"x":1}]})");
  const auto b = Json::parse(R"({"a":[1,2,{"x":1,"y":0}],"b":1})");
  EXPECT_EQ(config_digest(a), config_digest(b));
  EXPECT_EQ(config_digest(a).size(), 16u);
  EXPECT_NE(config_digest(a), config_digest(Json::parse(R"({"b":2,"a":[1,2,{"y":0,"x":1}]})")));
  // FNV-1a 64 of the empty object "{}".
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : std::string("{}")) h = (h ^ c) * 0x100000001b3ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  EXPECT_EQ(config_digest(Json::object()), buf);
}

TEST(JsonIo, NumbersAndCsv) {
  EXPECT_EQ(fmt_number(0.1), "0.10000000000000001");
  EXPECT_EQ(fmt_number(2.0), "2");
  EXPECT_EQ(fmt_number(INFINITY), "inf");
  EXPECT_EQ(fmt_number(NAN), "nan");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  const std::string csv = render_csv({{"c", "op", "w", 2.0, "k=1", 1.5, 3, -8.0, 8.0, 4096, 9}}, "00ff", 9);
  EXPECT_EQ(csv,
            "# config_digest=00ff seed=9\n"
            "campaign,operator,weight,p,param,best_ratio,argmax_index,window,n,seed\n"
            "c,op,w,2,k=1,1.5,3,-8:8,4096,9\n");
}

TEST(JsonIo, ReportsSerializeNonFiniteAsNull) {
  ConstantReport r;
  r.uncapped = INFINITY;
  const auto j = to_json(r);
  EXPECT_TRUE(j["uncapped"].is_null());
  EXPECT_TRUE(j["witness"]["a"].is_null());
}
