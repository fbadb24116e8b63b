#include <burch/analysis.hpp>

#include <gtest/gtest.h>

using namespace burch;

namespace {

Ideal id(const RingPtr& R, std::vector<std::string> g) { return Ideal::from_strings(R, g); }

RingPtr xy() { return make_ring(32003, {"x", "y"}); }
RingPtr xyzw() { return make_ring(32003, {"x", "y", "z", "w"}); }

}  // namespace

TEST(Periodicity, ConstantEntryIdealsOverLine) {
  auto R = xy();
  auto I = id(R, {"x^2*y"});
  auto res = resolve(I, PresentedModule::of_ideal(Ideal::maximal(R)), 7);
  Report r = periodicity_report(res, 4);
  EXPECT_EQ(r.conclusion, Conclusion::VERIFIED);
  EXPECT_EQ(r.data["period"], 1);
  EXPECT_LE(r.data["onset"].get<int>(), 2);
  EXPECT_EQ(r.data["stable_ideal"], Json::array({"x", "y"}));
}

TEST(Periodicity, FreeModuleHasZeroIdealTail) {
  auto R = xy();
  auto I = id(R, {"x^2", "x*y"});
  auto res = resolve(I, PresentedModule::quotient(Ideal::zero(R)), 6);
  Report r = periodicity_report(res, 4);
  EXPECT_EQ(r.conclusion, Conclusion::VERIFIED);
  EXPECT_EQ(r.data["period"], 1);
  EXPECT_EQ(r.data["stable_ideal"], Json::array());
}

TEST(Periodicity, ShortPrefixUnmet) {
  auto R = xy();
  auto res = resolve(id(R, {"x^2"}), PresentedModule::of_ideal(Ideal::maximal(R)), 2);
  Report r = periodicity_report(res, 4);
  EXPECT_FALSE(r.preconditions_met());
  EXPECT_EQ(r.conclusion, Conclusion::INCONCLUSIVE);
}

TEST(Big1, SmallIndexIsInconclusive) {
  auto R = xy();
  auto I = id(R, {"x^2", "y^2"});
  Report r = verify_big1(I, PresentedModule::of_ideal(Ideal::maximal(R)), 4);
  EXPECT_FALSE(r.preconditions_met());
  EXPECT_EQ(r.conclusion, Conclusion::INCONCLUSIVE);
}

TEST(Big1, LadderResolvingMaximal) {
  auto R = make_ring(32003, {"x1", "x2", "y"});
  auto I = id(R, {"x1*y", "x2*y", "y^3"});
  Report r = verify_big1(I, PresentedModule::of_ideal(Ideal::maximal(R)), 7);
  EXPECT_TRUE(r.preconditions_met());
  EXPECT_EQ(r.conclusion, Conclusion::VERIFIED);
  EXPECT_LE(r.data["q"].get<int>(), r.data["bd"].get<int>());
}

TEST(Dual2, HypothesesFailingIsInconclusive) {
  auto R = xy();
  auto I = id(R, {"x^2*y"});
  auto res = resolve(I, PresentedModule::of_ideal(Ideal::maximal(R)), 4);
  // N = 𝔫 contains every column ideal and BI_𝔫 = 𝔫 here, so the first hypothesis fails
  Report r = verify_dual2(I, res, Ideal::maximal(R), 1, 0);
  EXPECT_FALSE(r.preconditions_met());
  EXPECT_EQ(r.conclusion, Conclusion::INCONCLUSIVE);
  Report bad = verify_dual2(I, res, Ideal::maximal(R), 1, 99);
  EXPECT_FALSE(bad.preconditions_met());
}

TEST(Dual2, LineColumnPersistsAtEvenOffsets) {
  auto R = xy();
  auto I = id(R, {"x^2*y"});
  auto res = resolve(I, PresentedModule::of_ideal(Ideal::maximal(R)), 6);
  auto N = id(R, {"x"});
  std::optional<std::pair<int, int>> at;
  for (int m = 1; m <= 3 && !at; ++m)
    for (int c = 0; c < res.A(m).cols(); ++c)
      if (column_ideal(res.A(m), c, I) == sum(N, I)) at = std::make_pair(m, c);
  ASSERT_TRUE(at.has_value());
  EXPECT_EQ(at->first, 2);
  Report r = verify_dual2(I, res, N, at->first, at->second);
  EXPECT_TRUE(r.preconditions_met());
  EXPECT_EQ(r.conclusion, Conclusion::VERIFIED);
  std::vector<int> steps;
  for (const auto& e : r.data["even_steps"]) steps.push_back(e["step"].get<int>());
  EXPECT_EQ(steps, (std::vector<int>{4, 6}));
}

TEST(DualPos, FreeModuleHasNoTrigger) {
  auto R = xy();
  auto I = id(R, {"x^2*y"});
  auto res = resolve(I, PresentedModule::quotient(Ideal::zero(R)), 4);
  Report r = verify_dualpos(I, res);
  EXPECT_FALSE(r.preconditions_met());
  EXPECT_EQ(r.conclusion, Conclusion::INCONCLUSIVE);
}

TEST(DualPos, NonfreeOverLine) {
  auto R = xy();
  auto I = id(R, {"x^2*y"});
  auto res = resolve(I, PresentedModule::of_ideal(Ideal::maximal(R)), 6);
  Report r = verify_dualpos(I, res);
  EXPECT_EQ(r.conclusion, Conclusion::VERIFIED);
  EXPECT_TRUE(r.data["zero_steps"].empty());
}

TEST(Big2, PowerOfVariableLacksPairs) {
  auto R = xy();
  Report r = verify_big2(id(R, {"x^2"}), PresentedModule::of_ideal(Ideal::maximal(R)), 3);
  EXPECT_FALSE(r.preconditions_met());
  EXPECT_EQ(r.conclusion, Conclusion::INCONCLUSIVE);
}

TEST(Big2, FourCycleSharedRealizers) {
  auto R = xyzw();
  auto I = id(R, {"x*z", "y*z", "z*w", "x*w"});
  auto pairs = shared_realizers(I);
  for (const auto& p : pairs) EXPECT_TRUE(p.has_value());
  Report r = verify_big2(I, PresentedModule::quotient(id(R, {"x^2*y^2", "z^3", "y*w"})), 5);
  EXPECT_TRUE(r.preconditions_met());
  EXPECT_EQ(r.conclusion, Conclusion::VERIFIED);
  EXPECT_EQ(r.data["entry_ideals"][1], Json::array({"x", "y", "z", "w"}));
}

TEST(Twist1, PerGeneratorTable) {
  auto R = make_ring(32003, {"x", "y", "z"});
  auto I = id(R, {"x^2*y", "x*y^2*z", "z^3"});
  Report r = check_twist1_conditions(I, id(R, {"x^2", "y", "z^2"}), 3);
  const auto& t = r.data["generator_burch"];
  ASSERT_EQ(t.size(), 3u);
  for (const auto& row : t) {
    if (row["generator"] == "y") {
      EXPECT_GE(row["burch"].get<int>(), 1);
    }
  }
  EXPECT_NE(r.conclusion, Conclusion::FALSIFIED);
}

TEST(Twist1, MaximalOverFourCycle) {
  auto R = xyzw();
  auto I = id(R, {"x*z", "y*z", "z*w", "x*w"});
  Report r = check_twist1_conditions(I, Ideal::maximal(R), 4);
  EXPECT_EQ(r.conclusion, Conclusion::VERIFIED);
}

TEST(Twist1, PrincipalSingleQ) {
  auto R = xy();
  auto I = id(R, {"x^2*y"});
  Report r = check_twist1_conditions(I, id(R, {"x"}), 3);
  EXPECT_EQ(r.data["subideals"].size(), 1u);
}

TEST(Fuzz, SeededRunsRepeatAndFindNothing) {
  auto R = make_ring(32003, {"x", "y", "z"});
  FuzzConfig cfg;
  cfg.seed = 42;
  cfg.count = 25;
  cfg.binomial_percent = 30;
  auto a = fuzz(R, cfg);
  auto b = fuzz(R, cfg);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(a.falsified(), 0);
  EXPECT_EQ(a.cases, 25);
  cfg.seed = 43;
  EXPECT_NE(to_json(fuzz(R, cfg)).dump(), to_json(a).dump());
}
