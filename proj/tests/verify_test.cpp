#include <gtest/gtest.h>

#include "cycloforge/verify.hpp"

using namespace cycloforge;

namespace {

void expect_pass(const SuiteReport& rep) {
  EXPECT_TRUE(rep.passed()) << format_suite(rep);
  EXPECT_FALSE(rep.properties.empty());
  for (const auto& p : rep.properties) EXPECT_GT(p.checked, 0u) << rep.suite << "/" << p.name;
}

}  // namespace

TEST(Verify, SuiteNamesResolve) {
  EXPECT_EQ(suite_names().size(), 7u);
  try {
    verify_suite("nosuch", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownSuite);
  }
}

TEST(Verify, FormatMarksFailures) {
  SuiteReport rep{"demo", {}};
  PropertyResult p;
  p.name = "prop";
  p.check(true, [] { return std::string("unused"); });
  p.check(false, [] { return std::string("n=7"); });
  rep.properties.push_back(p);
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(format_suite(rep), "[FAIL] demo/prop checked=2 failures=1\n    counterexample: n=7\nsuite demo: FAIL\n");
}

TEST(Verify, CyclotomicSuiteSmall) {
  SuiteOptions o;
  o.max = 600;
  expect_pass(verify_suite("cyclotomic", o));
}

TEST(Verify, BinarySuiteSmall) {
  SuiteOptions o;
  o.max = 800;
  expect_pass(verify_suite("binary", o));
}

TEST(Verify, FjSuiteSmall) {
  SuiteOptions o;
  o.max = 60;
  o.smax = 40;
  expect_pass(verify_suite("fj", o));
}

TEST(Verify, PeriodicitySuite) { expect_pass(verify_suite("periodicity", {})); }

TEST(Verify, PeriodicitySuiteOtherModuli) {
  SuiteOptions o;
  o.n = {39, 51};
  o.smax = 200;
  expect_pass(verify_suite("periodicity", o));
}

TEST(Verify, PseudoSuiteSmall) {
  SuiteOptions o;
  o.max = 3000;
  expect_pass(verify_suite("pseudo", o));
}

TEST(Verify, ClassifierSuiteWithWorkers) {
  SuiteOptions o;
  o.max = 10000;
  o.workers = 3;
  expect_pass(verify_suite("classifier-soundness", o));
}
