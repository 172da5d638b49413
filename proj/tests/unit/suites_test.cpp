#include "treelab/errors.hpp"
#include "treelab/suites.hpp"

#include <gtest/gtest.h>

using namespace treelab;

TEST(Suites, AllPassAtSmallScale) {
  for (const auto& name : suite_names())
    for (int q : {2, 3}) {
      const auto r = run_suite(name, {q, 4, 40, 5});
      EXPECT_EQ(r.failures, 0u) << name << " q=" << q << (r.failed.empty() ? "" : " " + r.failed.front().detail);
    }
}

TEST(Suites, ThreadCountDoesNotChangeResults) {
  const SuiteParams p{3, 5, 60, 9};
  const auto a = run_suite("closed_form", p, 1);
  const auto b = run_suite("closed_form", p, 3);
  EXPECT_EQ(a.counters, b.counters);
  EXPECT_EQ(a.failures, b.failures);
}

TEST(Suites, CasesAreReproducibleFromTheirIndex) {
  const SuiteParams p{4, 4, 10, 1};
  for (std::size_t i = 0; i < 10; ++i) {
    const auto a = run_case("cocycle", p, i);
    const auto b = run_case("cocycle", p, i);
    EXPECT_EQ(a.inputs, b.inputs);
    EXPECT_EQ(a.case_seed, case_seed("cocycle", 1, i));
  }
  EXPECT_NE(case_seed("cocycle", 1, 0), case_seed("adjoint", 1, 0));
  EXPECT_NE(case_seed("cocycle", 1, 0), case_seed("cocycle", 2, 0));
}

TEST(Suites, ClosedFormExercisesEveryCase) {
  const auto r = run_suite("closed_form", {3, 6, 1000, 0});
  ASSERT_EQ(r.counters.size(), 4u);
  for (const auto& [label, count] : r.counters)
    EXPECT_GE(count, 10u) << label;
}

TEST(Suites, UnknownSuite) {
  EXPECT_FALSE(is_suite("nope"));
  EXPECT_THROW(run_suite("nope", {}), InvalidInput);
}
