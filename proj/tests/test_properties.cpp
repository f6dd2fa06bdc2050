#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "random_scenarios.hpp"

TEST_CASE("structural identities on random smooth scenarios") {
  const randomized::Outcome o = randomized::run(50, 20240611u);
  CHECK(o.scenarios == 50);
  for (const auto& v : o.violations) MESSAGE(v);
  CHECK(o.violations.empty());
}

TEST_CASE("a second seed") {
  const randomized::Outcome o = randomized::run(20, 7u);
  for (const auto& v : o.violations) MESSAGE(v);
  CHECK(o.violations.empty());
}
