#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "testutil.hpp"
#include "turtlesyn/fdsolver.hpp"

using namespace tsyn;

static std::vector<std::vector<int>> drain(SolutionStream& stream) {
  std::vector<std::vector<int>> out;
  while (auto a = stream.next()) out.push_back(*a);
  return out;
}

TEST_CASE("a constraint-free problem yields the full product") {
  Csp csp;
  csp.add_variable("a", {0, 1});
  csp.add_variable("b", {0, 1, 2});
  SolutionStream s(csp, 0);
  CHECK(drain(s).size() == 6);
}

TEST_CASE("constraints filter assignments") {
  Csp csp;
  int a = csp.add_variable("a", {0, 1, 2, 3});
  int b = csp.add_variable("b", {0, 1, 2, 3});
  csp.add_constraint("lt", {a, b}, [a, b](const std::vector<int>& v) {
    return v[static_cast<size_t>(a)] < v[static_cast<size_t>(b)];
  });
  SolutionStream s(csp, 5);
  auto sols = drain(s);
  CHECK(sols.size() == 6);
  for (const auto& v : sols) CHECK(v[0] < v[1]);
}

TEST_CASE("an unsatisfiable problem yields nothing") {
  Csp csp;
  int a = csp.add_variable("a", {1, 2, 3});
  csp.add_constraint("never", {a}, [](const std::vector<int>&) { return false; });
  SolutionStream s(csp, 0);
  CHECK(!s.next().has_value());
  CHECK(!s.next().has_value());  // stays exhausted
}

TEST_CASE("zero-variable problems yield the empty assignment once") {
  Csp csp;
  SolutionStream s(csp, 0);
  auto first = s.next();
  REQUIRE(first.has_value());
  CHECK(first->empty());
  CHECK(!s.next().has_value());
}

TEST_CASE("same seed gives the same order, different seeds may differ") {
  Csp csp;
  csp.add_variable("a", {0, 1, 2, 3, 4});
  csp.add_variable("b", {0, 1, 2, 3, 4});
  SolutionStream s1(csp, 123), s2(csp, 123);
  CHECK(drain(s1) == drain(s2));

  bool any_difference = false;
  SolutionStream base(csp, 0);
  auto ref = drain(base);
  for (uint64_t seed = 1; seed < 6 && !any_difference; ++seed) {
    SolutionStream other(csp, seed);
    any_difference = drain(other) != ref;
  }
  CHECK(any_difference);
}

TEST_CASE("stream equals brute force on random problems") {
  Rng rng(31337);
  for (int i = 0; i < 100; ++i) {
    Csp csp = testutil::random_csp(rng);
    auto expected = testutil::brute_force_solutions(csp);
    SolutionStream s(csp, rng.next_u64());
    auto got = drain(s);

    // No duplicates before sorting.
    auto unsorted = got;
    std::sort(got.begin(), got.end());
    CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
    CHECK(got.size() == unsorted.size());
    CHECK(got == expected);
  }
}

TEST_CASE("count_solutions respects its cap") {
  Csp csp;
  csp.add_variable("a", {0, 1, 2});
  csp.add_variable("b", {0, 1, 2});
  CHECK(count_solutions(csp, 100) == 9);
  CHECK(count_solutions(csp, 4) == 4);
  Csp empty_domain;
  empty_domain.add_variable("a", {1});
  empty_domain.add_constraint("no", {0}, [](const std::vector<int>&) { return false; });
  CHECK(count_solutions(empty_domain, 100) == 0);
}

TEST_CASE("forward checking still reaches solutions behind dead branches") {
  // b's feasible values depend on a; naive value orders must not lose any.
  Csp csp;
  int a = csp.add_variable("a", {0, 1, 2});
  int b = csp.add_variable("b", {0, 1, 2});
  int c = csp.add_variable("c", {0, 1, 2});
  csp.add_constraint("sum_even", {a, b, c}, [](const std::vector<int>& v) {
    return (v[0] + v[1] + v[2]) % 2 == 0;
  });
  csp.add_constraint("a_ne_b", {a, b}, [](const std::vector<int>& v) { return v[0] != v[1]; });
  auto expected = testutil::brute_force_solutions(csp);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    SolutionStream s(csp, seed);
    auto got = drain(s);
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
  }
}
