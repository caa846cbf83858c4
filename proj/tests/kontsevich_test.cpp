#include <catch2/catch_amalgamated.hpp>

#include "gwrecon/invariants.hpp"
#include "gwrecon/kontsevich.hpp"

using namespace gwrecon;

TEST_CASE("plane curve counts from the closed recursion") {
  auto N = kontsevich_numbers(6);
  REQUIRE(N[1] == 1);
  REQUIRE(N[2] == 1);
  REQUIRE(N[3] == 12);
  REQUIRE(N[4] == 620);
  REQUIRE(N[5] == 87304);
  REQUIRE(N[6] == 26312976);
}

TEST_CASE("plane table agrees with the closed recursion") {
  auto res = km_recursion_pr(2, 6);
  auto N = kontsevich_numbers(6);
  for (int d = 1; d <= 6; ++d) {
    INFO("d=" << d);
    REQUIRE(res.plane_counts[d] == N[d]);
  }
}

TEST_CASE("plane table spot checks against localization") {
  PrInvariants plane(2);
  for (int d = 1; d <= 3; ++d) {
    std::vector<int> counts = {0, 0, 3 * d - 1};
    std::vector<Partition> ins(3 * d - 1, Partition{2});
    REQUIRE(plane.eval(d, counts) == oracle_eval(InvariantKey(Grassmannian{1, 3}, d, ins)));
  }
  // Mixed insertions via the divisor axiom.
  REQUIRE(plane.eval_exponents(1, {1, 2, 2}) == 1);
  REQUIRE(plane.eval_exponents(2, {1, 1, 2, 2, 2, 2}) ==
          oracle_eval(InvariantKey(Grassmannian{1, 3}, 2,
                                   {{1}, {1}, {2}, {2}, {2}, {2}})));
}

TEST_CASE("space table agrees with localization across degrees") {
  PrInvariants space(3);
  const Grassmannian P3{1, 4};
  for (int d = 1; d <= 3; ++d)
    for (int t3 = 0; t3 <= 2 * d; ++t3) {
      const int t2 = 4 * d - 2 * t3;
      if (t2 + t3 < 2 || t2 + t3 > 8) continue;
      std::vector<int> counts = {0, 0, t2, t3};
      std::vector<Partition> ins;
      for (int i = 0; i < t2; ++i) ins.push_back(Partition{2});
      for (int i = 0; i < t3; ++i) ins.push_back(Partition{3});
      INFO("d=" << d << " points=" << t3 << " lines=" << t2);
      REQUIRE(space.eval(d, counts) == oracle_eval(InvariantKey(P3, d, ins)));
    }
}

TEST_CASE("space table classical values") {
  PrInvariants space(3);
  REQUIRE(space.eval_exponents(1, {3, 3}) == 1);
  REQUIRE(space.eval_exponents(1, {2, 2, 2, 2}) == 2);
  REQUIRE(space.eval_exponents(2, {3, 3, 3, 3}) == 0);
  REQUIRE(space.eval_exponents(2, {2, 2, 2, 2, 2, 2, 2, 2}) == 92);
  REQUIRE(space.eval_exponents(3, {3, 3, 3, 3, 3, 3}) == 1);
  // Degree six keeps the full table exact.
  auto res = km_recursion_pr(3, 6);
  REQUIRE(res.r == 3);
}

TEST_CASE("gate and domain errors") {
  PrInvariants plane(2);
  REQUIRE(plane.eval_exponents(1, {2, 2, 2}) == 0);
  REQUIRE_THROWS_AS(PrInvariants(4), unsupported_error);
  REQUIRE_THROWS_AS(km_recursion_pr(4, 3), unsupported_error);
  REQUIRE_THROWS_AS(km_recursion_pr(2, 9), std::domain_error);
}
