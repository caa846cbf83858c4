#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "gwrecon/fixedloci.hpp"

using namespace gwrecon;

TEST_CASE("line census buckets") {
  // Two one-negative-weight star families exist only from degree four on;
  // the degree two and three censuses are smaller.
  auto c2 = p1_graph_census(2);
  REQUIRE(c2.buckets == std::vector<Int>{1, 1, 1});
  auto c3 = p1_graph_census(3);
  REQUIRE(c3.buckets == std::vector<Int>{1, 1, 2});
  for (int d = 4; d <= 10; ++d) {
    auto c = p1_graph_census(d);
    INFO("d=" << d);
    REQUIRE(c.buckets == std::vector<Int>{1, 1, Int(2 + d / 2)});
  }
  REQUIRE_THROWS_AS(p1_graph_census(1), std::domain_error);
  REQUIRE_THROWS_AS(p1_graph_census(11), resource_limit_error);
}

TEST_CASE("census graphs are pairwise non-isomorphic and consistent") {
  for (int d = 2; d <= 7; ++d) {
    auto c = p1_graph_census(d, d + 2);
    std::set<std::string> keys;
    Int bucketed = 0;
    for (const auto& g : c.graphs) {
      REQUIRE(g.total_degree() == d);
      // Adjacent labels differ.
      for (size_t e = 0; e < g.edges.size(); ++e)
        REQUIRE(g.label[g.edges[e].first] != g.label[g.edges[e].second]);
      REQUIRE(keys.insert(g.canonical()).second);
    }
    for (const auto& b : c.buckets) bucketed += b;
    REQUIRE(bucketed == Int(c.graphs.size()));
  }
}

TEST_CASE("middle cohomology ledger for even degrees") {
  auto l4 = h4_ledger_p1(4);
  REQUIRE(l4.count_bijl == 0);
  REQUIRE(l4.h2_term == 0);
  REQUIRE(l4.two_neg == 4);
  REQUIRE(l4.total == 4);

  auto l6 = h4_ledger_p1(6);
  REQUIRE(l6.count_bijl == 2);
  REQUIRE(l6.total == 9);

  auto l8 = h4_ledger_p1(8);
  REQUIRE(l8.count_bijl == 6);
  REQUIRE(l8.total == 16);

  for (int d = 2; d <= 12; d += 2) {
    auto led = h4_ledger_p1(d);
    REQUIRE(led.total == Int(d / 2) * (d / 2));
    REQUIRE(led.count_bijl == Int(d / 2 - 1) * (d / 2 - 2));
  }
  REQUIRE_THROWS_AS(h4_ledger_p1(5), unsupported_error);
}

TEST_CASE("flag family counts spot values") {
  SpaceSignature g24(FlagDescriptor::grassmannian(2, 4), 0, {2});
  auto f = flag_family_counts(g24);
  REQUIRE(f.big_locus == 0);
  REQUIRE(f.family_A == 0);
  REQUIRE(f.family_B == 1);
  REQUIRE(f.family_CDE == 2);
  REQUIRE(f.total == 3);

  SpaceSignature pr1(FlagDescriptor::projective_space(3), 1, {2});
  auto f2 = flag_family_counts(pr1);
  REQUIRE(f2.big_locus == 0);
  REQUIRE(f2.family_A == 1);
  REQUIRE(f2.family_B == 1);
  REQUIRE(f2.family_CDE == 1);
  REQUIRE(f2.total == 3);

  SpaceSignature ones(FlagDescriptor::grassmannian(2, 5), 0, {1});
  REQUIRE(flag_family_counts(ones).family_B == 0);
}

TEST_CASE("flag family totals equal the divisor rank on the grid") {
  std::vector<FlagDescriptor> targets = {
      FlagDescriptor::projective_space(1), FlagDescriptor::projective_space(2),
      FlagDescriptor::projective_space(4), FlagDescriptor::grassmannian(2, 4),
      FlagDescriptor::grassmannian(2, 5),  FlagDescriptor({1, 2}, 4),
      FlagDescriptor({1, 3}, 5),           FlagDescriptor({1, 2, 3}, 5)};
  for (const auto& t : targets) {
    const int l = t.h2();
    std::vector<std::vector<int>> degs = {{}};
    for (int i = 0; i < l; ++i) {
      std::vector<std::vector<int>> next;
      for (const auto& v : degs)
        for (int d = 1; d <= 4; ++d) {
          auto w = v;
          w.push_back(d);
          next.push_back(w);
        }
      degs = next;
    }
    for (const auto& deg : degs) {
      int total = 0;
      for (int d : deg) total += d;
      if (total > 4) continue;
      for (int n = 0; n <= 5; ++n) {
        SpaceSignature sig(t, n, deg);
        REQUIRE(flag_family_counts(sig).total == dim_h2(sig));
      }
    }
  }
}

TEST_CASE("betti transfer checks") {
  for (int d = 2; d <= 6; ++d) {
    auto t = betti_transfer_check(d);
    REQUIRE(t.gap_n0 == d + 3);
    REQUIRE(t.gap_n1 == 2 * d + 3);
    if (d >= 3) REQUIRE(t.five_graph_matches);
  }
  auto t3 = betti_transfer_check(3);
  REQUIRE(t3.five_graph_bound == 6);
  REQUIRE_THROWS_AS(betti_transfer_check(9), resource_limit_error);
}
