#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <numeric>
#include <vector>

#include "gwrecon/symgroup.hpp"

using namespace gwrecon;

namespace {

// Brute-force cycle type of an explicit permutation.
std::vector<int> cycle_parts_of(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::vector<int> parts;
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = perm[j];
      ++len;
    }
    parts.push_back(len);
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

// Bucket all k! permutations by cycle type.
std::map<std::vector<int>, Int> bucket_sym(int k) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::vector<int>, Int> buckets;
  do {
    buckets[cycle_parts_of(perm)] += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return buckets;
}

}  // namespace

TEST_CASE("cycle_types enumerates partitions with exact class sizes") {
  auto t0 = cycle_types(0);
  REQUIRE(t0.size() == 1);
  REQUIRE(t0[0].parts.empty());
  REQUIRE(t0[0].class_size == 1);

  for (int k = 1; k <= 4; ++k) {
    auto types = cycle_types(k);
    auto buckets = bucket_sym(k);
    REQUIRE(types.size() == buckets.size());
    for (const auto& t : types) REQUIRE(t.class_size == buckets.at(t.parts));
  }

  auto t3 = cycle_types(3);
  REQUIRE(t3.size() == 3);
  auto t4 = cycle_types(4);
  REQUIRE(t4.size() == 5);

  for (int k = 1; k <= 9; ++k) {
    Int total = 0;
    for (const auto& t : cycle_types(k)) total += t.class_size;
    REQUIRE(total == factorial(k));
  }

  REQUIRE_THROWS_AS(cycle_types(21), resource_limit_error);
}

TEST_CASE("trace_h2 spot values") {
  // Identity on 5 points.
  REQUIRE(trace_h2(5, {}) == 5);
  // {2,2} on 4 points: action on a one-dimensional H^2 is trivial.
  REQUIRE(trace_h2(0, {PermProfile::from_parts({2, 2})}) == 1);
  // Single 4-cycle.
  REQUIRE(trace_h2(0, {PermProfile::from_parts({4})}) == 1);
  REQUIRE_THROWS_AS(trace_h2(2, {}), std::domain_error);
}

TEST_CASE("trace_h2 with identity profiles equals partition count minus pairs") {
  for (int m = 3; m <= 10; ++m) {
    Int expected = pow_int(2, m - 1) - 1 - binomial(m, 2);
    REQUIRE(trace_h2(m, {}) == expected);
    REQUIRE(trace_h2(m, {}) >= 0);
  }
}

TEST_CASE("trace_h1_open spot values") {
  REQUIRE(trace_h1_open({}, 4) == 2);
  REQUIRE(trace_h1_open({}, 3) == 0);
  // Transposition plus two fixed points.
  REQUIRE(trace_h1_open({PermProfile::from_parts({2})}, 2) == 0);
}

TEST_CASE("invariant_dim spot values") {
  REQUIRE(invariant_dim(0, {4}) == 1);
  REQUIRE(invariant_dim(2, {1}) == 0);
  REQUIRE(invariant_dim(3, {2}) == 4);
  REQUIRE_THROWS_AS(invariant_dim(3, {0}), std::domain_error);
  REQUIRE_THROWS_AS(invariant_dim(1, {1}), std::domain_error);
}

TEST_CASE("invariant_dim_oracle spot values") {
  REQUIRE(invariant_dim_oracle(0, {4}) == 1);
  REQUIRE(invariant_dim_oracle(3, {2}) == 4);
  REQUIRE(invariant_dim_oracle(0, {5}) == 1);
  REQUIRE_THROWS_AS(invariant_dim_oracle(0, {13}), resource_limit_error);
}

TEST_CASE("invariant_dim agrees with averaging oracle on the full grid") {
  for (int n = 0; n <= 12; ++n) {
    std::vector<std::vector<int>> blocks = {{}};
    // All multisets a_1 >= a_2 >= ... >= 1 with n + sum <= 12, l <= 3.
    for (int l = 1; l <= 3; ++l) {
      std::vector<std::vector<int>> next;
      for (const auto& b : blocks) {
        if (static_cast<int>(b.size()) != l - 1) continue;
        int used = n + std::accumulate(b.begin(), b.end(), 0);
        int hi = b.empty() ? 12 : b.back();
        for (int ai = 1; ai <= std::min(hi, 12 - used); ++ai) {
          auto nb = b;
          nb.push_back(ai);
          next.push_back(nb);
        }
      }
      blocks.insert(blocks.end(), next.begin(), next.end());
    }
    for (const auto& a : blocks) {
      if (a.empty()) continue;
      int m = n + std::accumulate(a.begin(), a.end(), 0);
      if (m < 3 || m > 12) continue;
      INFO("n=" << n << " blocks=" << a.size());
      REQUIRE(invariant_dim(n, a) == invariant_dim_oracle(n, a));
    }
  }
}

TEST_CASE("identity sums match closed forms") {
  auto s2 = identity_sums(2);
  REQUIRE(s2.sum_pow2_c == 6);
  REQUIRE(s2.sum_delta == 1);
  REQUIRE(s2.sum_n1 == 2);
  REQUIRE(s2.sum_n2_pairs == 2);

  auto s3 = identity_sums(3);
  REQUIRE(s3.sum_pow2_c == 24);
  REQUIRE(s3.sum_delta == 0);
  REQUIRE(s3.sum_n1 == 6);
  REQUIRE(s3.sum_n2_pairs == 6);

  auto s4 = identity_sums(4);
  REQUIRE(s4.sum_pow2_c == 120);
  REQUIRE(s4.sum_delta == 12);
  REQUIRE(s4.sum_n1 == 24);
  REQUIRE(s4.sum_n2_pairs == 24);

  for (int k = 1; k <= 8; ++k) REQUIRE_NOTHROW(identity_sums(k));
}

TEST_CASE("product block identities") {
  // All tuples with total <= 8 (order irrelevant, use multisets).
  std::vector<std::vector<int>> tuples;
  for (int a = 1; a <= 8; ++a) {
    tuples.push_back({a});
    for (int b = 1; b <= a && a + b <= 8; ++b) {
      tuples.push_back({a, b});
      for (int c = 1; c <= b && a + b + c <= 8; ++c) tuples.push_back({a, b, c});
    }
  }
  for (const auto& t : tuples) REQUIRE_NOTHROW(product_identity_sums(t));
}

TEST_CASE("bracket_plus behaves on integers and half-integers") {
  REQUIRE(bracket_plus(Rat(3)) == Rat(3));
  REQUIRE(bracket_plus(Rat(3, 2)) == Rat(2));
  REQUIRE(bracket_plus(bracket_plus(Rat(5, 2))) == Rat(3));
  Rat x(7, 2);
  REQUIRE((bracket_plus(x) - x == Rat(1, 2) || bracket_plus(x) - x == Rat(0)));
  REQUIRE_THROWS_AS(bracket_plus(Rat(1, 3)), std::domain_error);
}
