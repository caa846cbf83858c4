#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gwrecon/rational.hpp"

namespace gwrecon {

/// A conjugacy class of S_k: multiset of cycle lengths plus its size.
struct CycleType {
  std::vector<int> parts;  // weakly decreasing, parts >= 1
  int k = 0;               // sum of parts
  Int class_size = 1;      // k! / prod_j (j^{n_j} n_j!)

  int cycles() const { return static_cast<int>(parts.size()); }

  int multiplicity(int j) const {
    return static_cast<int>(std::count(parts.begin(), parts.end(), j));
  }
};

/// Cycle statistics of a permutation, enough for the H^1/H^2 traces.
struct PermProfile {
  int k = 0;
  int n1 = 0;
  int n2 = 0;
  int c = 0;
  bool all_even = false;  // every cycle length even; requires k > 0

  static PermProfile from_parts(const std::vector<int>& parts) {
    PermProfile p;
    for (int len : parts) {
      if (len <= 0) throw std::domain_error("PermProfile: cycle length must be positive");
      p.k += len;
      p.c += 1;
      if (len == 1) p.n1 += 1;
      if (len == 2) p.n2 += 1;
    }
    p.all_even = p.k > 0 && std::all_of(parts.begin(), parts.end(),
                                        [](int len) { return len % 2 == 0; });
    return p;
  }
};

inline Int cycle_type_class_size(const std::vector<int>& parts) {
  int k = 0;
  for (int p : parts) k += p;
  Int denom = 1;
  int run = 0;
  for (size_t i = 0; i < parts.size(); ++i) {
    denom *= parts[i];
    ++run;
    if (i + 1 == parts.size() || parts[i + 1] != parts[i]) {
      denom *= factorial(run);
      run = 0;
    }
  }
  return factorial(k) / denom;
}

/// All cycle types of S_k (partitions of k) with exact class sizes.
inline std::vector<CycleType> cycle_types(int k, int bound = 20) {
  if (k < 0) throw std::domain_error("cycle_types: k must be >= 0");
  if (k > bound) throw resource_limit_error("cycle_types: k exceeds bound " + std::to_string(bound));
  std::vector<CycleType> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      CycleType t;
      t.parts = cur;
      t.k = k;
      t.class_size = cycle_type_class_size(cur);
      out.push_back(std::move(t));
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, k, k);
  return out;
}

struct CombinedProfile {
  int m = 0;  // total number of points acted on
  int n1 = 0;
  int n2 = 0;
  int c = 0;
  bool all_even = false;
};

/// Identity on n_fixed points, given profiles on the rest.
inline CombinedProfile combine(int n_fixed, const std::vector<PermProfile>& profiles) {
  if (n_fixed < 0) throw std::domain_error("combine: n_fixed must be >= 0");
  CombinedProfile cp;
  cp.m = n_fixed;
  cp.n1 = n_fixed;
  cp.c = n_fixed;
  bool any_cycle = false;
  bool even = n_fixed == 0;
  for (const auto& p : profiles) {
    cp.m += p.k;
    cp.n1 += p.n1;
    cp.n2 += p.n2;
    cp.c += p.c;
    if (p.k > 0) any_cycle = true;
    even = even && (p.k == 0 || p.all_even);
  }
  cp.all_even = even && any_cycle && n_fixed == 0;
  return cp;
}

/// Trace on the degree-2 cohomology of the moduli of stable marked rational
/// curves: 2^{c-1} - 1 - n2 - C(n1,2) + delta, delta = 2^{c-1} on all-even types.
inline Int trace_h2(int n_fixed, const std::vector<PermProfile>& profiles) {
  const CombinedProfile cp = combine(n_fixed, profiles);
  if (cp.m < 3) throw std::domain_error("trace_h2: need at least 3 points");
  Int val = pow_int(2, cp.c - 1) - 1 - cp.n2 - binomial(cp.n1, 2);
  if (cp.all_even) val += pow_int(2, cp.c - 1);
  return val;
}

/// Trace on H^1 of the open stratum: n2 + (n1^2 - 3 n1)/2.
inline Int trace_h1_open(const std::vector<PermProfile>& profiles, int n_fixed) {
  const CombinedProfile cp = combine(n_fixed, profiles);
  if (cp.m < 3) throw std::domain_error("trace_h1_open: need at least 3 points");
  Int num = Int(cp.n1) * cp.n1 - 3 * cp.n1;
  if (num % 2 != 0) throw integrity_error("trace_h1_open: non-integer value");
  return Int(cp.n2) + num / 2;
}

/// Dimension of the subspace of H^2 invariant under S_{a_1} x ... x S_{a_l}
/// permuting blocks of marked points, with n points left fixed.
inline Int invariant_dim(int n, const std::vector<int>& a) {
  for (int ai : a)
    if (ai <= 0) throw std::domain_error("invariant_dim: block sizes must be positive");
  int total = n;
  for (int ai : a) total += ai;
  if (total < 3) throw std::domain_error("invariant_dim: need at least 3 points");
  const int l = static_cast<int>(a.size());
  Int prod = 1;
  for (int ai : a) prod *= (ai + 1);
  Rat lead = Rat(prod) * Rat(Int(1), Int(2));  // 2^{n-1} with n possibly 0
  for (int i = 0; i < n; ++i) lead *= 2;
  const int frak_a = static_cast<int>(std::count(a.begin(), a.end(), 1));
  Rat val = bracket_plus(lead) - 1 - Rat(binomial(n, 2)) - Rat(Int(l) * n) -
            Rat(binomial(l + 1, 2)) + frak_a;
  Int result = as_integer(val);
  if (result < 0) throw integrity_error("invariant_dim: negative dimension");
  return result;
}

namespace detail {

// Representative permutation on m points: identity on the first n_fixed,
// then one cycle per part.
inline std::vector<int> representative(int n_fixed, const std::vector<int>& parts) {
  std::vector<int> perm;
  for (int i = 0; i < n_fixed; ++i) perm.push_back(i);
  int base = n_fixed;
  for (int len : parts) {
    for (int j = 0; j < len; ++j) perm.push_back(base + (j + 1) % len);
    base += len;
  }
  return perm;
}

// Count unordered partitions {A,B} of {0..m-1} with |A|,|B| >= 2 that the
// permutation fixes or swaps, by explicit subset enumeration.
inline Int stable_partition_count(const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  Int count = 0;
  const uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1);
  for (uint32_t mask = 0; mask <= full; ++mask) {
    if (!(mask & 1u)) continue;  // A contains point 0: counts each {A,B} once
    const int sz = __builtin_popcount(mask);
    if (sz < 2 || m - sz < 2) continue;
    uint32_t image = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) image |= 1u << perm[i];
    if (image == mask || image == (full & ~mask)) ++count;
  }
  return count;
}

}  // namespace detail

/// Same dimension as invariant_dim, computed by averaging traces over cycle
/// types, each trace obtained from subset enumeration and the open-stratum
/// H^1 trace.
inline Int invariant_dim_oracle(int n, const std::vector<int>& a, int bound = 12) {
  for (int ai : a)
    if (ai <= 0) throw std::domain_error("invariant_dim_oracle: block sizes must be positive");
  int m = n;
  for (int ai : a) m += ai;
  if (m < 3) throw std::domain_error("invariant_dim_oracle: need at least 3 points");
  if (m > bound)
    throw resource_limit_error("invariant_dim_oracle: total points exceed bound " +
                               std::to_string(bound));

  std::vector<std::vector<CycleType>> per_block;
  per_block.reserve(a.size());
  for (int ai : a) per_block.push_back(cycle_types(ai));

  Int weighted_sum = 0;
  Int group_order = 1;
  for (int ai : a) group_order *= factorial(ai);

  std::vector<size_t> idx(a.size(), 0);
  auto rec = [&](auto&& self, size_t block, Int weight, std::vector<int>& parts,
                 std::vector<PermProfile>& profs) -> void {
    if (block == a.size()) {
      const auto perm = detail::representative(n, parts);
      const Int partitions = detail::stable_partition_count(perm);
      const Int trace = partitions - trace_h1_open(profs, n);
      weighted_sum += weight * trace;
      return;
    }
    for (const auto& t : per_block[block]) {
      const size_t old = parts.size();
      parts.insert(parts.end(), t.parts.begin(), t.parts.end());
      profs.push_back(PermProfile::from_parts(t.parts));
      self(self, block + 1, weight * t.class_size, parts, profs);
      profs.pop_back();
      parts.resize(old);
    }
  };
  std::vector<int> parts;
  std::vector<PermProfile> profs;
  rec(rec, 0, Int(1), parts, profs);

  if (weighted_sum % group_order != 0)
    throw integrity_error("invariant_dim_oracle: non-integer average");
  return weighted_sum / group_order;
}

/// The four power sums over S_k plus the one-block n1 identities, verified
/// against their closed forms.
struct IdentitySums {
  Int sum_pow2_c;    // = (k+1)!
  Int sum_delta;     // = k!/2 for even k, else 0
  Int sum_n1;        // = k!
  Int sum_n2_pairs;  // sum of n2 + C(n1,2), = k! for k >= 2
  Int sum_n1_blocks;    // l * prod(a_i!) for the tuple (k), i.e. k!
  Int sum_n1n1_blocks;  // C(l,2) * prod(a_i!) for the tuple (k), i.e. 0
};

inline IdentitySums identity_sums(int k) {
  if (k < 1 || k > 9) throw std::domain_error("identity_sums: k must be in 1..9");
  IdentitySums s{0, 0, 0, 0, 0, 0};
  for (const auto& t : cycle_types(k)) {
    const auto p = PermProfile::from_parts(t.parts);
    s.sum_pow2_c += t.class_size * pow_int(2, p.c);
    if (p.all_even) s.sum_delta += t.class_size * pow_int(2, p.c - 1);
    s.sum_n1 += t.class_size * p.n1;
    s.sum_n2_pairs += t.class_size * (Int(p.n2) + binomial(p.n1, 2));
  }
  s.sum_n1_blocks = s.sum_n1;
  s.sum_n1n1_blocks = 0;

  if (s.sum_pow2_c != factorial(k + 1)) throw integrity_error("identity_sums: 2^c sum mismatch");
  const Int delta_expected = (k % 2 == 0) ? factorial(k) / 2 : Int(0);
  if (s.sum_delta != delta_expected) throw integrity_error("identity_sums: delta sum mismatch");
  if (s.sum_n1 != factorial(k)) throw integrity_error("identity_sums: n1 sum mismatch");
  if (k >= 2 && s.sum_n2_pairs != factorial(k))
    throw integrity_error("identity_sums: n2 + C(n1,2) sum mismatch");
  return s;
}

/// Sums of n1 and of pairwise n1*n1 over a product S_{a_1} x ... x S_{a_l},
/// verified against l*prod(a!) and C(l,2)*prod(a!).
inline std::pair<Int, Int> product_identity_sums(const std::vector<int>& a) {
  const int l = static_cast<int>(a.size());
  Int order = 1;
  for (int ai : a) {
    if (ai <= 0) throw std::domain_error("product_identity_sums: block sizes must be positive");
    order *= factorial(ai);
  }
  // Per-block sums: sum over S_a of n1 is a!, of C(n1,2)-style products handled
  // via first and second moments.
  std::vector<Int> m1(a.size());  // sum of n1 over S_{a_i}
  for (size_t i = 0; i < a.size(); ++i) {
    Int s = 0;
    for (const auto& t : cycle_types(a[i])) s += t.class_size * PermProfile::from_parts(t.parts).n1;
    m1[i] = s;
  }
  Int sum_n1 = 0;
  for (size_t i = 0; i < a.size(); ++i) sum_n1 += m1[i] * (order / factorial(a[i]));
  Int sum_pairs = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      sum_pairs += m1[i] * m1[j] * (order / (factorial(a[i]) * factorial(a[j])));

  if (sum_n1 != Int(l) * order) throw integrity_error("product_identity_sums: n1 sum mismatch");
  if (sum_pairs != binomial(l, 2) * order)
    throw integrity_error("product_identity_sums: n1*n1 sum mismatch");
  return {sum_n1, sum_pairs};
}

}  // namespace gwrecon
