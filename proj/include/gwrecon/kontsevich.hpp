#pragma once

#include <map>
#include <set>
#include <vector>

#include "gwrecon/rational.hpp"

namespace gwrecon {

/// Rational plane curve counts from the closed recursion.
inline std::vector<Int> kontsevich_numbers(int dmax) {
  if (dmax < 1 || dmax > 12) throw std::domain_error("kontsevich_numbers: d must be in 1..12");
  std::vector<Int> N(dmax + 1, 0);
  N[1] = 1;
  for (int d = 2; d <= dmax; ++d) {
    Int total = 0;
    for (int d1 = 1; d1 < d; ++d1) {
      const int d2 = d - d1;
      total += N[d1] * N[d2] *
               (Int(d1) * d1 * d2 * d2 * binomial(3 * d - 4, 3 * d1 - 2) -
                Int(d1) * d1 * d1 * d2 * binomial(3 * d - 4, 3 * d1 - 1));
    }
    N[d] = total;
  }
  return N;
}

/// Genus-zero primary invariants of projective space, reconstructed from the
/// boundary equivalence on four-pointed spaces. Insertions are hyperplane
/// powers; keys store the multiset as a count per exponent.
class PrInvariants {
 public:
  explicit PrInvariants(int r) : r_(r) {
    if (r < 1 || r > 3) throw unsupported_error("PrInvariants: r must be in 1..3");
  }

  /// counts[a] = number of insertions equal to H^a, 0 <= a <= r.
  Rat eval(int d, std::vector<int> counts) {
    counts.resize(r_ + 1, 0);
    return eval_key(Key{d, std::move(counts)});
  }

  Rat eval_exponents(int d, const std::vector<int>& exps) {
    std::vector<int> counts(r_ + 1, 0);
    for (int a : exps) {
      if (a < 0 || a > r_) throw std::domain_error("PrInvariants: exponent out of range");
      counts[a] += 1;
    }
    return eval_key(Key{d, std::move(counts)});
  }

  int r() const { return r_; }

 private:
  struct Key {
    int d;
    std::vector<int> counts;
    auto operator<=>(const Key&) const = default;
  };

  int r_;
  std::map<Key, Rat> memo_;
  std::set<Key> in_progress_;

  static int total(const std::vector<int>& counts) {
    int s = 0;
    for (int c : counts) s += c;
    return s;
  }

  bool gate(const Key& k) const {
    int codim = 0;
    for (int a = 0; a <= r_; ++a) codim += a * k.counts[a];
    return codim == r_ + k.d * (r_ + 1) + total(k.counts) - 3;
  }

  Rat eval_key(Key key) {
    if (key.d < 0) throw std::domain_error("PrInvariants: negative degree");
    if (!gate(key)) return 0;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (in_progress_.count(key))
      throw integrity_error("PrInvariants: recursion cycle detected");
    in_progress_.insert(key);
    const Rat value = compute(key);
    in_progress_.erase(key);
    memo_.emplace(std::move(key), value);
    return value;
  }

  Rat compute(const Key& key) {
    const int n = total(key.counts);
    const int d = key.d;

    if (n <= 1) return 0;
    if (n == 2) return (d == 1 && key.counts[r_] == 2) ? 1 : 0;

    if (d == 0) {
      // Classical: three insertions pairing to the point class.
      return n == 3 ? 1 : 0;  // gate already forces sum of exponents = r
    }
    // Fundamental-class insertions vanish for positive degree.
    if (key.counts[0] > 0) return 0;
    // Divisor axiom.
    if (key.counts[1] > 0) {
      Key rest = key;
      rest.counts[1] -= 1;
      Rat sub = eval_key(rest);
      return Rat(d) * sub;
    }
    if (n == 3) return 1;  // gate forces degree one and full codimension

    // Reconstruction step via the four-point boundary equivalence: dissolve
    // one H off a chosen insertion, recombining onto a slot e4. The choice
    // e4 != a - 1 keeps the solved-for key out of the right-hand side.
    int a = -1, e4 = -1;
    for (int ca = r_; ca >= 2 && a < 0; --ca) {
      if (key.counts[ca] == 0) continue;
      for (int c4 = r_; c4 >= 2; --c4) {
        if (c4 == ca - 1) continue;
        if (key.counts[c4] == 0 || (c4 == ca && key.counts[ca] < 2)) continue;
        a = ca;
        e4 = c4;
        break;
      }
    }
    if (a < 0) throw integrity_error("PrInvariants: no admissible reconstruction slot");
    Key rest = key;
    rest.counts[a] -= 1;
    rest.counts[e4] -= 1;
    int e3 = 2;
    while (rest.counts[e3] == 0) ++e3;
    rest.counts[e3] -= 1;
    const std::vector<int>& B = rest.counts;

    // unknown = L(a-1, e3; 1, e4 | B) - [L(a-1, 1; e3, e4 | B) - unknown].
    Rat value = wdvv_sum(a - 1, e3, 1, e4, B, d, false) -
                wdvv_sum(a - 1, 1, e3, e4, B, d, true);
    return value;
  }

  // Sum over degree splittings, multiset splittings of B, and the diagonal
  // basis; skip_unknown drops the single term that recombines to the key
  // being solved for.
  Rat wdvv_sum(int x, int y, int u, int v, const std::vector<int>& B, int d,
               bool skip_unknown) {
    Rat total_sum = 0;
    std::vector<int> take(r_ + 1, 0);
    auto rec = [&](auto&& self, int idx, Int mult) -> void {
      if (idx == r_ + 1) {
        for (int d1 = 0; d1 <= d; ++d1) {
          const int d2 = d - d1;
          bool empty_take = true;
          for (int c : take)
            if (c) empty_take = false;
          for (int mu = 0; mu <= r_; ++mu) {
            if (skip_unknown && d1 == 0 && empty_take) continue;  // the solved-for term
            Key left{d1, take};
            left.counts[x] += 1;
            left.counts[y] += 1;
            left.counts[mu] += 1;
            if (!gate(left)) continue;
            Key right{d2, std::vector<int>(r_ + 1, 0)};
            for (int c = 0; c <= r_; ++c) right.counts[c] = B[c] - take[c];
            right.counts[r_ - mu] += 1;
            right.counts[u] += 1;
            right.counts[v] += 1;
            if (!gate(right)) continue;
            const Rat lv = eval_key(left);
            if (lv == 0) continue;
            const Rat rv = eval_key(right);
            if (rv == 0) continue;
            total_sum += Rat(mult) * lv * rv;
          }
        }
        return;
      }
      for (int c = 0; c <= B[idx]; ++c) {
        take[idx] = c;
        self(self, idx + 1, mult * binomial(B[idx], c));
      }
      take[idx] = 0;
    };
    rec(rec, 0, Int(1));
    return total_sum;
  }
};

/// Full table up to a degree bound; for the plane the point counts are the
/// classical curve counts.
struct PrRecursionResult {
  int r;
  int dmax;
  std::vector<Int> plane_counts;  // index d, r = 2 only
};

inline PrRecursionResult km_recursion_pr(int r, int dmax) {
  if (r < 2 || r > 3) throw unsupported_error("km_recursion_pr: r must be 2 or 3");
  if (dmax < 1 || dmax > 6) throw std::domain_error("km_recursion_pr: d must be in 1..6");
  PrInvariants table(r);
  PrRecursionResult res{r, dmax, {}};
  if (r == 2) {
    res.plane_counts.assign(dmax + 1, 0);
    for (int d = 1; d <= dmax; ++d) {
      std::vector<int> counts(r + 1, 0);
      counts[2] = 3 * d - 1;
      res.plane_counts[d] = as_integer(table.eval(d, counts));
    }
  } else {
    // Exercise the recursion across the grid of point/line insertions: the
    // gate forces #H^2 + 2 #H^3 = 4d.
    for (int d = 1; d <= dmax; ++d)
      for (int t3 = 0; t3 <= 2 * d; ++t3) {
        const int t2 = 4 * d - 2 * t3;
        if (t2 + t3 < 2) continue;
        std::vector<int> counts(r + 1, 0);
        counts[2] = t2;
        counts[3] = t3;
        table.eval(d, counts);
      }
  }
  return res;
}

}  // namespace gwrecon
