#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gwrecon/rational.hpp"
#include "gwrecon/schubert.hpp"

namespace gwrecon {

/// A moduli problem: flag target, marking count, multidegree.
struct SpaceSignature {
  FlagDescriptor target;
  int n = 0;
  std::vector<int> multidegree;

  SpaceSignature(FlagDescriptor t, int markings, std::vector<int> deg)
      : target(std::move(t)), n(markings), multidegree(std::move(deg)) {
    if (static_cast<int>(multidegree.size()) != target.h2())
      throw std::domain_error("SpaceSignature: multidegree length must equal h2 of the target");
    for (int d : multidegree)
      if (d < 0) throw std::domain_error("SpaceSignature: negative degree");
    if (n < 0) throw std::domain_error("SpaceSignature: negative marking count");
  }

  int total_degree() const {
    int s = 0;
    for (int d : multidegree) s += d;
    return s;
  }
  bool degree_zero() const { return total_degree() == 0; }

  bool nonempty() const { return !degree_zero() || n >= 3; }

  Rat lead_term() const {
    // 2^{n-1} prod (d_i + 1), exact (half-integral for n = 0).
    Rat r(1, 2);
    for (int i = 0; i < n; ++i) r *= 2;
    for (int d : multidegree) r *= (d + 1);
    return r;
  }
};

/// One side of a two-component degeneration.
struct SplitSide {
  std::vector<int> markings;  // sorted
  std::vector<int> degrees;

  bool stable() const {
    int total = 0;
    for (int d : degrees) total += d;
    return total > 0 || markings.size() >= 2;
  }
  auto operator<=>(const SplitSide&) const = default;
};

struct BoundarySplit {
  SplitSide first, second;  // first <= second
  bool symmetric = false;   // the two sides are equal as decorated sides

  std::string str() const {
    auto side = [](const SplitSide& s) {
      std::ostringstream os;
      os << '{';
      for (size_t i = 0; i < s.markings.size(); ++i) {
        if (i) os << ',';
        os << s.markings[i] + 1;
      }
      os << "|";
      for (size_t i = 0; i < s.degrees.size(); ++i) {
        if (i) os << ',';
        os << s.degrees[i];
      }
      os << '}';
      return os.str();
    };
    return side(first) + side(second);
  }
};

/// All stable unordered two-component splits, duplicate free.
inline std::vector<BoundarySplit> boundary_divisors(const SpaceSignature& sig) {
  if (!sig.nonempty()) throw std::domain_error("boundary_divisors: empty moduli space");
  const int n = sig.n;
  const int l = static_cast<int>(sig.multidegree.size());
  std::vector<BoundarySplit> out;

  std::vector<int> deg1(l, 0);
  auto emit_for_subset = [&](uint32_t mask) {
    auto rec = [&](auto&& self, int i) -> void {
      if (i == l) {
        SplitSide a, b;
        for (int j = 0; j < n; ++j) ((mask >> j) & 1u ? a : b).markings.push_back(j);
        a.degrees = deg1;
        b.degrees.resize(l);
        for (int j = 0; j < l; ++j) b.degrees[j] = sig.multidegree[j] - deg1[j];
        if (!a.stable() || !b.stable()) return;
        if (b < a) std::swap(a, b);
        out.push_back({a, b, a == b});
        return;
      }
      for (int v = 0; v <= sig.multidegree[i]; ++v) {
        deg1[i] = v;
        self(self, i + 1);
      }
      deg1[i] = 0;
    };
    rec(rec, 0);
  };
  for (uint32_t mask = 0; mask < (1u << n); ++mask) emit_for_subset(mask);

  std::sort(out.begin(), out.end(), [](const BoundarySplit& x, const BoundarySplit& y) {
    return std::tie(x.first, x.second) < std::tie(y.first, y.second);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const BoundarySplit& x, const BoundarySplit& y) {
                          return x.first == y.first && x.second == y.second;
                        }),
            out.end());
  return out;
}

/// Closed count of boundary divisors: [2^{n-1} prod(d_i+1)]+ - 1 - n.
inline Int boundary_count_formula(const SpaceSignature& sig) {
  return as_integer(bracket_plus(sig.lead_term()) - 1 - sig.n);
}

/// Dimension of the divisor class group of the moduli space.
inline Int dim_h2(const SpaceSignature& sig) {
  if (!sig.nonempty()) throw std::domain_error("dim_h2: empty moduli space");
  const int l = sig.target.h2();
  Rat v = bracket_plus(sig.lead_term()) - 1 - Rat(binomial(sig.n, 2)) +
          sig.target.h4() - Rat(binomial(l, 2));
  return as_integer(v);
}

struct CatalogEntry {
  std::string name;
  std::string kind;
  std::string params;
};

struct GeneratorCatalog {
  std::vector<CatalogEntry> entries;
  int relation_count = 0;

  Int net() const { return Int(entries.size()) - relation_count; }
};

/// Divisor generators: boundary splits, kappa classes, and for one or two
/// markings a single evaluation class.
inline GeneratorCatalog h2_generators(const SpaceSignature& sig) {
  if (!sig.nonempty()) throw std::domain_error("h2_generators: empty moduli space");
  for (int d : sig.multidegree)
    if (d < 1) throw std::domain_error("h2_generators: requires every degree component >= 1");
  GeneratorCatalog cat;
  for (const auto& split : boundary_divisors(sig))
    cat.entries.push_back({"boundary" + split.str(), "boundary", split.str()});

  const bool line_target = sig.target.is_projective_line();
  if (!line_target) {
    const int l = sig.target.h2();
    for (int i = 1; i <= l; ++i)
      cat.entries.push_back(
          {"kappa(c1(Q" + std::to_string(i) + ")^2)", "kappa_c1sq", std::to_string(i)});
    const auto ranks = sig.target.kernel_ranks();
    for (size_t i = 0; i < ranks.size(); ++i)
      if (ranks[i] >= 2)
        cat.entries.push_back(
            {"kappa(c2(K" + std::to_string(i) + "))", "kappa_c2K", std::to_string(i)});
    cat.relation_count += 1;  // the kappa relation
  }
  if (sig.n == 1 || sig.n == 2)
    cat.entries.push_back({"ev1*c1(Q1)", "evaluation", "1"});
  if (sig.n >= 3) cat.relation_count += sig.n * (sig.n - 3) / 2;
  return cat;
}

/// Coefficients of the kappa relation: kappa(c2(K_i)) with unit coefficient,
/// kappa(c1(Q_i)^2) with (d_{i-1}+d_{i+1})/(2 d_i) - 1, d_0 = d_{l+1} = 0.
struct KappaRelation {
  std::vector<Rat> c1sq_coeff;       // index i-1 for Q_i, i = 1..l
  std::vector<int> kernel_indices;   // i with rank K_i >= 2 (unit coefficient)
};

inline KappaRelation flageq_coefficients(const SpaceSignature& sig) {
  const int l = sig.target.h2();
  for (int d : sig.multidegree)
    if (d < 1) throw std::domain_error("flageq_coefficients: requires every degree >= 1");
  KappaRelation rel;
  auto deg = [&](int i) { return (i < 1 || i > l) ? 0 : sig.multidegree[i - 1]; };
  for (int i = 1; i <= l; ++i)
    rel.c1sq_coeff.push_back(Rat(deg(i - 1) + deg(i + 1), 2 * deg(i)) - 1);
  const auto ranks = sig.target.kernel_ranks();
  for (size_t i = 0; i < ranks.size(); ++i)
    if (ranks[i] >= 2) rel.kernel_indices.push_back(static_cast<int>(i));
  return rel;
}

/// Weights of the bidegree boundary relation on maps to a product of two
/// projective spaces: canonical (i,j) -> (i/d - j/e)^2, divisors identified
/// under (i,j) ~ (d-i, e-j).
inline std::map<std::pair<int, int>, Rat> bidegree_relation(int d, int e) {
  if (d < 1 || e < 1) throw std::domain_error("bidegree_relation: degrees must be >= 1");
  std::map<std::pair<int, int>, Rat> out;
  auto in_range = [&](std::pair<int, int> p) {
    return p.first >= 1 && p.first <= d && p.second >= 1 && p.second <= e;
  };
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= e; ++j) {
      const std::pair<int, int> p{i, j}, partner{d - i, e - j};
      if (in_range(partner) && partner > p) continue;  // emitted from the partner spelling
      out[p] = (Rat(i, d) - Rat(j, e)) * (Rat(i, d) - Rat(j, e));
    }
  return out;
}

namespace detail {

// Chains: three-component degenerations with distributed markings, filtered
// by stability, up to reversal. Marks are the labels 1..n placed on
// components 0,1,2.
struct Chain {
  int deg[3];
  std::vector<int> comp_of_mark;  // size n, values 0..2

  std::string str() const {
    std::ostringstream os;
    os << '(' << deg[0] << ',' << deg[1] << ',' << deg[2] << ')';
    if (!comp_of_mark.empty()) {
      os << '[';
      for (size_t i = 0; i < comp_of_mark.size(); ++i) {
        if (i) os << ',';
        os << comp_of_mark[i] + 1;
      }
      os << ']';
    }
    return os.str();
  }
};

inline std::vector<Chain> enumerate_chains(int n, int d) {
  std::vector<Chain> out;
  std::vector<std::string> seen;
  std::vector<int> marks(n, 0);
  auto stable = [&](const Chain& c) {
    for (int q = 0; q < 3; ++q) {
      if (c.deg[q] > 0) continue;
      int specials = (q == 1) ? 2 : 1;
      for (int v : c.comp_of_mark)
        if (v == q) ++specials;
      if (specials < 3) return false;
    }
    return true;
  };
  auto canonical = [&](Chain c) {
    Chain r = c;
    r.deg[0] = c.deg[2];
    r.deg[2] = c.deg[0];
    for (auto& v : r.comp_of_mark) v = 2 - v;
    return std::min(std::tie(c.deg[0], c.deg[1], c.deg[2], c.comp_of_mark),
                    std::tie(r.deg[0], r.deg[1], r.deg[2], r.comp_of_mark)) ==
                   std::tie(c.deg[0], c.deg[1], c.deg[2], c.comp_of_mark)
               ? c
               : r;
  };
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j + i <= d; ++j) {
      Chain c;
      c.deg[0] = i;
      c.deg[1] = j;
      c.deg[2] = d - i - j;
      auto rec = [&](auto&& self, int mark) -> void {
        if (mark == n) {
          c.comp_of_mark = marks;
          if (!stable(c)) return;
          Chain canon = canonical(c);
          auto key = canon.str();
          if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
            seen.push_back(key);
            out.push_back(canon);
          }
          return;
        }
        for (int q = 0; q < 3; ++q) {
          marks[mark] = q;
          self(self, mark + 1);
        }
      };
      rec(rec, 0);
    }
  return out;
}

}  // namespace detail

/// Codimension-two generator catalogs for maps to projective space or to a
/// Grassmannian, with zero, one or two markings.
inline GeneratorCatalog codim2_catalog(const FlagDescriptor& target, int n, int d) {
  if (d < 2) throw std::domain_error("codim2_catalog: degree must be at least 2");
  const bool grass = target.steps() == 1 && target.subspace_dims[0] >= 2;
  const bool proj = target.steps() == 1 && target.subspace_dims[0] == 1;
  if (!grass && !proj) throw unsupported_error("codim2_catalog: target must be P^r or G(k,N)");
  const int r = proj ? target.N - 1 : 0;
  if (grass) {
    const int k = target.subspace_dims[0];
    if (k < 3 || target.N - k < 3)
      throw unsupported_error("codim2_catalog: Grassmannian needs both ranks >= 3");
    if (n > 1) throw unsupported_error("codim2_catalog: Grassmannian supported for n in {0,1}");
  }
  if (n < 0 || n > 2) throw unsupported_error("codim2_catalog: n must be in {0,1,2}");

  GeneratorCatalog cat;
  const std::string pre = grass ? (n == 0 ? "D" : "E") : (n == 0 ? "A" : n == 1 ? "B" : "C");
  auto add = [&](const std::string& name, const std::string& kind, const std::string& params) {
    cat.entries.push_back({name, kind, params});
  };

  // Chains.
  for (const auto& c : detail::enumerate_chains(n, d))
    add(pre + ".1" + c.str(), "chain", c.str());

  const bool codim2_exists = grass || r >= 2;  // a second generator of H^4
  const bool codim3_exists = grass || r >= 3;

  auto split_name = [](int a, int b) { return std::to_string(a) + "," + std::to_string(b); };

  if (n == 0) {
    // Node to a divisor cycle.
    for (int a = 1; a <= d - a; ++a)
      add(pre + ".2.1[" + split_name(a, d - a) + "]", "node_divisor", split_name(a, d - a));
    // One component through a codimension-2 cycle (c1^2 flavour).
    if (codim2_exists)
      for (int a = 1; a <= d - 1; ++a)
        add(pre + ".2.2[" + split_name(a, d - a) + "]", "side_codim2", split_name(a, d - a));
    if (codim2_exists) add(pre + ".3.1", "interior", "c1^2 * c1^2");
    if (codim3_exists) add(pre + ".3.2", "interior", "c1^3");
    if (grass) {
      for (int a = 1; a <= d - 1; ++a)
        add("D.2[" + split_name(a, d - a) + "]", "side_c2", split_name(a, d - a));
      add("D.3.1", "interior", "c2 * c2");
      add("D.3.2", "interior", "c1^2 * c2");
      add("D.3.3", "interior", "c1 c2");
      add("D.3.4", "interior", "c3");
    }
  } else if (n == 1) {
    // Marked point on a divisor cycle, two components.
    for (int a = 1; a <= d - 1; ++a)
      add(pre + ".2.1[" + split_name(a, d - a) + "]", "marked_divisor_split",
          split_name(a, d - a));
    // One component through a codimension-2 cycle; marking on either side.
    if (codim2_exists)
      for (int a = 1; a <= d - 1; ++a)
        for (int mark = 0; mark < 2; ++mark)
          add(pre + ".2.2[" + split_name(a, d - a) + ";m" + std::to_string(mark + 1) + "]",
              "side_codim2_marked", split_name(a, d - a));
    if (codim2_exists) {
      add(pre + ".3.1", "interior", "ev codim2");
      add(pre + ".3.2", "interior", "ev divisor * codim2");
      add(pre + ".3.3", "interior", "c1^2 * c1^2");
    }
    if (codim3_exists) add(pre + ".3.4", "interior", "c1^3");
    if (codim2_exists) cat.relation_count += 1;  // marked-point relation
    if (grass) {
      for (int a = 1; a <= d - 1; ++a)
        for (int mark = 0; mark < 2; ++mark)
          add("E.2[" + split_name(a, d - a) + ";m" + std::to_string(mark + 1) + "]", "side_c2",
              split_name(a, d - a));
      add("E.3.1", "interior", "ev c2");
      add("E.3.2", "interior", "ev c1 * c2");
      add("E.3.3", "interior", "c2 * c2");
      add("E.3.4", "interior", "c1^2 * c2");
      add("E.3.5", "interior", "c1 c2");
      add("E.3.6", "interior", "c3");
      cat.relation_count += 1;  // second relation, c2 flavour
    }
  } else {
    // n == 2, projective target.
    if (codim2_exists)
      for (int a = 1; a <= d - 1; ++a)
        for (int dec = 0; dec < 2; ++dec)
          add("C.2.1[" + split_name(a, d - a) + ";e" + std::to_string(dec + 1) + "]",
              "split_marks_apart_codim2", split_name(a, d - a));
    for (int a = 1; a <= d - 1; ++a)
      add("C.2.2[" + split_name(a, d - a) + "]", "split_marks_apart_node_divisor",
          split_name(a, d - a));
    add("C.2.3", "degree_zero_pair_on_divisor", "0," + std::to_string(d));
    if (codim2_exists)
      for (int a = 0; a <= d - 1; ++a)
        add("C.2.4[" + split_name(a, d - a) + "]", "marks_together_other_codim2",
            split_name(a, d - a));
    if (codim2_exists) {
      add("C.3[1]", "interior", "ev1 codim2");
      add("C.3[2]", "interior", "ev2 codim2");
    }
  }
  return cat;
}

}  // namespace gwrecon
