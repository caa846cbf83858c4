#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gwrecon/modspace.hpp"
#include "gwrecon/symgroup.hpp"

namespace gwrecon {

/// Decorated tree indexing a torus-fixed locus for maps to the line:
/// vertices carry the labels 0/1 of the two fixed points, edges carry
/// covering degrees, adjacent labels differ.
struct P1Graph {
  std::vector<int> label;                          // per vertex, 0 or 1
  std::vector<std::pair<int, int>> edges;          // vertex pairs
  std::vector<int> edge_degree;                    // per edge, >= 1

  int vertex_count() const { return static_cast<int>(label.size()); }
  int total_degree() const {
    int s = 0;
    for (int d : edge_degree) s += d;
    return s;
  }

  int valency(int v) const {
    int c = 0;
    for (const auto& [a, b] : edges)
      if (a == v || b == v) ++c;
    return c;
  }

  /// d - u + s : u counts label-1 vertices of valency one, s those of
  /// valency at least three.
  int negative_weights() const {
    int u = 0, s = 0;
    for (int v = 0; v < vertex_count(); ++v) {
      if (label[v] != 1) continue;
      const int val = valency(v);
      if (val == 1) ++u;
      if (val >= 3) ++s;
    }
    return total_degree() - u + s;
  }

  /// Canonical encoding: rooted encodings (label, sorted decorated child
  /// encodings) minimized over root choices.
  std::string canonical() const {
    const int V = vertex_count();
    std::vector<std::vector<std::pair<int, int>>> adj(V);  // (neighbour, degree)
    for (size_t e = 0; e < edges.size(); ++e) {
      adj[edges[e].first].push_back({edges[e].second, edge_degree[e]});
      adj[edges[e].second].push_back({edges[e].first, edge_degree[e]});
    }
    auto encode = [&](auto&& self, int v, int parent) -> std::string {
      std::vector<std::string> kids;
      for (auto [w, deg] : adj[v])
        if (w != parent) kids.push_back(std::to_string(deg) + ":" + self(self, w, v));
      std::sort(kids.begin(), kids.end());
      std::string s = "(" + std::to_string(label[v]);
      for (const auto& k : kids) s += "," + k;
      return s + ")";
    };
    std::string best;
    for (int root = 0; root < V; ++root) {
      std::string s = encode(encode, root, -1);
      if (best.empty() || s < best) best = s;
    }
    return best;
  }
};

/// All fixed graphs of total degree d, bucketed by negative-weight count.
struct P1Census {
  std::vector<Int> buckets;        // index = negative-weight count, up to max_neg
  std::vector<P1Graph> graphs;     // every graph, any negative count
};

inline P1Census p1_graph_census(int d, int max_neg = 2, int bound = 10) {
  if (d < 2) throw std::domain_error("p1_graph_census: degree must be at least 2");
  if (d > bound)
    throw resource_limit_error("p1_graph_census: degree exceeds bound " + std::to_string(bound));

  // Grow trees one decorated leaf at a time, deduplicating canonically.
  // Attaching a leaf never lowers the negative-weight count, so everything
  // above max_neg can be pruned outright.
  std::map<std::string, P1Graph> all;
  std::vector<P1Graph> frontier;
  for (int lbl : {0, 1}) {
    P1Graph g;
    g.label = {lbl};
    all.emplace(g.canonical(), g);
    frontier.push_back(g);
  }
  while (!frontier.empty()) {
    std::vector<P1Graph> next;
    for (const auto& g : frontier) {
      for (int v = 0; v < g.vertex_count(); ++v) {
        for (int deg = 1; g.total_degree() + deg <= d; ++deg) {
          P1Graph h = g;
          h.label.push_back(1 - g.label[v]);
          h.edges.push_back({v, h.vertex_count() - 1});
          h.edge_degree.push_back(deg);
          if (h.negative_weights() > max_neg) continue;
          auto [it, fresh] = all.emplace(h.canonical(), h);
          if (fresh) next.push_back(h);
        }
      }
    }
    frontier = std::move(next);
  }

  P1Census census;
  census.buckets.assign(max_neg + 1, 0);
  for (const auto& [key, g] : all) {
    if (g.total_degree() != d) continue;
    const int neg = g.negative_weights();
    if (neg > max_neg) continue;
    census.graphs.push_back(g);
    census.buckets[neg] += 1;
  }
  return census;
}

/// Ledger for the middle cohomology of unmarked degree-d maps to the line,
/// d = 2k even: three-component boundary count, the one-negative-weight
/// locus term, the two-negative-weight graph count, and their total k^2.
struct H4Ledger {
  Int count_bijl;
  Int h2_term;
  Int two_neg;
  Int total;
};

inline H4Ledger h4_ledger_p1(int d) {
  if (d < 2 || d > 12) throw std::domain_error("h4_ledger_p1: d must be in 2..12");
  if (d % 2 != 0) throw unsupported_error("h4_ledger_p1: odd degrees are not supported");
  const int k = d / 2;

  Int count_bijl = 0;
  for (int i = 2; i <= d; ++i)
    for (int l = i; l <= d; ++l) {
      const int j = d - i - l;
      if (j >= 1) ++count_bijl;
    }

  // Invariants of the one-negative-weight locus, a quotient of the moduli of
  // d-1 marked points; degenerate (a point) for d = 2.
  const Int h2_term = (d >= 4) ? invariant_dim(1, {d - 2}) : Int(0);
  const Int two_neg = p1_graph_census(d, 2, 12).buckets[2];

  H4Ledger ledger{count_bijl, h2_term, two_neg, count_bijl + h2_term + two_neg};
  if (ledger.total != Int(k) * k)
    throw integrity_error("h4_ledger_p1: total differs from k^2 at d = " + std::to_string(d));
  if (count_bijl != Int(k - 1) * (k - 2))
    throw integrity_error("h4_ledger_p1: boundary count differs from (k-1)(k-2)");
  return ledger;
}

/// Graph-family counts for flag targets: the big fixed locus plus the four
/// one-negative-weight families, which together exhaust the divisor rank.
struct FlagFamilyCounts {
  Int big_locus;
  Int family_A;
  Int family_B;
  Int family_CDE;
  Int total;
};

inline FlagFamilyCounts flag_family_counts(const SpaceSignature& sig) {
  for (int d : sig.multidegree)
    if (d < 1) throw std::domain_error("flag_family_counts: requires every degree >= 1");
  const int l = sig.target.h2();
  const int n = sig.n;
  const int frak_a =
      static_cast<int>(std::count(sig.multidegree.begin(), sig.multidegree.end(), 1));

  const Int big = as_integer(bracket_plus(sig.lead_term()) - 1 - Rat(Int(l) * n) -
                             Rat(binomial(l + 1, 2)) - Rat(binomial(n, 2)) + frak_a);
  const Int fam_a = Int(n) * l;
  const Int fam_b = Int(l) - frak_a;
  const Int fam_cde = sig.target.h4();
  FlagFamilyCounts counts{big, fam_a, fam_b, fam_cde, big + fam_a + fam_b + fam_cde};
  if (counts.total != dim_h2(sig))
    throw integrity_error("flag_family_counts: family total differs from the divisor rank");
  return counts;
}

/// Betti transfer between the Grassmannian and projective three-space
/// censuses: catalog-net gaps for zero and one marking, plus the
/// five-graph lower-bound assembly for d >= 3.
struct TransferCheck {
  Int gap_n0;            // net(G) - net(P^3), must equal d + 3
  Int gap_n1;            // same with one marking, must equal 2d + 3
  Int five_graph_bound;  // invariant_dim(1,(d-1)) + 6, d >= 3 only
  bool five_graph_matches;
};

inline TransferCheck betti_transfer_check(int d, int grass_k = 3, int grass_N = 6) {
  if (d < 2 || d > 8) throw resource_limit_error("betti_transfer_check: d must be in 2..8");
  const auto p3 = FlagDescriptor::projective_space(3);
  const auto g = FlagDescriptor::grassmannian(grass_k, grass_N);

  const Int gap0 = codim2_catalog(g, 0, d).net() - codim2_catalog(p3, 0, d).net();
  const Int gap1 = codim2_catalog(g, 1, d).net() - codim2_catalog(p3, 1, d).net();

  TransferCheck check{gap0, gap1, 0, true};
  if (gap0 != d + 3)
    throw integrity_error("betti_transfer_check: unmarked gap differs from d + 3");
  if (gap1 != 2 * d + 3)
    throw integrity_error("betti_transfer_check: one-marking gap differs from 2d + 3");
  if (d >= 3) {
    check.five_graph_bound = invariant_dim(1, {d - 1}) + 6;
    check.five_graph_matches = (check.five_graph_bound == d + 3);
    if (!check.five_graph_matches)
      throw integrity_error("betti_transfer_check: five-graph bound differs from d + 3");
  }
  return check;
}

}  // namespace gwrecon
