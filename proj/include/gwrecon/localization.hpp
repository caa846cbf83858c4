#pragma once

#include <random>
#include <vector>

#include "gwrecon/schubert.hpp"

namespace gwrecon {
namespace localization {

using FixedPoint = std::vector<int>;  // sorted k-subset of {0..N-1}

inline std::vector<FixedPoint> fixed_points(Grassmannian g) {
  std::vector<FixedPoint> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == g.k) {
      out.push_back(cur);
      return;
    }
    for (int i = next; i < g.N; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline bool joined_by_line(const FixedPoint& a, const FixedPoint& b) {
  int common = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return common == static_cast<int>(a.size()) - 1;
}

// The index moved when passing from I to the adjacent J.
inline std::pair<int, int> moved_indices(const FixedPoint& I, const FixedPoint& J) {
  int from = -1, to = -1;
  for (int x : I)
    if (std::find(J.begin(), J.end(), x) == J.end()) from = x;
  for (int x : J)
    if (std::find(I.begin(), I.end(), x) == I.end()) to = x;
  return {from, to};
}

struct WeightData {
  Grassmannian g;
  std::vector<Int> lambda;  // one weight per coordinate
  std::vector<FixedPoint> points;

  Rat euler_tangent(const FixedPoint& I) const {
    Rat e = 1;
    std::vector<bool> in(g.N, false);
    for (int i : I) in[i] = true;
    for (int i : I)
      for (int m = 0; m < g.N; ++m)
        if (!in[m]) e *= Rat(lambda[m] - lambda[i]);
    return e;
  }

  // Equivariant Chern classes of the quotient at a fixed point.
  std::vector<Rat> chern_q_at(const FixedPoint& I) const {
    std::vector<bool> in(g.N, false);
    for (int i : I) in[i] = true;
    std::vector<Rat> e = {Rat(1)};
    for (int m = 0; m < g.N; ++m) {
      if (in[m]) continue;
      e.push_back(0);
      for (size_t j = e.size() - 1; j >= 1; --j) e[j] += e[j - 1] * Rat(lambda[m]);
    }
    e.resize(g.N - g.k + 1, Rat(0));
    return e;
  }

  // Restriction of the standard polynomial lift of a Schubert class.
  Rat schubert_at(const Partition& p, const FixedPoint& I) const {
    const auto cq = chern_q_at(I);
    auto h = [&](int m) -> Rat {
      if (m < 0) return 0;
      if (m == 0) return 1;
      if (m > g.N - g.k) return 0;
      return cq[m];
    };
    Rat total = 0;
    for (const auto& [sign, word] : detail::jacobi_trudi_words(p)) {
      Rat term = sign;
      for (int m : word) term *= h(m);
      total += term;
    }
    return total;
  }

  // Tangent weight at I of the invariant line towards the adjacent J.
  Rat line_tangent(const FixedPoint& I, const FixedPoint& J) const {
    auto [from, to] = moved_indices(I, J);
    return Rat(lambda[to] - lambda[from]);
  }

  // Product of the nonzero torus weights of the sections of the pulled-back
  // tangent bundle on a degree-delta cover of the line through I and J.
  Rat edge_factor(const FixedPoint& I, const FixedPoint& J, int delta) const {
    auto [i0, j0] = moved_indices(I, J);
    std::vector<bool> inIJ(g.N, false);
    for (int x : I) inIJ[x] = true;
    for (int x : J) inIJ[x] = true;
    std::vector<int> shared;
    for (int x : I)
      if (x != i0) shared.push_back(x);

    Rat prod = 1;
    auto mul_nonzero = [&](const Rat& w) {
      if (w == 0) throw integrity_error("edge_factor: unexpected zero weight");
      prod *= w;
    };
    // Hom(shared line, outside line): one section each.
    for (int s : shared)
      for (int m = 0; m < g.N; ++m)
        if (!inIJ[m]) mul_nonzero(Rat(lambda[m] - lambda[s]));
    // Hom(shared line, moving quotient line): degree-delta sections.
    for (int s : shared)
      for (int r = 0; r <= delta; ++r)
        mul_nonzero(Rat((delta - r) * lambda[j0] + r * lambda[i0], delta) - lambda[s]);
    // Hom(moving subline, outside line).
    for (int m = 0; m < g.N; ++m) {
      if (inIJ[m]) continue;
      for (int r = 0; r <= delta; ++r)
        mul_nonzero(Rat(lambda[m]) - Rat((delta - r) * lambda[i0] + r * lambda[j0], delta));
    }
    // Hom(moving subline, moving quotient line): skip the zero weight.
    const Rat alpha = Rat(lambda[j0] - lambda[i0]);
    for (int r = 0; r <= 2 * delta; ++r) {
      if (r == delta) continue;
      prod *= alpha * Rat(delta - r, delta);
    }
    return prod;
  }
};

// Tree skeletons with up to three edges; vertex permutations generating the
// shape symmetries.
struct Shape {
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> autos;
};

inline const std::vector<Shape>& shapes_by_edges(int E) {
  static const std::vector<std::vector<Shape>> table = {
      {},
      {Shape{{{0, 1}}, {{0, 1}, {1, 0}}}},
      {Shape{{{0, 1}, {1, 2}}, {{0, 1, 2}, {2, 1, 0}}}},
      {Shape{{{0, 1}, {0, 2}, {0, 3}},
             {{0, 1, 2, 3},
              {0, 1, 3, 2},
              {0, 2, 1, 3},
              {0, 2, 3, 1},
              {0, 3, 1, 2},
              {0, 3, 2, 1}}},
       Shape{{{0, 1}, {1, 2}, {2, 3}}, {{0, 1, 2, 3}, {3, 2, 1, 0}}}},
  };
  if (E < 1 || E > 3) throw resource_limit_error("localization: more than three edges needed");
  return table[E];
}

/// Exact integral of a product of evaluation classes over the space of
/// degree-d stable maps, by summation over decorated fixed graphs.
inline Rat graph_sum(Grassmannian g, int d, const std::vector<Partition>& insertions,
                     const std::vector<Int>& lambda) {
  WeightData W{g, lambda, fixed_points(g)};
  const int n = static_cast<int>(insertions.size());
  Rat total = 0;

  // Degree-zero: a single vertex carrying everything.
  if (d == 0) throw std::domain_error("graph_sum: degree must be positive");

  for (int E = 1; E <= d; ++E) {
    for (const auto& shape : shapes_by_edges(E)) {
      const int V = E + 1;
      // Edge degree assignments.
      std::vector<std::vector<int>> degree_lists;
      std::vector<int> degs(E, 1);
      auto drec = [&](auto&& self, int e, int left) -> void {
        if (e == E) {
          if (left == 0) degree_lists.push_back(degs);
          return;
        }
        for (int v = 1; v <= left - (E - 1 - e); ++v) {
          degs[e] = v;
          self(self, e + 1, left - v);
        }
      };
      drec(drec, 0, d);

      // Vertex labelings by fixed points, adjacent labels joined by a line.
      std::vector<int> lab(V, -1);
      const int P = static_cast<int>(W.points.size());
      auto canonical_rep = [&](const std::vector<int>& labels,
                               const std::vector<int>& degrees) {
        std::pair<std::vector<int>, std::vector<int>> best{labels, degrees};
        int aut = 0;
        for (const auto& pi : shape.autos) {
          std::vector<int> pl(V);
          for (int v = 0; v < V; ++v) pl[pi[v]] = labels[v];
          std::vector<int> pd(E);
          for (int e = 0; e < E; ++e) {
            auto [a, b] = shape.edges[e];
            int pa = pi[a], pb = pi[b];
            if (pa > pb) std::swap(pa, pb);
            for (int f = 0; f < E; ++f) {
              auto [c, cc] = shape.edges[f];
              if (c == pa && cc == pb) pd[f] = degrees[e];
            }
          }
          if (pl == labels && pd == degrees) ++aut;
          if (std::tie(pl, pd) < std::tie(best.first, best.second)) best = {pl, pd};
        }
        return std::make_tuple(best.first == labels && best.second == degrees, aut);
      };

      auto lrec = [&](auto&& self, int v) -> void {
        if (v == V) {
          for (const auto& degrees : degree_lists) {
            auto [is_canonical, aut] = canonical_rep(lab, degrees);
            if (!is_canonical) continue;

            // Flags per vertex.
            std::vector<std::vector<Rat>> omega(V);
            for (int e = 0; e < E; ++e) {
              auto [a, b] = shape.edges[e];
              omega[a].push_back(W.line_tangent(W.points[lab[a]], W.points[lab[b]]) /
                                 degrees[e]);
              omega[b].push_back(W.line_tangent(W.points[lab[b]], W.points[lab[a]]) /
                                 degrees[e]);
            }
            Rat contrib = 1;
            for (int e = 0; e < E; ++e)
              contrib /= W.edge_factor(W.points[lab[shape.edges[e].first]],
                                       W.points[lab[shape.edges[e].second]], degrees[e]) *
                         degrees[e];
            contrib /= aut;

            std::vector<Rat> A(V, Rat(0));
            for (int v2 = 0; v2 < V; ++v2) {
              const int F = static_cast<int>(omega[v2].size());
              Rat prod_omega = 1;
              for (const auto& w : omega[v2]) {
                if (w == 0) throw integrity_error("graph_sum: zero flag weight");
                A[v2] += Rat(1) / w;
                prod_omega *= w;
              }
              // Vertex factor A^{F-3}/prod(omega), with Euler class powers.
              Rat vertex;
              if (F >= 3) {
                Rat apow = 1;
                for (int t = 0; t < F - 3; ++t) apow *= A[v2];
                vertex = apow / prod_omega;
              } else if (F == 2) {
                if (A[v2] == 0) throw integrity_error("graph_sum: degenerate weights");
                vertex = Rat(1) / (A[v2] * prod_omega);
              } else {
                vertex = omega[v2][0];
              }
              contrib *= vertex;
              const Rat eT = W.euler_tangent(W.points[lab[v2]]);
              for (int t = 0; t < F - 1; ++t) contrib *= eT;
            }
            for (int leg = 0; leg < n; ++leg) {
              Rat s = 0;
              for (int v2 = 0; v2 < V; ++v2)
                s += A[v2] * W.schubert_at(insertions[leg], W.points[lab[v2]]);
              contrib *= s;
            }
            total += contrib;
          }
          return;
        }
        for (int p = 0; p < P; ++p) {
          bool ok = true;
          for (int e = 0; e < static_cast<int>(shape.edges.size()) && ok; ++e) {
            auto [a, b] = shape.edges[e];
            if (b == v && lab[a] >= 0) ok = joined_by_line(W.points[lab[a]], W.points[p]);
            if (a == v && lab[b] >= 0) ok = joined_by_line(W.points[lab[b]], W.points[p]);
          }
          if (!ok) continue;
          lab[v] = p;
          self(self, v + 1);
          lab[v] = -1;
        }
      };
      lrec(lrec, 0);
    }
  }
  return total;
}

/// Localization evaluation with two independent weight systems; both runs
/// must agree and the result must be an integer.
inline Rat evaluate(Grassmannian g, int d, const std::vector<Partition>& insertions,
                    uint64_t seed = 0x5eed5eedULL) {
  std::mt19937_64 rng(seed + g.N * 1000003ULL + g.k * 17ULL + d);
  auto draw = [&]() {
    std::vector<Int> lambda(g.N);
    std::uniform_int_distribution<long long> dist(1, 1'000'000);
    while (true) {
      std::vector<long long> raw(g.N);
      bool distinct = true;
      for (auto& x : raw) x = dist(rng);
      std::sort(raw.begin(), raw.end());
      for (int i = 0; i + 1 < g.N; ++i)
        if (raw[i] == raw[i + 1]) distinct = false;
      if (!distinct) continue;
      for (int i = 0; i < g.N; ++i) lambda[i] = raw[i];
      return lambda;
    }
  };
  for (int attempt = 0; attempt < 6; ++attempt) {
    try {
      const Rat a = graph_sum(g, d, insertions, draw());
      const Rat b = graph_sum(g, d, insertions, draw());
      if (a != b)
        throw integrity_error("localization: result depends on the weight choice");
      if (!is_integer(a)) throw integrity_error("localization: non-integer invariant " + a.str());
      return a;
    } catch (const integrity_error&) {
      if (attempt == 5) throw;
    }
  }
  throw integrity_error("localization: unreachable");
}

}  // namespace localization
}  // namespace gwrecon
