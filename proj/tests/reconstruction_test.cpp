#include <catch2/catch_amalgamated.hpp>

#include "gwrecon/reconstruction.hpp"

using namespace gwrecon;

namespace {
const Grassmannian G24{2, 4}, G25{2, 5};

// Every gate-passing key with the given marking and degree bounds.
std::vector<InvariantKey> gate_keys(Grassmannian g, int nmax, int dmax) {
  std::vector<InvariantKey> keys;
  const auto basis = g.full_basis();
  for (int d = 0; d <= dmax; ++d)
    for (int n = 3; n <= nmax; ++n) {
      std::vector<size_t> idx(n, 0);
      auto rec = [&](auto&& self, int slot, size_t from, int codim_left) -> void {
        if (slot == n) {
          if (codim_left != 0) return;
          std::vector<Partition> ins;
          for (int i = 0; i < n; ++i) ins.push_back(basis[idx[i]]);
          keys.emplace_back(g, d, ins);
          return;
        }
        for (size_t b = from; b < basis.size(); ++b) {
          const int w = basis[b].weight();
          if (w > codim_left) continue;
          idx[slot] = b;
          self(self, slot + 1, b, codim_left - w);
        }
        return;
      };
      const int needed = g.dim() + d * g.fano_index() + n - 3;
      rec(rec, 0, 0, needed);
    }
  return keys;
}
}  // namespace

TEST_CASE("reconstruction spot values") {
  auto provider = base_provider_vanishing(4, oracle_provider());
  GrassmannReconstructor rec(G24, provider);

  REQUIRE(rec.evaluate(InvariantKey(G24, 1, {{1}, {2}, {1, 1}, {2, 2}})) == 1);
  REQUIRE(rec.evaluate(InvariantKey(G24, 1, {{1}, {2}, {2}, {2, 2}})) == 0);
  // Gate failure.
  REQUIRE(rec.evaluate(InvariantKey(G24, 1, {{1}, {1}, {1}})) == 0);
}

TEST_CASE("vanishing provider") {
  BaseProvider trap;
  trap.eval = [](const CohClass&, const CohClass&, int, int) -> Rat {
    throw std::runtime_error("fallback should not be consulted");
  };
  auto vanish = base_provider_vanishing(7, trap);
  // Seven-dimensional ambient space, four markings, degree three: forced zero.
  CohClass one = CohClass::unit(Grassmannian{2, 7});
  REQUIRE(vanish.eval(one, one, 2, 3) == 0);
  // Degree one defers.
  auto fallback_called = base_provider_vanishing(
      7, BaseProvider{[](const CohClass&, const CohClass&, int, int) { return Rat(7); }});
  REQUIRE(fallback_called.eval(one, one, 2, 1) == 7);
  // Degree two: the bound degenerates, so it defers too.
  REQUIRE(fallback_called.eval(one, one, 4, 2) == 7);
}

TEST_CASE("reconstruction agrees with the oracle on the full grid") {
  for (Grassmannian g : {G24, G25}) {
    auto provider = base_provider_vanishing(g.N, oracle_provider());
    GrassmannReconstructor rec(g, provider);
    auto keys = gate_keys(g, 5, 2);
    INFO("grid size " << keys.size());
    for (const auto& key : keys) {
      INFO(key.str());
      REQUIRE(rec.evaluate(key) == oracle_eval(key));
    }
  }
}

TEST_CASE("insertion symmetry") {
  auto provider = base_provider_vanishing(4, oracle_provider());
  GrassmannReconstructor rec(G24, provider);
  // Keys canonicalize, so scrambled insertion orders give the same value.
  InvariantKey a(G24, 1, {{2}, {1, 1}, {2, 2}});
  InvariantKey b(G24, 1, {{2, 2}, {2}, {1, 1}});
  REQUIRE(a == b);
  REQUIRE(rec.evaluate(a) == rec.evaluate(b));
}
