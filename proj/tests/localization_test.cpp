#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "gwrecon/invariants.hpp"

using namespace gwrecon;

namespace {
Rat ev(Grassmannian g, int d, std::vector<Partition> ins) {
  return oracle_eval(InvariantKey(g, d, std::move(ins)));
}
const Grassmannian P1{1, 2}, P2{1, 3}, P3{1, 4}, G24{2, 4}, G25{2, 5};
}  // namespace

TEST_CASE("projective line and plane spot invariants") {
  REQUIRE(ev(P1, 1, {{1}, {1}, {1}}) == 1);
  REQUIRE(ev(P1, 1, {{1}, {1}, {1}, {1}}) == 1);  // divisor axiom, d = 1

  REQUIRE(ev(P2, 1, {{2}, {2}}) == 1);            // line through two points
  REQUIRE(ev(P2, 1, {{2}, {2}, {1}}) == 1);
  REQUIRE(ev(P2, 1, {{2}, {2}, {1}, {1}}) == 1);
  REQUIRE(ev(P2, 2, {{2}, {2}, {2}, {2}, {2}}) == 1);   // one conic through five points
  REQUIRE(ev(P2, 3, {{2}, {2}, {2}, {2}, {2}, {2}, {2}, {2}}) == 12);
}

TEST_CASE("projective three-space spot invariants") {
  REQUIRE(ev(P3, 1, {{3}, {3}}) == 1);
  REQUIRE(ev(P3, 1, {{2}, {2}, {2}, {2}}) == 2);  // lines meeting four lines
  // Four general points are not coplanar, so no conic passes through them.
  REQUIRE(ev(P3, 2, {{3}, {3}, {3}, {3}}) == 0);
  // Conics meeting eight general lines.
  REQUIRE(ev(P3, 2, {{2}, {2}, {2}, {2}, {2}, {2}, {2}, {2}}) == 92);
  // One twisted cubic through six general points.
  REQUIRE(ev(P3, 3, {{3}, {3}, {3}, {3}, {3}, {3}}) == 1);
}

TEST_CASE("gate failures return zero") {
  REQUIRE(ev(G24, 0, {{1}, {1}, {2, 2}}) == 0);
  REQUIRE(ev(G24, 1, {{2}, {2}, {2, 2}}) == 0);
  REQUIRE(ev(P2, 1, {{2}, {2}, {2}}) == 0);
}

TEST_CASE("Grassmannian spot invariants") {
  REQUIRE(ev(G24, 1, {{2}, {1, 1}, {2, 2}}) == 1);
  REQUIRE(ev(G24, 1, {{1}, {2}, {1, 1}, {2, 2}}) == 1);  // divisor axiom
  REQUIRE(ev(G24, 2, {{2, 2}, {2, 2}, {2, 2}}) == 1);
  REQUIRE(ev(G24, 1, {{2, 1}, {2, 2}}) == 1);            // two-point, degree one
  REQUIRE(ev(G24, 1, {{2, 1}, {2, 1}, {2}}) == 1);
  REQUIRE(ev(G24, 1, {{1}, {2, 1}, {2, 1}, {2}}) == ev(G24, 1, {{2, 1}, {2, 1}, {2}}));
}

TEST_CASE("three-point layer agrees with the quantum product everywhere") {
  for (Grassmannian g : {G24, G25}) {
    for (const auto& a : g.full_basis())
      for (const auto& b : g.full_basis())
        for (const auto& c : g.full_basis()) {
          const int excess = a.weight() + b.weight() + c.weight() - g.dim();
          if (excess < 0 || excess % g.N != 0) continue;
          const int d = excess / g.N;
          Rat expected = d == 0 ? integrate(product(product(g, a, b), CohClass::basis_class(g, c)))
                                : quantum_3pt_invariant(g, a, b, c, d);
          INFO(g.N << " " << a.str() << "|" << b.str() << "|" << c.str() << " d=" << d);
          REQUIRE(ev(g, d, {a, b, c}) == expected);
        }
  }
}

TEST_CASE("divisor axiom on four-point keys") {
  for (Grassmannian g : {G24, G25}) {
    for (int d = 1; d <= 2; ++d) {
      const int needed = g.dim() + d * g.N + 4 - 3;
      for (const auto& a : g.full_basis())
        for (const auto& b : g.full_basis())
          for (const auto& c : g.full_basis()) {
            if (1 + a.weight() + b.weight() + c.weight() != needed) continue;
            INFO(g.N << " d=" << d << " " << a.str() << "|" << b.str() << "|" << c.str());
            REQUIRE(ev(g, d, {{1}, a, b, c}) == Rat(d) * ev(g, d, {a, b, c}));
          }
    }
  }
}

TEST_CASE("invariant table integrity and cache round-trip") {
  auto table = std::make_shared<InvariantTable>();
  InvariantKey key(G24, 1, {{2}, {1, 1}, {2, 2}});
  table->store(key, Rat(1), "oracle");
  table->store(key, Rat(1), "recursion");  // idempotent
  REQUIRE_THROWS_AS(table->store(key, Rat(2), "oracle"), integrity_error);

  table->store(InvariantKey(G24, 2, {{2, 2}, {2, 2}, {2, 2}}), Rat(1), "oracle");
  const std::string path = "cache_roundtrip_test.json";
  table->save_file(path);
  InvariantTable fresh;
  fresh.load_file(path);
  REQUIRE(fresh.size() == table->size());
  REQUIRE(fresh.lookup(key) == Rat(1));
  std::filesystem::remove(path);

  nlohmann::json bad = {{"schema", "other"}, {"entries", nlohmann::json::array()}};
  InvariantTable t2;
  REQUIRE_THROWS_AS(t2.load_json(bad), std::domain_error);
}

TEST_CASE("oracle rejects unsupported targets") {
  REQUIRE_THROWS_AS(ev(Grassmannian{3, 6}, 1, {{1}, {1}, {1}}), unsupported_error);
  REQUIRE_THROWS_AS(ev(G24, 4, {{2, 2}, {2, 2}, {2, 2}, {2, 2}, {2, 2}, {1, 1}}),
                    resource_limit_error);
}
