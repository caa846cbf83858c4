#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "gwrecon/schubert.hpp"

using namespace gwrecon;

namespace {

// Independent product oracle: Littlewood-Richardson coefficients by direct
// enumeration of lattice-word skew tableaux of shape nu/lam with content mu.
bool contains(const Partition& nu, const Partition& lam) {
  if (lam.length() > nu.length()) return false;
  for (int i = 0; i < lam.length(); ++i)
    if (lam.part(i) > nu.part(i)) return false;
  return true;
}

Int lr_coefficient(const Partition& lam, const Partition& mu, const Partition& nu) {
  if (!contains(nu, lam)) return 0;
  if (nu.weight() != lam.weight() + mu.weight()) return 0;
  // Cells in reverse reading order: rows top to bottom, right to left.
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < nu.length(); ++i)
    for (int j = nu.part(i) - 1; j >= lam.part(i); --j) cells.emplace_back(i, j);
  if (cells.empty()) return mu.weight() == 0 ? 1 : 0;

  const int rows = nu.length();
  const int vmax = std::max(1, mu.length());
  std::vector<std::vector<int>> fill(rows);
  for (int i = 0; i < rows; ++i) fill[i].assign(nu.part(i), 0);
  std::vector<int> remaining(vmax, 0);
  for (int i = 0; i < mu.length(); ++i) remaining[i] = mu.part(i);
  std::vector<int> cnt(vmax + 1, 0);

  Int count = 0;
  auto rec = [&](auto&& self, size_t idx) -> void {
    if (idx == cells.size()) {
      count += 1;
      return;
    }
    auto [r, c] = cells[idx];
    for (int v = 1; v <= vmax; ++v) {
      if (remaining[v - 1] == 0) continue;
      // Lattice: after placing v the prefix counts stay weakly decreasing.
      if (v > 1 && cnt[v] + 1 > cnt[v - 1]) continue;
      // Row weakly increases left to right: right neighbour already filled.
      if (c + 1 < nu.part(r) && v > fill[r][c + 1]) continue;
      // Column strictly increases: cell above filled on an earlier row.
      if (r > 0 && c >= lam.part(r - 1) && fill[r - 1][c] >= v) continue;
      fill[r][c] = v;
      remaining[v - 1]--;
      cnt[v]++;
      self(self, idx + 1);
      cnt[v]--;
      remaining[v - 1]++;
      fill[r][c] = 0;
    }
  };
  rec(rec, 0);
  return count;
}

CohClass lr_product(Grassmannian g, const Partition& a, const Partition& b) {
  CohClass out(g);
  for (const Partition& nu : g.basis(a.weight() + b.weight())) {
    Int c = lr_coefficient(a, b, nu);
    if (c != 0) out.add(nu, Rat(c));
  }
  return out;
}

}  // namespace

TEST_CASE("pieri on G(2,4)") {
  Grassmannian g{2, 4};
  auto s1s1 = pieri(g, Partition{1}, 1);
  REQUIRE(s1s1.coeffs.size() == 2);
  REQUIRE(s1s1.coeffs.at(Partition{2}) == 1);
  REQUIRE(s1s1.coeffs.at(Partition{1, 1}) == 1);

  auto s21s1 = pieri(g, Partition{2, 1}, 1);
  REQUIRE(s21s1.coeffs.size() == 1);
  REQUIRE(s21s1.coeffs.at(Partition{2, 2}) == 1);

  REQUIRE(pieri(g, Partition{2, 2}, 1).is_zero());
}

TEST_CASE("product matches the tableau-counting oracle") {
  for (Grassmannian g : {Grassmannian{2, 4}, Grassmannian{2, 5}, Grassmannian{3, 6}}) {
    auto all = g.full_basis();
    for (const auto& a : all)
      for (const auto& b : all) {
        if (a.weight() + b.weight() > g.dim()) continue;
        INFO(g.k << "," << g.N << " : " << a.str() << " * " << b.str());
        REQUIRE(product(g, a, b) == lr_product(g, a, b));
      }
  }
}

TEST_CASE("product unit, symmetry, associativity") {
  Grassmannian g{2, 5};
  auto all = g.full_basis();
  CohClass one = CohClass::unit(g);
  for (const auto& a : all) {
    CohClass ca = CohClass::basis_class(g, a);
    REQUIRE(product(one, ca) == ca);
  }
  // A deterministic sample of triples.
  for (size_t i = 0; i < all.size(); i += 2)
    for (size_t j = i; j < all.size(); j += 3)
      for (size_t l = j; l < all.size(); l += 3) {
        CohClass a = CohClass::basis_class(g, all[i]);
        CohClass b = CohClass::basis_class(g, all[j]);
        CohClass c = CohClass::basis_class(g, all[l]);
        REQUIRE(product(a, b) == product(b, a));
        REQUIRE(product(product(a, b), c) == product(a, product(b, c)));
      }
}

TEST_CASE("integration and duality") {
  Grassmannian g{2, 4};
  REQUIRE(integrate(CohClass::basis_class(g, Partition{2, 2})) == 1);
  CohClass s1 = CohClass::basis_class(g, Partition{1});
  CohClass s1_4 = product(product(s1, s1), product(s1, s1));
  REQUIRE(integrate(s1_4) == 2);
  REQUIRE(integrate(s1) == 0);

  REQUIRE(dual(g, Partition{2, 2}) == Partition{});
  REQUIRE(dual(g, Partition{1}) == Partition{2, 1});
  REQUIRE(dual(g, Partition{2}) == Partition{2});

  for (Grassmannian gg : {Grassmannian{2, 4}, Grassmannian{2, 5}, Grassmannian{2, 6}}) {
    auto all = gg.full_basis();
    for (const auto& a : all)
      for (const auto& b : all) {
        if (a.weight() + b.weight() != gg.dim()) continue;
        Rat pairing = integrate(product(gg, a, b));
        REQUIRE(pairing == (b == dual(gg, a) ? Rat(1) : Rat(0)));
      }
  }
}

TEST_CASE("chern classes and monomial basis for k = 2") {
  Grassmannian g{2, 4};
  REQUIRE(chern_Q(g, 2) == CohClass::basis_class(g, Partition{2}));
  auto c1sq = monomial_class(g, 2, 0);
  REQUIRE(c1sq.coeffs.at(Partition{2}) == 1);
  REQUIRE(c1sq.coeffs.at(Partition{1, 1}) == 1);

  // Monomial coordinates reproduce the class in every degree.
  for (Grassmannian gg : {Grassmannian{2, 4}, Grassmannian{2, 5}}) {
    for (const auto& p : gg.full_basis()) {
      CohClass x = CohClass::basis_class(gg, p);
      auto monos = schubert_to_monomials(x);
      CohClass back(gg);
      for (const auto& m : monos) back += monomial_class(gg, m.a, m.b) * m.coeff;
      REQUIRE(back == x);
    }
  }
  REQUIRE_THROWS_AS(schubert_to_monomials(CohClass::basis_class(Grassmannian{3, 6}, Partition{1})),
                    unsupported_error);
}

TEST_CASE("class parsing round-trip") {
  Grassmannian g{2, 4};
  CohClass x(g);
  x.add(Partition{2, 1}, Rat(-1, 2));
  x.add(Partition{1}, Rat(3));
  REQUIRE(CohClass::parse(g, x.str()) == x);
  REQUIRE(CohClass::parse(g, "0").is_zero());
  REQUIRE(Partition::parse("2,1") == Partition{2, 1});
  REQUIRE(Partition::parse("0") == Partition{});
}

TEST_CASE("flag betti numbers") {
  auto p3 = flag_betti(FlagDescriptor::projective_space(3));
  REQUIRE(p3.dim == 3);
  REQUIRE(p3.h2 == 1);
  REQUIRE(p3.h4 == 1);
  REQUIRE(p3.kernel_ranks == std::vector<int>{1, 3});

  auto g24 = flag_betti(FlagDescriptor::grassmannian(2, 4));
  REQUIRE(g24.dim == 4);
  REQUIRE(g24.h2 == 1);
  REQUIRE(g24.h4 == 2);

  auto fl = flag_betti(FlagDescriptor({1, 2}, 3));
  REQUIRE(fl.dim == 3);
  REQUIRE(fl.h2 == 2);
  REQUIRE(fl.h4 == 2);

  auto p1 = flag_betti(FlagDescriptor::projective_space(1));
  REQUIRE(p1.h4 == 0);
  REQUIRE(p1.dim == 1);

  // Grassmannians with both sides >= 2 have h4 = 2; projective spaces r >= 2
  // have h4 = 1.
  for (int k = 2; k <= 3; ++k)
    for (int N = k + 2; N <= 7; ++N)
      REQUIRE(flag_betti(FlagDescriptor::grassmannian(k, N)).h4 == 2);
  for (int r = 2; r <= 6; ++r)
    REQUIRE(flag_betti(FlagDescriptor::projective_space(r)).h4 == 1);
}
