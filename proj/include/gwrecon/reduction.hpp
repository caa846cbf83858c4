#pragma once

#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

#include "gwrecon/invariants.hpp"
#include "gwrecon/kontsevich.hpp"

namespace gwrecon {

/// The ambient moduli problem for an integrand: target, markings, degree.
struct SpaceCtx {
  Grassmannian target;
  int n = 0;
  int d = 0;

  int dim() const { return target.dim() + d * target.fano_index() + n - 3; }
};

/// Two-component boundary factor; req1/req2 list the markings pinned to each
/// side, the rest (if any) are summed over both sides. dec entries are
/// incidence cycles carried by a side; node pins the node to a cycle.
struct SplitFactor {
  int deg1 = 0, deg2 = 0;
  std::vector<int> req1, req2;
  std::vector<CohClass> dec1, dec2;
  std::optional<CohClass> node;
};

/// Three-component chain factor; comp_of pins markings to components 0..2.
struct ChainFactor {
  int deg[3] = {0, 0, 0};
  std::map<int, int> comp_of;
};

/// One integrand monomial: evaluation classes per marking, kappa factors,
/// and at most one of a psi factor, a split factor or a chain factor.
struct Term {
  Rat coeff = 1;
  std::vector<CohClass> ev;                   // one per marking
  std::vector<std::vector<CohClass>> kappas;  // multi-argument kappa factors
  std::optional<int> psi;                     // marking carrying the cotangent class
  std::optional<SplitFactor> split;
  std::optional<ChainFactor> chain;
  // Markings below this index are genuine; the rest were added for kappa
  // factors and do not stabilise degenerate components. Set on entry.
  int real_n = -1;

  int n() const { return static_cast<int>(ev.size()); }

  static Term blank(Grassmannian g, int n) {
    Term t;
    t.ev.assign(n, CohClass::unit(g));
    return t;
  }

  Term& with_ev(int marking, const CohClass& c) {
    ev[marking] = product(ev[marking], c);
    return *this;
  }
  Term& with_kappa(std::vector<CohClass> args) {
    kappas.push_back(std::move(args));
    return *this;
  }

  int codim() const {
    int c = 0;
    for (const auto& e : ev) c += e.is_zero() ? 0 : e.degree();
    for (const auto& k : kappas)
      for (const auto& a : k) c += a.degree() - 1;
    if (psi) c += 1;
    if (split) {
      c += 1;
      for (const auto& dec : split->dec1) c += dec.degree() - 1;
      for (const auto& dec : split->dec2) c += dec.degree() - 1;
      if (split->node) c += split->node->degree();
    }
    if (chain) c += 2;
    return c;
  }

  bool zero_class() const {
    for (const auto& e : ev)
      if (e.is_zero()) return true;
    for (const auto& k : kappas)
      for (const auto& a : k)
        if (a.is_zero()) return true;
    return coeff == 0;
  }
};

/// Supplier of primary invariants for class-valued insertion lists.
using PrimaryFn = std::function<Rat(Grassmannian, int, const std::vector<CohClass>&)>;

namespace detail {

// Primary invariants for the reduction: the space engine for projective
// targets, the localization oracle for Grassmannians of planes.
inline Rat primary_basis_invariant(Grassmannian g, int d, const std::vector<Partition>& ins) {
  if (g.k == 1) {
    static std::map<int, PrInvariants> tables;
    auto [it, fresh] = tables.try_emplace(g.N - 1, g.N - 1);
    std::vector<int> exps;
    exps.reserve(ins.size());
    for (const auto& p : ins) exps.push_back(p.part(0));
    return it->second.eval_exponents(d, exps);
  }
  return global_oracle().evaluate(InvariantKey(g, d, ins));
}

// Multilinear expansion of class-valued insertions into basis invariants,
// stripping fundamental-class slots via the string rule.
inline Rat primary_invariant(Grassmannian g, int d, const std::vector<CohClass>& insertions) {
  Rat total = 0;
  std::vector<Partition> chosen;
  auto rec = [&](auto&& self, size_t idx, Rat coeff) -> void {
    if (coeff == 0) return;
    if (idx == insertions.size()) {
      std::vector<Partition> nontrivial;
      for (const auto& p : chosen)
        if (p.weight() > 0) nontrivial.push_back(p);
      const int units = static_cast<int>(chosen.size() - nontrivial.size());
      if (units > 0) {
        if (d == 0 && chosen.size() == 3) {
          CohClass prod = CohClass::unit(g);
          for (const auto& p : nontrivial) prod = product(prod, CohClass::basis_class(g, p));
          total += coeff * integrate(prod);
        }
        return;  // string rule kills the rest
      }
      total += coeff * primary_basis_invariant(g, d, nontrivial);
      return;
    }
    for (const auto& [p, c] : insertions[idx].coeffs) {
      chosen.push_back(p);
      self(self, idx + 1, coeff * c);
      chosen.pop_back();
    }
    if (insertions[idx].coeffs.empty()) return;  // zero class
  };
  rec(rec, 0, Rat(1));
  return total;
}

}  // namespace detail

/// Exact evaluation of an integrand monomial over the moduli space: kappa
/// factors become added markings, a psi factor becomes a boundary sum via
/// the two auxiliary markings, boundary factors split into products of
/// primary invariants over the diagonal basis. The primary engine defaults
/// to the standard one but can be overridden.
inline Rat reduce_integral(const SpaceCtx& ctx, const Term& term, bool check_codim = true,
                           const PrimaryFn& primary = nullptr);

namespace detail {

// Eliminate the last kappa factor by adding evaluation markings; corrections
// appear when a psi factor or a boundary factor is present.
inline Rat reduce_one_kappa(const SpaceCtx& ctx, const Term& term, const PrimaryFn& primary) {
  if (term.psi) throw integrity_error("reduce_one_kappa: psi factors are eliminated first");
  Term base = term;
  std::vector<CohClass> args = std::move(base.kappas.back());
  base.kappas.pop_back();

  Rat total = 0;
  // Queue of partially converted terms: each arg adds one marking.
  std::vector<Term> pending = {base};
  for (size_t ai = 0; ai < args.size(); ++ai) {
    std::vector<Term> next;
    for (const auto& t : pending) {
      const int fresh = t.n();
      if (t.split) {
        // The added point lands on either side.
        for (int side = 0; side < 2; ++side) {
          Term s = t;
          s.ev.push_back(args[ai]);
          (side == 0 ? s.split->req1 : s.split->req2).push_back(fresh);
          next.push_back(std::move(s));
        }
        continue;
      }
      if (t.chain) {
        for (int comp = 0; comp < 3; ++comp) {
          Term s = t;
          s.ev.push_back(args[ai]);
          s.chain->comp_of[fresh] = comp;
          next.push_back(std::move(s));
        }
        continue;
      }
      Term s = t;
      s.ev.push_back(args[ai]);
      next.push_back(s);
    }
    pending = std::move(next);
  }
  for (const auto& t : pending) {
    SpaceCtx bigger = ctx;
    bigger.n = t.n();
    total += reduce_integral(bigger, t, false, primary);
  }
  return total;
}

inline Rat reduce_split(const SpaceCtx& ctx, const Term& term, const PrimaryFn& primary) {
  const SplitFactor& sp = *term.split;
  const Grassmannian g = ctx.target;
  if (sp.deg1 + sp.deg2 != ctx.d)
    throw std::domain_error("reduce_integral: split degrees do not sum to the total");

  std::vector<int> unassigned;
  std::set<int> pinned(sp.req1.begin(), sp.req1.end());
  pinned.insert(sp.req2.begin(), sp.req2.end());
  for (int m = 0; m < term.n(); ++m)
    if (!pinned.count(m)) unassigned.push_back(m);

  Rat total = 0;
  const size_t u = unassigned.size();
  auto real_count = [&](const std::vector<int>& side) {
    int c = 0;
    for (int m : side)
      if (m < term.real_n) ++c;
    return c;
  };
  for (size_t mask = 0; mask < (size_t{1} << u); ++mask) {
    std::vector<int> side1 = sp.req1, side2 = sp.req2;
    for (size_t i = 0; i < u; ++i)
      ((mask >> i) & 1 ? side1 : side2).push_back(unassigned[i]);
    // Stability of both sides, counting genuine markings only.
    if (sp.deg1 == 0 && real_count(side1) < 2) continue;
    if (sp.deg2 == 0 && real_count(side2) < 2) continue;

    // Diagonal sum at the node.
    for (const auto& mu : g.full_basis()) {
      CohClass node1 = CohClass::basis_class(g, mu);
      if (sp.node) node1 = product(node1, *sp.node);
      if (node1.is_zero()) continue;
      CohClass node2 = CohClass::basis_class(g, dual(g, mu));

      std::vector<CohClass> ins1, ins2;
      for (int m : side1) ins1.push_back(term.ev[m]);
      for (const auto& dec : sp.dec1) ins1.push_back(dec);
      ins1.push_back(node1);
      for (int m : side2) ins2.push_back(term.ev[m]);
      for (const auto& dec : sp.dec2) ins2.push_back(dec);
      ins2.push_back(node2);

      const Rat v1 = primary(g, sp.deg1, ins1);
      if (v1 == 0) continue;
      const Rat v2 = primary(g, sp.deg2, ins2);
      if (v2 == 0) continue;
      total += term.coeff * v1 * v2;
    }
  }
  return total;
}

inline Rat reduce_chain(const SpaceCtx& ctx, const Term& term, const PrimaryFn& primary) {
  const ChainFactor& ch = *term.chain;
  const Grassmannian g = ctx.target;
  if (ch.deg[0] + ch.deg[1] + ch.deg[2] != ctx.d)
    throw std::domain_error("reduce_integral: chain degrees do not sum to the total");
  if (!term.kappas.empty())
    throw unsupported_error("reduce_integral: kappa factors on a chain are not supported");

  std::vector<int> unassigned;
  for (int m = 0; m < term.n(); ++m)
    if (!ch.comp_of.count(m)) unassigned.push_back(m);

  Rat total = 0;
  const size_t u = unassigned.size();
  std::vector<int> comp(u, 0);
  auto rec = [&](auto&& self, size_t idx) -> void {
    if (idx < u) {
      for (int c = 0; c < 3; ++c) {
        comp[idx] = c;
        self(self, idx + 1);
      }
      return;
    }
    std::vector<std::vector<int>> marks(3);
    for (const auto& [m, c] : ch.comp_of) marks[c].push_back(m);
    for (size_t i = 0; i < u; ++i) marks[comp[i]].push_back(unassigned[i]);
    // Stability: outer components carry one node, the middle two. All
    // markings here are genuine (kappa factors never reach a chain).
    if (ch.deg[0] == 0 && marks[0].size() < 2) return;
    if (ch.deg[1] == 0 && marks[1].size() < 1) return;
    if (ch.deg[2] == 0 && marks[2].size() < 2) return;

    for (const auto& mu : g.full_basis()) {
      std::vector<CohClass> ins1;
      for (int m : marks[0]) ins1.push_back(term.ev[m]);
      ins1.push_back(CohClass::basis_class(g, mu));
      const Rat v1 = primary(g, ch.deg[0], ins1);
      if (v1 == 0) continue;
      for (const auto& nu : g.full_basis()) {
        std::vector<CohClass> ins2;
        ins2.push_back(CohClass::basis_class(g, dual(g, mu)));
        for (int m : marks[1]) ins2.push_back(term.ev[m]);
        ins2.push_back(CohClass::basis_class(g, nu));
        const Rat v2 = primary(g, ch.deg[1], ins2);
        if (v2 == 0) continue;
        std::vector<CohClass> ins3;
        ins3.push_back(CohClass::basis_class(g, dual(g, nu)));
        for (int m : marks[2]) ins3.push_back(term.ev[m]);
        const Rat v3 = primary(g, ch.deg[2], ins3);
        if (v3 == 0) continue;
        total += term.coeff * v1 * v2 * v3;
      }
    }
  };
  rec(rec, 0);
  return total;
}

// Folklore expansion of a psi factor against the two highest other
// markings; kappa factors ride along and land on the sides afterwards.
inline Rat reduce_psi(const SpaceCtx& ctx, const Term& term, const PrimaryFn& primary) {
  if (ctx.n < 3)
    throw unsupported_error("reduce_integral: psi elimination needs three markings");
  const int i = *term.psi;
  std::vector<int> aux;
  for (int m = term.n() - 1; m >= 0 && aux.size() < 2; --m)
    if (m != i) aux.push_back(m);
  Rat total = 0;
  for (int a = 0; a <= ctx.d; ++a) {
    Term t = term;
    t.psi.reset();
    SplitFactor sp;
    sp.deg1 = a;
    sp.deg2 = ctx.d - a;
    sp.req1 = {i};
    sp.req2 = aux;
    t.split = sp;
    total += reduce_integral(ctx, t, false, primary);
  }
  return total;
}

inline Rat reduce_kappa_free(const SpaceCtx& ctx, const Term& term, const PrimaryFn& primary) {
  if (term.split) return reduce_split(ctx, term, primary);
  if (term.chain) return reduce_chain(ctx, term, primary);
  std::vector<CohClass> ins(term.ev.begin(), term.ev.end());
  return term.coeff * primary(ctx.target, ctx.d, ins);
}

}  // namespace detail

inline Rat reduce_integral(const SpaceCtx& ctx, const Term& term, bool check_codim,
                           const PrimaryFn& primary) {
  if (term.n() != ctx.n)
    throw std::domain_error("reduce_integral: marking count mismatch");
  if ((term.psi ? 1 : 0) + (term.split ? 1 : 0) + (term.chain ? 1 : 0) > 1)
    throw unsupported_error("reduce_integral: more than one boundary or psi factor");
  if (term.zero_class()) return 0;
  if (check_codim && term.codim() != ctx.dim())
    throw std::domain_error("reduce_integral: codimension " + std::to_string(term.codim()) +
                            " does not match dimension " + std::to_string(ctx.dim()));
  const PrimaryFn engine = primary ? primary : PrimaryFn(detail::primary_invariant);
  if (term.real_n < 0) {
    Term anchored = term;
    anchored.real_n = ctx.n;
    return reduce_integral(ctx, anchored, false, engine);
  }
  if (term.psi) return detail::reduce_psi(ctx, term, engine);
  if (!term.kappas.empty()) return detail::reduce_one_kappa(ctx, term, engine);
  return detail::reduce_kappa_free(ctx, term, engine);
}

}  // namespace gwrecon
