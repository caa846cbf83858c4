#pragma once

#include "gwrecon/modspace.hpp"
#include "gwrecon/reduction.hpp"

namespace gwrecon {

/// A codimension one or two identity between tautological classes, stored as
/// lhs = rhs term lists at the native marking count. When solve_rhs is set
/// the right side is an undetermined combination of the candidate classes
/// and the audit checks exact solvability instead.
struct RelationSpec {
  std::string name;
  int native_n = 1;
  int codim = 1;
  std::vector<Term> lhs, rhs;
  bool solve_rhs = false;
  std::vector<std::vector<Term>> candidates;  // each candidate: list of terms
};

namespace detail {

inline CohClass hyperplane(Grassmannian g) { return chern_Q(g, 1); }
inline CohClass hyperplane_sq(Grassmannian g) { return monomial_class(g, 2, 0); }
inline CohClass hyperplane_cube(Grassmannian g) { return monomial_class(g, 3, 0); }

inline Term term(Grassmannian g, int n, Rat coeff = 1) {
  Term t = Term::blank(g, n);
  t.coeff = coeff;
  return t;
}

inline Term split_term(Grassmannian g, int n, Rat coeff, int a, int b, std::vector<int> req1,
                       std::vector<int> req2, std::vector<CohClass> dec1 = {},
                       std::vector<CohClass> dec2 = {},
                       std::optional<CohClass> node = std::nullopt) {
  Term t = term(g, n, coeff);
  SplitFactor sp;
  sp.deg1 = a;
  sp.deg2 = b;
  sp.req1 = std::move(req1);
  sp.req2 = std::move(req2);
  sp.dec1 = std::move(dec1);
  sp.dec2 = std::move(dec2);
  sp.node = std::move(node);
  t.split = sp;
  return t;
}

// A relation term written as a full split of the native markings is the
// zero class when a degree-zero side has fewer than two of them; such
// symbols must be dropped before pulling back.
inline bool native_split_stable(const Term& t) {
  if (!t.split) return true;
  const auto& sp = *t.split;
  if (sp.deg1 == 0 && sp.req1.size() < 2) return false;
  if (sp.deg2 == 0 && sp.req2.size() < 2) return false;
  return true;
}

inline void push_stable(std::vector<Term>& out, Term t) {
  if (detail::native_split_stable(t)) out.push_back(std::move(t));
}

}  // namespace detail

/// The relations at their native marking counts. alpha feeds the
/// codimension-two evaluation relation; it defaults to the second Chern
/// class of the quotient bundle.
inline RelationSpec build_relation(const std::string& name, Grassmannian g, int d,
                                   std::optional<CohClass> alpha = std::nullopt) {
  using detail::hyperplane;
  using detail::hyperplane_cube;
  using detail::hyperplane_sq;
  using detail::split_term;
  using detail::term;

  if (d < 1) throw std::domain_error("build_relation: degree must be positive");
  RelationSpec rel;
  rel.name = name;
  const CohClass H = hyperplane(g);
  const CohClass H2 = hyperplane_sq(g);

  if (name == "diff") {
    rel.native_n = 2;
    rel.codim = 1;
    rel.lhs.push_back(term(g, 2).with_ev(0, H));
    rel.lhs.push_back(term(g, 2, -1).with_ev(1, H));
    Term psi = term(g, 2, Rat(d));
    psi.psi = 1;
    rel.rhs.push_back(psi);
    for (int a = 0; a <= d; ++a)
      detail::push_stable(rel.rhs, split_term(g, 2, Rat(-a), a, d - a, {0}, {1}));
  } else if (name == "psisum") {
    rel.native_n = 2;
    rel.codim = 1;
    Term p1 = term(g, 2);
    p1.psi = 0;
    Term p2 = term(g, 2);
    p2.psi = 1;
    rel.lhs = {p1, p2};
    for (int a = 0; a <= d; ++a)
      detail::push_stable(rel.rhs, split_term(g, 2, Rat(1), a, d - a, {0}, {1}));
  } else if (name == "strange") {
    rel.native_n = 1;
    rel.codim = 1;
    Term psi = term(g, 1);
    psi.psi = 0;
    rel.lhs.push_back(psi);
    rel.lhs.push_back(term(g, 1, Rat(2, d)).with_ev(0, H));
    rel.lhs.push_back(term(g, 1, Rat(-1, Int(d) * d)).with_kappa({H2}));
    for (int a = 0; a <= d; ++a) {
      const int b = d - a;
      detail::push_stable(rel.rhs, split_term(g, 1, Rat(Int(b) * b, Int(d) * d), a, b, {0}, {}));
    }
  } else if (name == "evsum") {
    rel.native_n = 2;
    rel.codim = 1;
    rel.lhs.push_back(term(g, 2).with_ev(0, H));
    rel.lhs.push_back(term(g, 2).with_ev(1, H));
    rel.rhs.push_back(term(g, 2, Rat(1, d)).with_kappa({H2}));
    for (int a = 0; a <= d; ++a) {
      const int b = d - a;
      detail::push_stable(rel.rhs, split_term(g, 2, Rat(-Int(a) * b, d), a, b, {0}, {1}));
      detail::push_stable(rel.rhs, split_term(g, 2, Rat(Int(b) * b, d), a, b, {0, 1}, {}));
    }
  } else if (name == "2m" || name == "re2") {
    rel.native_n = 2;
    rel.codim = 2;
    CohClass cls = name == "2m" ? H2 : alpha.value_or(chern_Q(g, 2));
    if (cls.degree() != 2) throw std::domain_error("build_relation: class must have codimension 2");
    rel.lhs.push_back(term(g, 2).with_ev(0, cls));
    rel.lhs.push_back(term(g, 2, -1).with_ev(1, cls));
    Term psik = term(g, 2, -1);
    psik.psi = 1;
    psik.with_kappa({cls});
    rel.lhs.push_back(psik);
    for (int a = 0; a <= d; ++a)
      detail::push_stable(rel.rhs, split_term(g, 2, Rat(-1), a, d - a, {0}, {1}, {cls}, {}));
  } else if (name == "marked" || name == "1mb") {
    rel.native_n = 1;
    rel.codim = 2;
    rel.solve_rhs = true;
    const bool grass_form = name == "1mb";
    const CohClass c2 = grass_form ? chern_Q(g, 2) : H2;
    const CohClass c1c2 = grass_form ? product(H, chern_Q(g, 2)) : hyperplane_cube(g);
    rel.lhs.push_back(term(g, 1).with_ev(0, c2));
    rel.lhs.push_back(term(g, 1, Rat(-1, d)).with_ev(0, H).with_kappa({c2}));
    if (grass_form) {
      rel.lhs.push_back(term(g, 1, Rat(1, Int(d) * d)).with_kappa({H2, chern_Q(g, 2)}));
    } else {
      Term sq = term(g, 1, Rat(1, Int(d) * d));
      sq.with_kappa({H2});
      sq.with_kappa({H2});
      rel.lhs.push_back(sq);
    }
    rel.lhs.push_back(term(g, 1, Rat(-1, d)).with_kappa({c1c2}));

    // Candidate boundary classes.
    if (grass_form) {
      // Splits decorated by the codimension-two quotient class; the marking
      // sits on the decorated side or the opposite one.
      for (int a = 1; a <= d - 1; ++a) {
        rel.candidates.push_back({split_term(g, 1, 1, a, d - a, {0}, {}, {c2}, {})});
        rel.candidates.push_back({split_term(g, 1, 1, a, d - a, {}, {0}, {c2}, {})});
      }
    } else {
      // Chains.
      for (const auto& c : detail::enumerate_chains(1, d)) {
        Term t = term(g, 1);
        ChainFactor ch;
        ch.deg[0] = c.deg[0];
        ch.deg[1] = c.deg[1];
        ch.deg[2] = c.deg[2];
        ch.comp_of[0] = c.comp_of_mark[0];
        t.chain = ch;
        rel.candidates.push_back({t});
      }
      // Marked point on a hyperplane, two components.
      for (int a = 1; a <= d - 1; ++a)
        rel.candidates.push_back(
            {split_term(g, 1, 1, a, d - a, {0}, {}).with_ev(0, H)});
      // A side through a codimension-two cycle, marking on either side.
      for (int a = 1; a <= d - 1; ++a) {
        rel.candidates.push_back({split_term(g, 1, 1, a, d - a, {0}, {}, {H2}, {})});
        rel.candidates.push_back({split_term(g, 1, 1, a, d - a, {0}, {}, {}, {H2})});
      }
    }
  } else {
    throw unsupported_error("build_relation: unknown relation " + name);
  }
  return rel;
}

/// Pull a term back along the map forgetting one added marking.
inline std::vector<Term> pull_back_term(const Term& t, int d) {
  const int fresh = t.n();
  std::vector<Term> out;
  auto extended = [&](const Term& base) {
    Term e = base;
    e.ev.push_back(CohClass::unit(e.ev.front().target));
    return e;
  };
  if (t.psi) {
    Term same = extended(t);
    out.push_back(same);
    // psi correction: the psi marking and the new one on a contracted side.
    Term corr = extended(t);
    corr.coeff = -corr.coeff;
    corr.psi.reset();
    SplitFactor sp;
    sp.deg1 = 0;
    sp.deg2 = d;
    sp.req1 = {*t.psi, fresh};
    for (int m = 0; m < fresh; ++m)
      if (m != *t.psi) sp.req2.push_back(m);
    corr.split = sp;
    out.push_back(std::move(corr));
    return out;
  }
  if (t.split) {
    for (int side = 0; side < 2; ++side) {
      Term s = extended(t);
      (side == 0 ? s.split->req1 : s.split->req2).push_back(fresh);
      out.push_back(std::move(s));
    }
    return out;
  }
  if (t.chain) {
    for (int comp = 0; comp < 3; ++comp) {
      Term s = extended(t);
      s.chain->comp_of[fresh] = comp;
      out.push_back(std::move(s));
    }
    return out;
  }
  out.push_back(extended(t));
  return out;
}

inline std::vector<Term> pull_back_terms(const std::vector<Term>& terms, int d, int times) {
  std::vector<Term> cur = terms;
  for (int i = 0; i < times; ++i) {
    std::vector<Term> next;
    for (const auto& t : cur) {
      auto up = pull_back_term(t, d);
      next.insert(next.end(), up.begin(), up.end());
    }
    cur = std::move(next);
  }
  return cur;
}

/// One audited pairing: both sides of the relation integrated against a
/// probe monomial.
struct AuditRow {
  std::string probe;
  Rat lhs, rhs;
  bool pass;
};

struct AuditReport {
  std::string relation;
  bool pass = true;
  std::vector<AuditRow> rows;
};

namespace detail {

inline std::vector<std::vector<Partition>> probe_monomials(Grassmannian g, int n, int codim,
                                                           size_t cap) {
  std::vector<std::vector<Partition>> out;
  std::vector<Partition> cur;
  auto rec = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == n) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    for (int c = 0; c <= std::min(remaining, g.dim()); ++c)
      for (const auto& p : g.basis(c)) {
        cur.push_back(p);
        self(self, slot + 1, remaining - c);
        cur.pop_back();
      }
  };
  rec(rec, 0, codim);
  if (out.size() > cap) {
    std::vector<std::vector<Partition>> sampled;
    const size_t stride = (out.size() + cap - 1) / cap;
    for (size_t i = 0; i < out.size(); i += stride) sampled.push_back(out[i]);
    out = std::move(sampled);
  }
  return out;
}

inline Rat reduce_against(const SpaceCtx& ctx, const std::vector<Term>& terms,
                          const std::vector<Partition>& probe) {
  Rat total = 0;
  for (const auto& t : terms) {
    Term m = t;
    for (int i = 0; i < ctx.n; ++i) m.with_ev(i, CohClass::basis_class(ctx.target, probe[i]));
    total += reduce_integral(ctx, m);
  }
  return total;
}

}  // namespace detail

/// Audit a relation on the space with n markings by integrating both sides
/// against every probe monomial of complementary codimension.
inline AuditReport relation_audit(const std::string& name, Grassmannian g, int d, int n,
                                  std::optional<CohClass> alpha = std::nullopt,
                                  size_t probe_cap = 24) {
  if (n < 3) throw unsupported_error("relation_audit: audits run on three or more markings");
  RelationSpec rel = build_relation(name, g, d, std::move(alpha));
  const int extra = n - rel.native_n;
  if (extra < 0) throw std::domain_error("relation_audit: fewer markings than the native count");

  SpaceCtx ctx{g, n, d};
  const auto lhs = pull_back_terms(rel.lhs, d, extra);
  const auto rhs = pull_back_terms(rel.rhs, d, extra);
  std::vector<std::vector<Term>> cands;
  for (const auto& c : rel.candidates) cands.push_back(pull_back_terms(c, d, extra));

  const int probe_codim = ctx.dim() - rel.codim;
  if (probe_codim < 0) throw std::domain_error("relation_audit: no complementary probes");
  const auto probes = detail::probe_monomials(g, n, probe_codim, probe_cap);

  AuditReport report;
  report.relation = name;
  auto probe_str = [&](const std::vector<Partition>& p) {
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) {
      if (i) s += "|";
      s += p[i].str();
    }
    return s;
  };

  if (!rel.solve_rhs) {
    for (const auto& probe : probes) {
      const Rat L = detail::reduce_against(ctx, lhs, probe);
      const Rat R = detail::reduce_against(ctx, rhs, probe);
      report.rows.push_back({probe_str(probe), L, R, L == R});
      report.pass = report.pass && (L == R);
    }
    return report;
  }

  // Solve lhs = sum x_c * candidate_c exactly across the probes, then report
  // the reconstructed right side.
  const size_t P = probes.size(), C = cands.size();
  std::vector<std::vector<Rat>> M(P, std::vector<Rat>(C + 1, Rat(0)));
  std::vector<Rat> L(P);
  for (size_t i = 0; i < P; ++i) {
    for (size_t j = 0; j < C; ++j) M[i][j] = detail::reduce_against(ctx, cands[j], probes[i]);
    L[i] = detail::reduce_against(ctx, lhs, probes[i]);
    M[i][C] = L[i];
  }
  // Gaussian elimination.
  std::vector<std::vector<Rat>> A = M;
  size_t rank = 0;
  std::vector<int> pivot_of_col(C, -1);
  for (size_t j = 0; j < C && rank < P; ++j) {
    size_t piv = rank;
    while (piv < P && A[piv][j] == 0) ++piv;
    if (piv == P) continue;
    std::swap(A[rank], A[piv]);
    const Rat inv = Rat(1) / A[rank][j];
    for (size_t jj = 0; jj <= C; ++jj) A[rank][jj] *= inv;
    for (size_t i = 0; i < P; ++i) {
      if (i == rank || A[i][j] == 0) continue;
      const Rat f = A[i][j];
      for (size_t jj = 0; jj <= C; ++jj) A[i][jj] -= f * A[rank][jj];
    }
    pivot_of_col[j] = static_cast<int>(rank);
    ++rank;
  }
  bool consistent = true;
  for (size_t i = rank; i < P; ++i)
    if (A[i][C] != 0) consistent = false;
  std::vector<Rat> x(C, Rat(0));
  if (consistent)
    for (size_t j = 0; j < C; ++j)
      if (pivot_of_col[j] >= 0) x[j] = A[pivot_of_col[j]][C];
  for (size_t i = 0; i < P; ++i) {
    Rat R = 0;
    for (size_t j = 0; j < C; ++j) R += M[i][j] * x[j];
    const bool ok = consistent && R == L[i];
    report.rows.push_back({probe_str(probes[i]), L[i], R, ok});
    report.pass = report.pass && ok;
  }
  return report;
}

}  // namespace gwrecon
