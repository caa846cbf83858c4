#pragma once

#include "gwrecon/relations.hpp"

namespace gwrecon {

/// Supplier of the base invariants with two free slots and a block of
/// quotient-Chern-class insertions. Must be symmetric in the two classes and
/// vanish whenever the dimension gate fails.
struct BaseProvider {
  std::function<Rat(const CohClass&, const CohClass&, int, int)> eval;
};

/// Oracle-backed base provider.
inline BaseProvider oracle_provider() {
  BaseProvider p;
  p.eval = [](const CohClass& b1, const CohClass& b2, int c2_count, int d) -> Rat {
    const Grassmannian g = b1.target;
    Rat total = 0;
    for (const auto& [p1, x1] : b1.coeffs)
      for (const auto& [p2, x2] : b2.coeffs) {
        std::vector<Partition> ins = {p1, p2};
        for (int i = 0; i < c2_count; ++i) ins.push_back(Partition{2});
        total += x1 * x2 * global_oracle().evaluate(InvariantKey(g, d, ins));
      }
    return total;
  };
  return p;
}

/// Vanishing rule in front of a fallback: degree at least three with the
/// ambient dimension above (n-3)/(d-2) forces zero; degrees one and two
/// defer (for degree two the bound is vacuous by convention).
inline BaseProvider base_provider_vanishing(int N, BaseProvider fallback) {
  BaseProvider p;
  p.eval = [N, fallback](const CohClass& b1, const CohClass& b2, int c2_count, int d) -> Rat {
    const int n = c2_count + 2;
    if (d >= 3 && Int(N) * (d - 2) > n - 3) return 0;
    return fallback.eval(b1, b2, c2_count, d);
  };
  return p;
}

/// Genus-zero primary invariants of a Grassmannian of planes, computed by
/// the boundary recursion: quotient-Chern monomial bookkeeping, transfer of
/// c2 factors onto an accumulator slot, divisor-based reduction of pure c1
/// powers, with residual blocks delegated to the base provider. Two-point
/// values are read from the oracle.
class GrassmannReconstructor {
 public:
  GrassmannReconstructor(Grassmannian g, BaseProvider provider,
                         std::shared_ptr<InvariantTable> table = nullptr)
      : g_(g), provider_(std::move(provider)),
        table_(table ? std::move(table) : std::make_shared<InvariantTable>()) {
    if (g.k != 2) throw unsupported_error("GrassmannReconstructor: only planes supported");
  }

  Rat evaluate(const InvariantKey& key) {
    if (!(key.target == g_)) throw std::domain_error("GrassmannReconstructor: wrong target");
    if (auto hit = table_->lookup(key)) return *hit;
    std::vector<CohClass> classes;
    for (const auto& p : key.insertions) classes.push_back(CohClass::basis_class(g_, p));
    const Rat value = eval_classes(key.degree, classes);
    table_->store(key, value, "recursion");
    return value;
  }

  InvariantTable& table() { return *table_; }

 private:
  using Monomial = std::pair<int, int>;  // (c1 power, c2 power)

  struct MonoKey {
    int d;
    std::vector<Monomial> slots;  // sorted descending
    auto operator<=>(const MonoKey&) const = default;
  };

  Grassmannian g_;
  BaseProvider provider_;
  std::shared_ptr<InvariantTable> table_;
  std::map<MonoKey, Rat> memo_;
  // Active rewriting chain. Degenerate boundary corrections may refer back
  // to a key currently being rewritten; every such occurrence is linear (the
  // companion factor of any product is a classical pairing), so the value
  // solves a one-unknown linear equation, evaluated by interpolation over
  // two trial values. Values that consulted an active key are not memoized.
  std::vector<MonoKey> stack_;
  std::map<MonoKey, size_t> stack_index_;
  std::vector<Rat> trial_;
  std::vector<char> consulted_;
  size_t consult_floor_ = SIZE_MAX;

  CohClass mono_class(const Monomial& m) const { return monomial_class(g_, m.first, m.second); }

  // Multilinear bridge from class lists to monomial keys.
  Rat eval_classes(int d, const std::vector<CohClass>& classes) {
    Rat total = 0;
    std::vector<Monomial> chosen;
    auto rec = [&](auto&& self, size_t idx, Rat coeff) -> void {
      if (coeff == 0) return;
      if (idx == classes.size()) {
        total += coeff * eval_mono(d, chosen);
        return;
      }
      for (const auto& m : schubert_to_monomials(classes[idx])) {
        chosen.push_back({m.a, m.b});
        self(self, idx + 1, coeff * m.coeff);
        chosen.pop_back();
      }
    };
    rec(rec, 0, Rat(1));
    return total;
  }

  int mono_codim(const Monomial& m) const { return m.first + 2 * m.second; }

  bool gate(int d, const std::vector<Monomial>& slots) const {
    int codim = 0;
    for (const auto& m : slots) codim += mono_codim(m);
    return codim == g_.dim() + d * g_.fano_index() + static_cast<int>(slots.size()) - 3;
  }

  // Accumulator slot: maximal c2 weight, then maximal c1 weight.
  static size_t acc_index(const std::vector<Monomial>& slots) {
    size_t best = 0;
    for (size_t i = 1; i < slots.size(); ++i) {
      if (slots[i].second > slots[best].second ||
          (slots[i].second == slots[best].second && slots[i].first > slots[best].first))
        best = i;
    }
    return best;
  }

  Rat two_point(int d, const std::vector<Monomial>& slots) {
    // Read-only oracle values; they occur only in degree one.
    std::vector<CohClass> cls;
    for (const auto& m : slots) cls.push_back(mono_class(m));
    Rat total = 0;
    for (const auto& [p1, x1] : cls[0].coeffs)
      for (const auto& [p2, x2] : cls[1].coeffs)
        total += x1 * x2 * global_oracle().evaluate(InvariantKey(g_, d, {p1, p2}));
    return total;
  }

  Rat eval_mono(int d, std::vector<Monomial> slots) {
    std::sort(slots.rbegin(), slots.rend());
    if (!gate(d, slots)) return 0;
    const int n = static_cast<int>(slots.size());
    if (n <= 1) return 0;
    if (n == 2) return two_point(d, slots);
    if (d == 0) {
      if (n != 3) return 0;
      CohClass prod = CohClass::unit(g_);
      for (const auto& m : slots) prod = product(prod, mono_class(m));
      return integrate(prod);
    }
    // String rule.
    for (const auto& m : slots)
      if (m == Monomial{0, 0}) return 0;

    MonoKey key{d, slots};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (auto it = stack_index_.find(key); it != stack_index_.end()) {
      consult_floor_ = std::min(consult_floor_, it->second);
      consulted_[it->second] = 1;
      return trial_[it->second];
    }

    const size_t depth = stack_.size();
    stack_.push_back(key);
    stack_index_.emplace(key, depth);
    trial_.push_back(0);
    consulted_.push_back(0);
    const size_t saved_floor = consult_floor_;

    // Each rewrite variant is a valid identity; a variant whose
    // self-referential equation degenerates is skipped for the next one.
    Rat value = 0;
    size_t merged_floor = SIZE_MAX;
    for (size_t variant = 0;; ++variant) {
      consulted_[depth] = 0;
      trial_[depth] = 0;
      consult_floor_ = SIZE_MAX;
      bool last = false;
      value = compute(d, slots, variant, &last);
      merged_floor = consult_floor_;
      if (!consulted_[depth]) break;
      // value(u) is affine in the trial value u of this key; a second pass
      // at u = 1 determines the slope, and u = value(u) solves exactly.
      trial_[depth] = 1;
      consult_floor_ = SIZE_MAX;
      const Rat v1 = compute(d, slots, variant, &last);
      const Rat slope = v1 - value;
      merged_floor = std::min(merged_floor, consult_floor_);
      if (slope != 1) {
        value = value / (1 - slope);
        break;
      }
      if (last) {
        std::string desc = "d=" + std::to_string(d);
        for (const auto& m : slots)
          desc += " (" + std::to_string(m.first) + "," + std::to_string(m.second) + ")";
        throw integrity_error("reconstruction: all rewrite variants degenerate at " + desc);
      }
    }

    stack_.pop_back();
    stack_index_.erase(key);
    trial_.pop_back();
    consulted_.pop_back();
    const bool tainted = merged_floor < depth;
    consult_floor_ = std::min(saved_floor, tainted ? merged_floor : SIZE_MAX);
    if (!tainted) memo_.emplace(std::move(key), value);
    return value;
  }

  Rat compute(int d, const std::vector<Monomial>& slots, size_t variant = 0,
              bool* exhausted = nullptr) {
    const int n = static_cast<int>(slots.size());

    // Divisor axiom.
    for (size_t i = 0; i < slots.size(); ++i)
      if (slots[i] == Monomial{1, 0}) {
        std::vector<Monomial> rest = slots;
        rest.erase(rest.begin() + i);
        return Rat(d) * eval_mono(d, rest);
      }

    // Base block: at most two slots away from the pure quotient class.
    {
      std::vector<Monomial> free_slots;
      int c2_count = 0;
      for (const auto& m : slots) {
        if (m == Monomial{0, 1})
          ++c2_count;
        else
          free_slots.push_back(m);
      }
      if (free_slots.size() <= 2 && c2_count >= 1) {
        while (free_slots.size() < 2) {
          free_slots.push_back({0, 1});
          --c2_count;
        }
        return provider_.eval(mono_class(free_slots[0]), mono_class(free_slots[1]), c2_count, d);
      }
    }

    const size_t acc = acc_index(slots);
    // Dissolve pure c1 powers first: the divisor-based reduction only
    // produces strictly smaller keys. Composite slots then shed their c2
    // factors onto the accumulator; pure quotient-class slots stay put,
    // they are already in base position.
    for (size_t i = 0; i < slots.size(); ++i)
      if (i != acc && slots[i].second == 0) return km_step(d, slots, acc);
    std::vector<size_t> sources;
    for (int i = n - 1; i >= 0; --i) {
      if (static_cast<size_t>(i) == acc) continue;
      if (slots[i].second >= 1 && slots[i] != Monomial{0, 1})
        sources.push_back(static_cast<size_t>(i));
    }
    if (sources.empty()) throw integrity_error("reconstruction: no admissible rewrite");
    if (exhausted && variant + 1 >= sources.size()) *exhausted = true;
    return strip_step(d, slots, acc, sources[std::min(variant, sources.size() - 1)]);
  }

  // Engine hook for boundary corrections: primary invariants come from this
  // recursion, never from the oracle.
  PrimaryFn self_engine() {
    return [this](Grassmannian g, int d, const std::vector<CohClass>& ins) -> Rat {
      if (!(g == g_)) throw std::domain_error("reconstruction: foreign target in splitting");
      if (ins.size() <= 2) {
        // Two-point and smaller blocks come from the oracle, read-only.
        Rat total = 0;
        std::vector<Partition> chosen;
        auto rec = [&](auto&& self, size_t idx, Rat coeff) -> void {
          if (coeff == 0) return;
          if (idx == ins.size()) {
            total += coeff * global_oracle().evaluate(InvariantKey(g, d, chosen));
            return;
          }
          for (const auto& [p, c] : ins[idx].coeffs) {
            chosen.push_back(p);
            self(self, idx + 1, coeff * c);
            chosen.pop_back();
          }
        };
        rec(rec, 0, Rat(1));
        return total;
      }
      return eval_classes(d, ins);
    };
  }

  // <..., c2 g @ src, ..., acc @ acc> = <..., g @ src, ..., c2 acc @ acc>
  //   + int psi_acc kappa(c2) ev - int Delta(src | acc ; c2) ev.
  Rat strip_step(int d, const std::vector<Monomial>& slots, size_t acc, size_t src) {
    const int n = static_cast<int>(slots.size());
    std::vector<Monomial> lead = slots;
    lead[src].second -= 1;    // gamma
    lead[acc].second += 1;    // c2 * acc
    Rat value = eval_mono(d, lead);

    // Evaluation classes with gamma at src and the original accumulator.
    std::vector<CohClass> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = mono_class(slots[i]);
    ev[src] = mono_class({slots[src].first, slots[src].second - 1});

    SpaceCtx ctx{g_, n, d};
    const CohClass c2 = chern_Q(g_, 2);

    Term psi_term = Term::blank(g_, n);
    psi_term.psi = static_cast<int>(acc);
    psi_term.with_kappa({c2});
    for (int i = 0; i < n; ++i) psi_term.with_ev(i, ev[i]);
    value += reduce_integral(ctx, psi_term, false, self_engine());

    for (int a = 0; a <= d; ++a) {
      Term delta = Term::blank(g_, n);
      delta.coeff = -1;
      SplitFactor sp;
      sp.deg1 = a;
      sp.deg2 = d - a;
      sp.req1 = {static_cast<int>(src)};
      sp.req2 = {static_cast<int>(acc)};
      sp.dec1 = {c2};
      delta.split = sp;
      for (int i = 0; i < n; ++i) delta.with_ev(i, ev[i]);
      value += reduce_integral(ctx, delta, false, self_engine());
    }
    return value;
  }

  // Four-point boundary equivalence dissolving one c1 from a pure power,
  // recombining onto the accumulator.
  Rat km_step(int d, const std::vector<Monomial>& slots, size_t acc) {
    // Processing slot: the largest pure c1 power outside the accumulator.
    int proc = -1;
    for (size_t i = 0; i < slots.size(); ++i) {
      if (i == acc || slots[i].second != 0) continue;
      if (proc < 0 || slots[i].first > slots[proc].first) proc = static_cast<int>(i);
    }
    if (proc < 0) throw integrity_error("reconstruction: no slot to reduce");
    int e3 = -1;
    for (size_t i = 0; i < slots.size(); ++i)
      if (i != acc && static_cast<int>(i) != proc) {
        e3 = static_cast<int>(i);
        break;
      }
    if (e3 < 0) throw integrity_error("reconstruction: missing third slot");

    std::vector<Monomial> B;
    for (size_t i = 0; i < slots.size(); ++i)
      if (i != acc && static_cast<int>(i) != proc && static_cast<int>(i) != e3)
        B.push_back(slots[i]);

    const Monomial e1{slots[proc].first - 1, 0};
    const CohClass e1c = mono_class(e1);
    const CohClass e3c = mono_class(slots[e3]);
    const CohClass accc = mono_class(slots[acc]);
    const CohClass c1 = chern_Q(g_, 1);

    // L(e1, e3; c1, acc) with grouped degree-zero ends, minus the grouped
    // terms of L(e1, c1; e3, acc) other than the unknown.
    Rat value = grouped_l(d, e1c, e3c, c1, accc, B, false);
    value -= grouped_l(d, e1c, c1, e3c, accc, B, true);
    return value;
  }

  Rat grouped_l(int d, const CohClass& x, const CohClass& y, const CohClass& u,
                const CohClass& v, const std::vector<Monomial>& B, bool skip_left_end) {
    Rat total = 0;
    // Degree-zero left end: recombine x*y onto one slot.
    if (!skip_left_end) {
      std::vector<CohClass> ins = {product(x, y), u, v};
      for (const auto& m : B) ins.push_back(mono_class(m));
      total += eval_classes(d, ins);
    }
    // Degree-zero right end: recombine u*v.
    {
      std::vector<CohClass> ins = {x, y, product(u, v)};
      for (const auto& m : B) ins.push_back(mono_class(m));
      total += eval_classes(d, ins);
    }
    // Proper degree splittings over the diagonal basis.
    const auto basis = g_.full_basis();
    const size_t nb = B.size();
    for (int d1 = 1; d1 < d; ++d1) {
      const int d2 = d - d1;
      for (size_t mask = 0; mask < (size_t{1} << nb); ++mask) {
        for (const auto& mu : basis) {
          std::vector<CohClass> left = {x, y, CohClass::basis_class(g_, mu)};
          std::vector<CohClass> right = {CohClass::basis_class(g_, dual(g_, mu)), u, v};
          for (size_t i = 0; i < nb; ++i)
            ((mask >> i) & 1 ? left : right).push_back(mono_class(B[i]));
          const Rat lv = eval_classes(d1, left);
          if (lv == 0) continue;
          const Rat rv = eval_classes(d2, right);
          if (rv == 0) continue;
          total += lv * rv;
        }
      }
    }
    return total;
  }
};

/// Single-shot reconstruction of one invariant.
inline Rat reconstruct_g2(const InvariantKey& key, BaseProvider provider) {
  GrassmannReconstructor rec(key.target, std::move(provider));
  return rec.evaluate(key);
}

}  // namespace gwrecon
