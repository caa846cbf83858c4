#pragma once

#include <cmath>
#include <complex>
#include <map>

#include "gwrecon/schubert.hpp"

namespace gwrecon {

/// Element of the small quantum ring: coefficient of sigma_p q^e.
struct QuantumClass {
  Grassmannian target;
  std::map<std::pair<Partition, int>, Rat> coeffs;

  explicit QuantumClass(Grassmannian g = {}) : target(g) {}

  void add(const Partition& p, int qpow, const Rat& x) {
    if (x == 0) return;
    auto key = std::make_pair(p, qpow);
    auto it = coeffs.find(key);
    if (it == coeffs.end()) {
      coeffs.emplace(key, x);
    } else {
      it->second += x;
      if (it->second == 0) coeffs.erase(it);
    }
  }
  bool operator==(const QuantumClass& o) const {
    return target == o.target && coeffs == o.coeffs;
  }
};

namespace detail {

// Reduce a straight Schur index (at most k rows, arbitrary first part) to a
// box partition times a signed power of q, by sliding beta-set beads down in
// steps of N. Returns false when the class vanishes.
struct RimHookResult {
  bool nonzero = false;
  int sign = 1;
  int qpow = 0;
  Partition reduced;
};

inline RimHookResult rim_hook_reduce(Grassmannian g, const Partition& nu) {
  RimHookResult res;
  if (nu.length() > g.k) return res;
  std::vector<Int> beta(g.k);
  for (int i = 0; i < g.k; ++i) beta[i] = nu.part(i) + (g.k - 1 - i);

  int sign = 1, qpow = 0;
  for (int i = 0; i < g.k; ++i) {
    while (beta[i] >= g.N) {
      const Int target = beta[i] - g.N;
      int crossings = 0;
      for (int j = 0; j < g.k; ++j) {
        if (j == i) continue;
        if (beta[j] == target) return res;  // collision: class vanishes
        if (beta[j] > target && beta[j] < beta[i]) ++crossings;
      }
      beta[i] = target;
      ++qpow;
      // A hook spanning h rows contributes (-1)^{k-h}; h-1 = crossings.
      sign *= ((g.k - (crossings + 1)) % 2 == 0) ? 1 : -1;
    }
    if (beta[i] < 0) return res;
  }
  std::sort(beta.begin(), beta.end(), std::greater<>());
  for (int i = 0; i + 1 < g.k; ++i)
    if (beta[i] == beta[i + 1]) return res;
  std::vector<int> parts(g.k);
  for (int i = 0; i < g.k; ++i) parts[i] = static_cast<int>(beta[i] - (g.k - 1 - i));
  res.nonzero = true;
  res.sign = sign;
  res.qpow = qpow;
  res.reduced = Partition(std::move(parts));
  return res;
}

// Classical product in the ring of symmetric functions in k variables
// (straight Schur indices with at most k rows, no box truncation).
inline std::map<Partition, Int> schur_product_k_rows(int k, const Partition& a,
                                                     const Partition& b) {
  // Pieri words for b via Jacobi-Trudi, applied with untruncated row bound.
  Grassmannian wide{k, k + a.weight() + b.weight() + 1};
  CohClass x = CohClass::basis_class(wide, a);
  CohClass out(wide);
  for (const auto& [sign, word] : jacobi_trudi_words(b)) {
    CohClass t = x;
    for (int m : word) {
      t = mul_h(t, m);
      if (t.is_zero()) break;
    }
    out += t * Rat(sign);
  }
  std::map<Partition, Int> res;
  for (const auto& [p, c] : out.coeffs) res[p] = as_integer(c);
  return res;
}

}  // namespace detail

/// Small quantum product of two Schubert basis classes: classical structure
/// constants reduced by rim hooks of size N.
inline QuantumClass quantum_product_3pt(Grassmannian g, const Partition& a, const Partition& b) {
  if (g.k > 3 || g.N > 8) throw unsupported_error("quantum_product_3pt: size out of range");
  if (!g.in_box(a) || !g.in_box(b))
    throw std::domain_error("quantum_product_3pt: partition outside box");
  QuantumClass out(g);
  for (const auto& [nu, c] : detail::schur_product_k_rows(g.k, a, b)) {
    auto r = detail::rim_hook_reduce(g, nu);
    if (r.nonzero) out.add(r.reduced, r.qpow, Rat(c * r.sign));
  }
  return out;
}

/// Three-point invariant of Schubert classes, read off the quantum product.
inline Rat quantum_3pt_invariant(Grassmannian g, const Partition& a, const Partition& b,
                                 const Partition& c, int d) {
  QuantumClass prod = quantum_product_3pt(g, a, b);
  auto it = prod.coeffs.find({dual(g, c), d});
  return it == prod.coeffs.end() ? Rat(0) : it->second;
}

/// Multiply quantum classes (bilinear extension); used for associativity.
inline QuantumClass quantum_product(const QuantumClass& x, const QuantumClass& y) {
  if (!(x.target == y.target)) throw std::domain_error("quantum_product: mismatched targets");
  QuantumClass out(x.target);
  for (const auto& [ka, ca] : x.coeffs)
    for (const auto& [kb, cb] : y.coeffs) {
      QuantumClass t = quantum_product_3pt(x.target, ka.first, kb.first);
      for (const auto& [kt, ct] : t.coeffs)
        out.add(kt.first, kt.second + ka.second + kb.second, ct * ca * cb);
    }
  return out;
}

inline QuantumClass quantum_basis_class(Grassmannian g, const Partition& p) {
  QuantumClass c(g);
  c.add(p, 0, 1);
  return c;
}

/// Residue-sum evaluation of a three-point invariant for k = 2: the trace
/// of the triple product over the spectrum x^N = -1, weighted by
/// -(x_p - x_q)^2 x_p x_q / N^2. Floating point, rounded and certified by
/// the caller.
inline double vi_threepoint_sum(Grassmannian g, const Partition& a, const Partition& b,
                                const Partition& c) {
  if (g.k != 2) throw unsupported_error("vi_threepoint_sum: only k = 2 supported");
  using C = std::complex<double>;
  const double pi = std::acos(-1.0);
  const int N = g.N;
  std::vector<C> roots(N);
  for (int j = 0; j < N; ++j) {
    const double t = pi * (2.0 * j + 1.0) / N;
    roots[j] = C(std::cos(t), std::sin(t));
  }
  auto schur2 = [](const Partition& p, C x, C y) {
    // s_(p1,p2)(x,y) = (x^{p1+1} y^{p2} - y^{p1+1} x^{p2}) / (x - y)
    auto powc = [](C v, int e) {
      C r(1, 0);
      for (int i = 0; i < e; ++i) r *= v;
      return r;
    };
    const int p1 = p.part(0), p2 = p.part(1);
    return (powc(x, p1 + 1) * powc(y, p2) - powc(y, p1 + 1) * powc(x, p2)) / (x - y);
  };
  C total(0, 0);
  for (int p = 0; p < N; ++p)
    for (int q = p + 1; q < N; ++q) {
      const C x = roots[p], y = roots[q];
      const C weight = -(x - y) * (x - y) * x * y / C(N * N, 0);
      total += schur2(a, x, y) * schur2(b, x, y) * schur2(c, x, y) * weight;
    }
  if (std::abs(total.imag()) > 1e-6)
    throw integrity_error("vi_threepoint_sum: residue sum is not real");
  return total.real();
}

}  // namespace gwrecon
