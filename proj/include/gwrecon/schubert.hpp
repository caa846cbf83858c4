#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gwrecon/rational.hpp"

namespace gwrecon {

/// Weakly decreasing nonnegative parts, trailing zeros trimmed.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  Partition(std::initializer_list<int> p) : parts(p) { normalize(); }
  explicit Partition(std::vector<int> p) : parts(std::move(p)) { normalize(); }

  void normalize() {
    std::sort(parts.rbegin(), parts.rend());
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    for (int p : parts)
      if (p < 0) throw std::domain_error("Partition: negative part");
  }

  int weight() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  int length() const { return static_cast<int>(parts.size()); }
  int part(int i) const { return i < length() ? parts[i] : 0; }

  bool operator==(const Partition& o) const { return parts == o.parts; }
  auto operator<=>(const Partition& o) const = default;

  std::string str() const {
    if (parts.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) os << ',';
      os << parts[i];
    }
    return os.str();
  }

  static Partition parse(const std::string& s) {
    if (s.empty() || s == "0") return Partition{};
    std::vector<int> parts;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) parts.push_back(std::stoi(tok));
    return Partition(std::move(parts));
  }
};

/// Subspace convention: k-dimensional subspaces of an N-dimensional space.
struct Grassmannian {
  int k = 2;
  int N = 4;

  bool operator==(const Grassmannian&) const = default;
  auto operator<=>(const Grassmannian&) const = default;

  int dim() const { return k * (N - k); }
  int fano_index() const { return N; }  // degree of c1(T) on a line
  int quotient_rank() const { return N - k; }

  bool in_box(const Partition& p) const {
    return p.length() <= k && p.part(0) <= N - k;
  }

  std::vector<Partition> basis(int codim) const {
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part, int slots) -> void {
      if (remaining == 0) {
        out.emplace_back(std::vector<int>(cur));
        return;
      }
      if (slots == 0) return;
      for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        self(self, remaining - p, p, slots - 1);
        cur.pop_back();
      }
    };
    rec(rec, codim, N - k, k);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Partition> full_basis() const {
    std::vector<Partition> out;
    for (int c = 0; c <= dim(); ++c) {
      auto b = basis(c);
      out.insert(out.end(), b.begin(), b.end());
    }
    return out;
  }

  Partition box() const { return Partition(std::vector<int>(k, N - k)); }
};

/// Rational combination of Schubert classes on a fixed Grassmannian.
struct CohClass {
  Grassmannian target;
  std::map<Partition, Rat> coeffs;

  explicit CohClass(Grassmannian g = {}) : target(g) {}

  static CohClass unit(Grassmannian g) {
    CohClass c(g);
    c.coeffs[Partition{}] = 1;
    return c;
  }
  static CohClass basis_class(Grassmannian g, const Partition& p, Rat coeff = 1) {
    CohClass c(g);
    if (g.in_box(p) && coeff != 0) c.coeffs[p] = coeff;
    return c;
  }

  bool is_zero() const { return coeffs.empty(); }

  void add(const Partition& p, const Rat& x) {
    if (x == 0) return;
    auto it = coeffs.find(p);
    if (it == coeffs.end()) {
      coeffs.emplace(p, x);
    } else {
      it->second += x;
      if (it->second == 0) coeffs.erase(it);
    }
  }

  CohClass& operator+=(const CohClass& o) {
    if (!(target == o.target)) throw std::domain_error("CohClass: mismatched targets");
    for (const auto& [p, x] : o.coeffs) add(p, x);
    return *this;
  }
  CohClass operator+(const CohClass& o) const {
    CohClass r = *this;
    r += o;
    return r;
  }
  CohClass operator*(const Rat& s) const {
    CohClass r(target);
    if (s == 0) return r;
    for (const auto& [p, x] : coeffs) r.coeffs[p] = x * s;
    return r;
  }
  CohClass operator-(const CohClass& o) const { return *this + o * Rat(-1); }
  bool operator==(const CohClass& o) const {
    return target == o.target && coeffs == o.coeffs;
  }

  /// Homogeneous iff all supported partitions share one weight; -1 for zero.
  int degree() const {
    int d = -1;
    for (const auto& [p, x] : coeffs) {
      if (d == -1)
        d = p.weight();
      else if (d != p.weight())
        throw std::domain_error("CohClass: not homogeneous");
    }
    return d;
  }

  std::string str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, x] : coeffs) {
      if (!first) os << ';';
      first = false;
      os << rat_to_string(x) << '*' << p.str();
    }
    return os.str();
  }

  static CohClass parse(Grassmannian g, const std::string& s);
};

/// sigma_lambda * sigma_(i): horizontal strips inside the box.
inline CohClass pieri(Grassmannian g, const Partition& lam, int i) {
  if (i < 1 || i > g.N - g.k) throw std::domain_error("pieri: row class index out of range");
  if (!g.in_box(lam)) throw std::domain_error("pieri: partition outside box");
  CohClass out(g);
  // Horizontal strip: lam_row <= mu_row <= lam_{row-1}, mu_0 <= N-k.
  std::vector<int> mu(g.k, 0);
  auto rec = [&](auto&& self, int row, int remaining) -> void {
    if (row == g.k) {
      if (remaining == 0) out.add(Partition(std::vector<int>(mu)), 1);
      return;
    }
    const int lo = lam.part(row);
    const int hi = row == 0 ? g.N - g.k : lam.part(row - 1);
    for (int v = lo; v <= hi && v - lo <= remaining; ++v) {
      mu[row] = v;
      self(self, row + 1, remaining - (v - lo));
      mu[row] = 0;
    }
  };
  rec(rec, 0, i);
  return out;
}

namespace detail {

// Multiply by the complete class sigma_(m); m = 0 is the unit, m outside the
// quotient range vanishes in the coefficient ring.
inline CohClass mul_h(const CohClass& x, int m) {
  if (m == 0) return x;
  CohClass out(x.target);
  if (m < 0 || m > x.target.N - x.target.k) return out;
  for (const auto& [p, c] : x.coeffs) {
    CohClass t = pieri(x.target, p, m);
    out += t * c;
  }
  return out;
}

// Jacobi-Trudi expansion of sigma_mu into signed words of complete classes.
inline std::vector<std::pair<int, std::vector<int>>> jacobi_trudi_words(const Partition& mu) {
  const int l = std::max(1, mu.length());
  std::vector<std::pair<int, std::vector<int>>> words;
  std::vector<int> perm(l);
  for (int i = 0; i < l; ++i) perm[i] = i;
  do {
    int sign = 1;
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    std::vector<int> word(l);
    bool dead = false;
    for (int i = 0; i < l; ++i) {
      word[i] = mu.part(i) + perm[i] - i;
      if (word[i] < 0) dead = true;
    }
    if (!dead) words.emplace_back(sign, word);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return words;
}

}  // namespace detail

/// Cup product, computed by expanding one factor into Pieri words.
inline CohClass product(const CohClass& x, const CohClass& y) {
  if (!(x.target == y.target)) throw std::domain_error("product: mismatched targets");
  CohClass out(x.target);
  for (const auto& [mu, c] : y.coeffs) {
    for (const auto& [sign, word] : detail::jacobi_trudi_words(mu)) {
      CohClass t = x;
      bool dead = false;
      for (int m : word) {
        if (m > x.target.N - x.target.k && m > 0) {
          dead = true;  // vanishing complete class
          break;
        }
        t = detail::mul_h(t, m);
        if (t.is_zero()) {
          dead = true;
          break;
        }
      }
      if (!dead) out += t * (c * sign);
    }
  }
  return out;
}

inline CohClass product(Grassmannian g, const Partition& a, const Partition& b) {
  return product(CohClass::basis_class(g, a), CohClass::basis_class(g, b));
}

/// Coefficient of the point class.
inline Rat integrate(const CohClass& x) {
  auto it = x.coeffs.find(x.target.box());
  return it == x.coeffs.end() ? Rat(0) : it->second;
}

/// Poincare-dual partition: rotated complement in the box.
inline Partition dual(Grassmannian g, const Partition& p) {
  if (!g.in_box(p)) throw std::domain_error("dual: partition outside box");
  std::vector<int> d(g.k);
  for (int i = 0; i < g.k; ++i) d[i] = g.N - g.k - p.part(g.k - 1 - i);
  return Partition(std::move(d));
}

inline CohClass chern_Q(Grassmannian g, int i) {
  if (i < 0 || i > g.N - g.k) throw std::domain_error("chern_Q: index out of range");
  if (i == 0) return CohClass::unit(g);
  return CohClass::basis_class(g, Partition{i});
}

/// c1^a c2^b as a Schubert combination (c_i of the quotient bundle).
inline CohClass monomial_class(Grassmannian g, int a, int b) {
  CohClass out = CohClass::unit(g);
  for (int i = 0; i < b; ++i) out = product(out, chern_Q(g, 2));
  for (int i = 0; i < a; ++i) out = product(out, chern_Q(g, 1));
  return out;
}

/// One c1^a c2^b term of a two-generator expression.
struct ChernMonomial {
  int a = 0;
  int b = 0;
  Rat coeff;
  auto operator<=>(const ChernMonomial&) const = default;
};

/// Expression of a homogeneous class as a c1,c2 polynomial; k = 2 only.
/// Deterministic: Gaussian elimination with monomials ordered by b.
inline std::vector<ChernMonomial> schubert_to_monomials(const CohClass& x) {
  const Grassmannian g = x.target;
  if (g.k != 2) throw unsupported_error("schubert_to_monomials: only k = 2 supported");
  if (x.is_zero()) return {};
  const int m = x.degree();
  const auto basis = g.basis(m);
  std::vector<std::pair<int, int>> monos;  // (a, b) with a + 2b = m
  for (int b = 0; 2 * b <= m; ++b) monos.emplace_back(m - 2 * b, b);

  // Columns: monomials; rows: Schubert basis; solve A z = v.
  const int rows = static_cast<int>(basis.size());
  const int cols = static_cast<int>(monos.size());
  std::vector<std::vector<Rat>> A(rows, std::vector<Rat>(cols + 1, Rat(0)));
  for (int j = 0; j < cols; ++j) {
    CohClass col = monomial_class(g, monos[j].first, monos[j].second);
    for (int i = 0; i < rows; ++i) {
      auto it = col.coeffs.find(basis[i]);
      if (it != col.coeffs.end()) A[i][j] = it->second;
    }
  }
  for (int i = 0; i < rows; ++i) {
    auto it = x.coeffs.find(basis[i]);
    if (it != x.coeffs.end()) A[i][cols] = it->second;
  }

  std::vector<int> pivot_col(rows, -1);
  int rank = 0;
  for (int j = 0; j < cols && rank < rows; ++j) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (A[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[rank], A[piv]);
    const Rat inv = Rat(1) / A[rank][j];
    for (int jj = j; jj <= cols; ++jj) A[rank][jj] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == rank || A[i][j] == 0) continue;
      const Rat f = A[i][j];
      for (int jj = j; jj <= cols; ++jj) A[i][jj] -= f * A[rank][jj];
    }
    pivot_col[rank] = j;
    ++rank;
  }
  for (int i = rank; i < rows; ++i)
    if (A[i][cols] != 0) throw integrity_error("schubert_to_monomials: inconsistent system");

  std::vector<Rat> z(cols, Rat(0));
  for (int i = 0; i < rank; ++i) z[pivot_col[i]] = A[i][cols];
  std::vector<ChernMonomial> out;
  for (int j = 0; j < cols; ++j)
    if (z[j] != 0) out.push_back({monos[j].first, monos[j].second, z[j]});
  return out;
}

inline CohClass CohClass::parse(Grassmannian g, const std::string& s) {
  CohClass out(g);
  if (s.empty() || s == "0") return out;
  std::istringstream is(s);
  std::string term;
  while (std::getline(is, term, ';')) {
    auto star = term.find('*');
    Rat coeff = 1;
    std::string pstr = term;
    if (star != std::string::npos) {
      coeff = rat_from_string(term.substr(0, star));
      pstr = term.substr(star + 1);
    }
    Partition p = Partition::parse(pstr);
    if (!g.in_box(p)) throw std::domain_error("CohClass::parse: partition outside box: " + pstr);
    out.add(p, coeff);
  }
  return out;
}

/// An SL flag variety given by its strictly increasing subspace dimensions.
struct FlagDescriptor {
  int N = 0;
  std::vector<int> subspace_dims;  // m_1 < ... < m_l < N

  FlagDescriptor() = default;
  FlagDescriptor(std::vector<int> dims, int ambient) : N(ambient), subspace_dims(std::move(dims)) {
    if (subspace_dims.empty()) throw std::domain_error("FlagDescriptor: empty dimension vector");
    for (size_t i = 0; i < subspace_dims.size(); ++i) {
      if (subspace_dims[i] <= 0 || subspace_dims[i] >= N)
        throw std::domain_error("FlagDescriptor: dimensions must lie strictly between 0 and N");
      if (i > 0 && subspace_dims[i] <= subspace_dims[i - 1])
        throw std::domain_error("FlagDescriptor: dimensions must strictly increase");
    }
  }

  static FlagDescriptor projective_space(int r) { return FlagDescriptor({1}, r + 1); }
  static FlagDescriptor grassmannian(int k, int N) { return FlagDescriptor({k}, N); }

  int steps() const { return static_cast<int>(subspace_dims.size()); }  // l = h^2

  /// rank K_i for i = 0..l, the graded pieces of the quotient tower.
  std::vector<int> kernel_ranks() const {
    std::vector<int> r;
    int prev = 0;
    for (int m : subspace_dims) {
      r.push_back(m - prev);
      prev = m;
    }
    r.push_back(N - prev);
    return r;
  }

  int dim() const {
    int d = 0;
    for (int i = 0; i < steps(); ++i) {
      const int next = (i + 1 < steps()) ? subspace_dims[i + 1] : N;
      d += subspace_dims[i] * (next - subspace_dims[i]);
    }
    return d;
  }

  int h2() const { return steps(); }

  int h4() const {
    int big = 0;
    for (int r : kernel_ranks())
      if (r >= 2) ++big;
    const int l = steps();
    const int v = static_cast<int>(binomial(l + 1, 2)) + big - 1;
    if (v < 0) throw integrity_error("FlagDescriptor: negative h4");
    return v;
  }

  bool is_projective_line() const { return steps() == 1 && subspace_dims[0] == 1 && N == 2; }

  std::string str() const {
    std::ostringstream os;
    os << "flag:";
    for (size_t i = 0; i < subspace_dims.size(); ++i) {
      if (i) os << ',';
      os << subspace_dims[i];
    }
    os << '@' << N;
    return os.str();
  }
};

struct FlagBetti {
  int dim;
  int h2;
  int h4;
  std::vector<int> kernel_ranks;
};

inline FlagBetti flag_betti(const FlagDescriptor& f) {
  return {f.dim(), f.h2(), f.h4(), f.kernel_ranks()};
}

}  // namespace gwrecon
