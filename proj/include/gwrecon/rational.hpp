#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace gwrecon {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Enumeration or recursion asked to exceed a configured size bound.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal exact-arithmetic consistency check failed.
class integrity_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Requested a (target, parameter) combination outside the supported range.
class unsupported_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Int factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Int binomial(const Int& n, int k) {
  if (k < 0 || n < 0) return 0;
  Int r = 1;
  for (int i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

inline Int binomial(int n, int k) { return binomial(Int(n), k); }

inline Int pow_int(const Int& b, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

/// [x]+ : identity on integers, x + 1/2 on half-integers.
inline Rat bracket_plus(const Rat& x) {
  const Int num = numerator(x), den = denominator(x);
  if (den == 1) return x;
  if (den == 2) return x + Rat(1, 2);
  throw std::domain_error("bracket_plus: argument is neither integer nor half-integer");
}

inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

inline Int as_integer(const Rat& x) {
  if (!is_integer(x)) throw integrity_error("expected integer, got " + x.str());
  return numerator(x);
}

/// Canonical "p/q" form with gcd(p,q)=1, q>0; integers print without slash.
inline std::string rat_to_string(const Rat& x) {
  if (is_integer(x)) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

}  // namespace gwrecon
