#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library code it is checking.

#include <mpfr.h>

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "valmono/values.hpp"

namespace oracle {

using valmono::Rational;

inline std::vector<unsigned long> primes(std::size_t count) {
  std::vector<unsigned long> out;
  for (unsigned long c = 2; out.size() < count; ++c) {
    bool p = true;
    for (unsigned long d = 2; d * d <= c; ++d)
      if (c % d == 0) p = false;
    if (p) out.push_back(c);
  }
  return out;
}

/// Sign of sum d_0 + sum_{i>=1} d_i sqrt(p_i) in 1024-bit floating point,
/// with an exact zero test on the coordinates.
inline int sqrt_combination_sign(const std::vector<Rational>& d) {
  bool all_zero = true;
  for (const auto& q : d) all_zero = all_zero && sgn(q) == 0;
  if (all_zero) return 0;
  const auto ps = primes(d.size());
  mpfr_t acc, term, q;
  mpfr_inits2(1024, acc, term, q, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(acc, 1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    mpfr_set_q(q, d[i].get_mpq_t(), MPFR_RNDN);
    if (i == 0) {
      mpfr_set_ui(term, 1, MPFR_RNDN);
    } else {
      mpfr_set_ui(term, ps[i - 1], MPFR_RNDN);
      mpfr_sqrt(term, term, MPFR_RNDN);
    }
    mpfr_mul(term, term, q, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
  }
  const int s = mpfr_sgn(acc);
  mpfr_clears(acc, term, q, static_cast<mpfr_ptr>(nullptr));
  return s;
}

/// Smallest m in [1, max_m] with m*target an integer combination of the
/// (orthogonal coordinate) basis, by trying every m and every coefficient
/// vector in a box.
inline std::int64_t brute_min_multiple(const std::vector<Rational>& target,
                                       const std::vector<std::vector<Rational>>& basis,
                                       std::int64_t max_m, std::int64_t box) {
  const std::size_t r = basis.size();
  for (std::int64_t m = 1; m <= max_m; ++m) {
    std::vector<std::int64_t> c(r, -box);
    for (;;) {
      bool ok = true;
      for (std::size_t k = 0; k < target.size() && ok; ++k) {
        Rational s = Rational(m) * target[k];
        for (std::size_t i = 0; i < r; ++i) s -= Rational(static_cast<long>(c[i])) * basis[i][k];
        ok = sgn(s) == 0;
      }
      if (ok) return m;
      std::size_t i = 0;
      while (i < r && c[i] == box) c[i++] = -box;
      if (i == r) break;
      ++c[i];
    }
  }
  return -1;
}

/// Dense univariate long division by a monic divisor (coefficients low to high).
inline std::pair<std::vector<Rational>, std::vector<Rational>> long_divide(
    std::vector<Rational> f, const std::vector<Rational>& g) {
  const std::size_t dg = g.size() - 1;
  std::vector<Rational> q(f.size() > dg ? f.size() - dg : 1, Rational(0));
  for (std::size_t k = f.size(); k-- > dg;) {
    const Rational c = f[k];
    if (sgn(c) == 0) continue;
    q[k - dg] = c;
    for (std::size_t i = 0; i <= dg; ++i) f[k - dg + i] -= c * g[i];
  }
  f.resize(std::min(f.size(), dg));
  if (f.empty()) f.push_back(0);
  return {q, f};
}

/// Dense bivariate polynomials: map (a, b) -> coefficient.
using Dense2 = std::map<std::pair<int, int>, Rational>;

inline Dense2 mul(const Dense2& a, const Dense2& b) {
  Dense2 out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  for (auto it = out.begin(); it != out.end();)
    it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline Dense2 add(Dense2 a, const Dense2& b) {
  for (const auto& [e, c] : b) a[e] += c;
  for (auto it = a.begin(); it != a.end();) it = sgn(it->second) == 0 ? a.erase(it) : std::next(it);
  return a;
}

inline Dense2 power(const Dense2& a, int k) {
  Dense2 out{{{0, 0}, Rational(1)}};
  for (int i = 0; i < k; ++i) out = mul(out, a);
  return out;
}

}  // namespace oracle
