#pragma once

#include <algorithm>
#include <cstdlib>
#include <initializer_list>
#include <string>
#include <vector>

#include "twoisog/arith.hpp"

namespace testsupport {

using twoisog::Integer;
using twoisog::mod;
using twoisog::sign;

// Brute-force local solvability, written without the disk recursion: evaluate
// both affine patches at the integers below p^k and accept an exact square.

inline long lmod(const Integer& x, long m) { return mod(x, Integer(m)).get_si(); }

// h(z) with integer coefficients, constant term first.
inline Integer eval_int(const std::vector<Integer>& h, const Integer& z) {
  Integer r = 0;
  for (auto it = h.rbegin(); it != h.rend(); ++it) r = r * z + *it;
  return r;
}

// Exact test that the integer h(z) is a nonzero square in Q_p.
inline bool is_padic_square(const Integer& value, long p) {
  if (sign(value) == 0) return false;
  Integer x = value;
  int v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    ++v;
  }
  if (v % 2) return false;
  if (p == 2) return lmod(x, 8) == 1;
  long u = lmod(x, p);
  for (long s = 1; s < p; ++s)
    if (s * s % p == u) return true;
  return false;
}

inline bool brute_padic(const std::vector<Integer>& h, long p) {
  long pk = p;
  while (pk < 3000) pk *= p;
  std::vector<Integer> rev(h.rbegin(), h.rend());
  for (const std::vector<Integer>* poly : std::initializer_list<const std::vector<Integer>*>{&h, &rev})
    for (long z = 0; z < pk; ++z)
      if (is_padic_square(eval_int(*poly, Integer(z)), p)) return true;
  return false;
}

inline bool brute_real(const std::vector<Integer>& h) {
  if (sign(h[4]) > 0 || sign(h[0]) >= 0) return true;
  for (int i = 1; i <= 40000; ++i) {
    double z = i * 0.0025;
    double s = z * z;
    double val = h[4].get_d() * s * s + h[2].get_d() * s + h[0].get_d();
    if (val >= 0) return true;
  }
  return false;
}

// w^2 = d z^4 - 2a z^2 + (a^2 - 4b)/d, scaled by d^2.
inline std::vector<Integer> scaled_torsor(long a, long b, const Integer& d) {
  Integer bd = Integer(a * a - 4 * b);
  return {bd * d, 0, Integer(-2 * a) * d * d, 0, d * d * d};
}

inline std::vector<long> small_primes_of(long n) {
  std::vector<long> out;
  n = std::labs(n);
  for (long p = 2; p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  return out;
}

inline std::vector<Integer> candidate_classes(const std::vector<long>& primes) {
  std::vector<Integer> out{Integer(1)};
  std::vector<long> gens{-1};
  gens.insert(gens.end(), primes.begin(), primes.end());
  for (long g : gens) {
    std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) out.push_back(out[i] * g);
  }
  return out;
}

// Classes d for which the phi torsor of (a, b) is solvable at the real place,
// at the primes of 2 b b' and at 3, 5, 7.
inline std::vector<Integer> brute_selmer(long a, long b) {
  long bd = a * a - 4 * b;
  std::vector<long> primes = small_primes_of(2 * b * bd);
  std::vector<long> test = primes;
  for (long p : {3L, 5L, 7L})
    if (std::find(test.begin(), test.end(), p) == test.end()) test.push_back(p);
  std::vector<Integer> out;
  for (const auto& d : candidate_classes(primes)) {
    auto h = scaled_torsor(a, b, d);
    bool ok = brute_real(h);
    for (long p : test) ok = ok && brute_padic(h, p);
    if (ok) out.push_back(d);
  }
  return out;
}

}  // namespace testsupport
