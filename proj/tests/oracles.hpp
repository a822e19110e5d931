#pragma once

// Independent reference computations used by the tests. Nothing here goes through
// the library's interval or root-finding code.

#include <gmpxx.h>

#include <vector>

namespace oracle {

/// floor(sqrt(n) * 2^bits) computed with integer square roots.
inline mpz_class sqrt_scaled(unsigned long n, unsigned long bits) {
  mpz_class v = n;
  mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), 2 * bits);
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

/// Rational interval [lo, hi] of width 2^-bits around sqrt(n).
inline std::pair<mpq_class, mpq_class> sqrt_bracket(unsigned long n, unsigned long bits) {
  mpz_class r = sqrt_scaled(n, bits);
  mpq_class lo(r), hi(r + 1);
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  lo /= den;
  hi /= den;
  return {lo, hi};
}

/// Denominators q_0..q_n of [a_0; a_1, ...] with a constant quotient.
inline std::vector<mpz_class> constant_q(long a, long n) {
  std::vector<mpz_class> q{1};
  mpz_class prev = 0;
  for (long k = 1; k <= n; ++k) {
    mpz_class next = a * q.back() + prev;
    prev = q.back();
    q.push_back(next);
  }
  return q;
}

}  // namespace oracle
