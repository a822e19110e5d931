#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "cfindep/dyadic.hpp"
#include "cfindep/interval.hpp"

namespace cfindep {

/// Polynomial with arbitrary-precision integer coefficients, constant term first.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }  // NOLINT(google-explicit-constructor)
  IntPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static IntPoly monomial(const mpz_class& coeff, std::size_t deg) {
    std::vector<mpz_class> c(deg + 1, 0);
    c[deg] = coeff;
    return IntPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
  const mpz_class& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
  }

  /// Content removed, leading coefficient made positive.
  IntPoly primitive() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (leading() < 0) g = -g;
    std::vector<mpz_class> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(c[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(c));
  }

  IntPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<mpz_class> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPoly(std::move(d));
  }

  mpz_class operator()(const mpz_class& x) const {
    mpz_class r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  mpq_class operator()(const mpq_class& x) const {
    mpq_class r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + mpq_class(*it);
    return r;
  }

  /// Exact value at a dyadic point.
  Dyadic operator()(const Dyadic& x) const {
    if (c_.empty()) return {};
    // p(m 2^e): with e < 0 evaluate 2^{-e deg} p(m 2^e) as an integer polynomial in m.
    if (x.exponent() >= 0) {
      mpz_class xv = x.mantissa();
      mpz_mul_2exp(xv.get_mpz_t(), xv.get_mpz_t(), static_cast<mp_bitcnt_t>(x.exponent()));
      return Dyadic((*this)(xv), 0);
    }
    long s = -x.exponent();
    mpz_class r;
    const mpz_class& m = x.mantissa();
    long deg = degree();
    // Horner with scaling: r = sum c_i m^i 2^{s (deg - i)}
    r = c_[static_cast<std::size_t>(deg)];
    for (long i = deg - 1; i >= 0; --i) {
      mpz_class t = c_[static_cast<std::size_t>(i)];
      mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<mp_bitcnt_t>(s * (deg - i)));
      r = r * m + t;
    }
    return Dyadic(r, -s * deg);
  }

  /// Horner evaluation over an interval, rounded outward at `prec` bits per step.
  DyadicInterval operator()(const DyadicInterval& x, long prec) const {
    if (c_.empty()) return DyadicInterval(0);
    DyadicInterval r(Dyadic(c_.back(), 0));
    for (long i = degree() - 1; i >= 0; --i) {
      r = iv_add(iv_mul(r, x, prec), DyadicInterval(Dyadic(c_[static_cast<std::size_t>(i)], 0)), prec);
    }
    return r;
  }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& a) {
    std::vector<mpz_class> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.c_[i];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(c));
  }
  friend IntPoly operator*(const mpz_class& k, const IntPoly& a) {
    std::vector<mpz_class> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * a.c_[i];
    return IntPoly(std::move(c));
  }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) {
      const mpz_class& v = c_[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      if (!s.empty()) s += (v < 0) ? " - " : " + ";
      else if (v < 0) s += "-";
      mpz_class a = abs(v);
      if (a != 1 || i == 0) s += a.get_str();
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<mpz_class> c_;
};

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) raise(ErrorCode::DivisionByZero, "pseudo-remainder by zero polynomial");
  std::vector<mpz_class> r = a.coeffs();
  long db = b.degree();
  const mpz_class& lb = b.leading();
  long dr = static_cast<long>(r.size()) - 1;
  while (dr >= db && dr >= 0) {
    mpz_class lr = r[static_cast<std::size_t>(dr)];
    for (auto& v : r) v *= lb;
    for (long i = 0; i <= db; ++i) r[static_cast<std::size_t>(dr - db + i)] -= lr * b.coeffs()[static_cast<std::size_t>(i)];
    while (!r.empty() && r.back() == 0) r.pop_back();
    dr = static_cast<long>(r.size()) - 1;
  }
  return IntPoly(std::move(r));
}

/// Exact division in Z[x]; returns false when b does not divide a.
inline bool divides_exactly(const IntPoly& a, const IntPoly& b, IntPoly* quotient = nullptr) {
  if (b.is_zero()) raise(ErrorCode::DivisionByZero, "division by zero polynomial");
  std::vector<mpz_class> r = a.coeffs();
  long db = b.degree();
  long da = a.degree();
  if (da < db) {
    if (quotient) *quotient = IntPoly();
    return a.is_zero();
  }
  std::vector<mpz_class> q(static_cast<std::size_t>(da - db + 1), 0);
  for (long k = da - db; k >= 0; --k) {
    mpz_class& top = r[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t())) return false;
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
    q[static_cast<std::size_t>(k)] = t;
    for (long i = 0; i <= db; ++i) r[static_cast<std::size_t>(k + i)] -= t * b.coeffs()[static_cast<std::size_t>(i)];
  }
  for (const auto& v : r)
    if (v != 0) return false;
  if (quotient) *quotient = IntPoly(std::move(q));
  return true;
}

/// gcd in Z[x] (primitive, positive leading coefficient) via the primitive PRS.
inline IntPoly gcd(IntPoly a, IntPoly b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  a = a.primitive();
  b = b.primitive();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : r.primitive();
  }
  return a.primitive();
}

inline bool is_squarefree(const IntPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
inline mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Resultant via the Sylvester matrix.
inline mpz_class resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  long m = f.degree(), n = g.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), f.leading().get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), g.leading().get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }
  auto size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
  for (long i = 0; i < n; ++i)
    for (long k = 0; k <= m; ++k) s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + k)] = f.coeff(static_cast<std::size_t>(m - k));
  for (long i = 0; i < m; ++i)
    for (long k = 0; k <= n; ++k)
      s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + k)] = g.coeff(static_cast<std::size_t>(n - k));
  return bareiss_determinant(std::move(s));
}

/// Sturm chain p, p', -rem(...), ... with positive rescaling (signs preserved).
inline std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  IntPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    IntPoly r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    // prem multiplies by lc(b)^(da-db+1); undo a negative factor so that r = -c * rem(a, b), c > 0.
    long k = a.degree() - b.degree() + 1;
    bool flip = (b.leading() < 0) && (k % 2 != 0);
    mpz_class g = r.content();
    std::vector<mpz_class> c(r.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      mpz_divexact(c[i].get_mpz_t(), r.coeffs()[i].get_mpz_t(), g.get_mpz_t());
      if (!flip) c[i] = -c[i];
    }
    chain.emplace_back(std::move(c));
  }
  return chain;
}

namespace detail {

inline int sign_variations(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

inline int variations_at(const std::vector<IntPoly>& chain, const Dyadic& x) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& q : chain) s.push_back(q(x).sign());
  return sign_variations(s);
}

inline int variations_at_infinity(const std::vector<IntPoly>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& q : chain) {
    int sg = sgn(q.leading());
    if (!positive && (q.degree() % 2 != 0)) sg = -sg;
    s.push_back(sg);
  }
  return sign_variations(s);
}

}  // namespace detail

/// Power of two bounding every root modulus (Cauchy bound).
inline Dyadic root_bound(const IntPoly& p) {
  if (p.degree() <= 0) return Dyadic(1);
  mpz_class lc = abs(p.leading());
  mpz_class best = 0;
  for (long i = 0; i < p.degree(); ++i) {
    mpz_class a = abs(p.coeff(static_cast<std::size_t>(i)));
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), lc.get_mpz_t());
    if (q > best) best = q;
  }
  best += 1;
  return Dyadic::pow2(bit_length(best));
}

}  // namespace cfindep
