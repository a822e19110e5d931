#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>
#include <vector>

#include "cfindep/dyadic.hpp"
#include "cfindep/error.hpp"

namespace cfindep {

inline constexpr long kDefaultPrecision = 128;

/// Closed interval [lo, hi] with dyadic endpoints. Every operation below returns an
/// interval containing the exact image of its inputs (outward rounding).
class DyadicInterval {
 public:
  DyadicInterval() = default;
  DyadicInterval(Dyadic point) : lo_(point), hi_(std::move(point)) {}  // NOLINT(google-explicit-constructor)
  DyadicInterval(long v) : lo_(v), hi_(v) {}                          // NOLINT(google-explicit-constructor)
  DyadicInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (cmp(lo_, hi_) > 0) raise(ErrorCode::InvalidArgument, "interval with lo > hi");
  }

  static DyadicInterval from_rational(const mpq_class& q, long prec = kDefaultPrecision) {
    return {cfindep::from_rational(q, prec, Round::Down), cfindep::from_rational(q, prec, Round::Up)};
  }

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }

  bool is_point() const { return lo_ == hi_; }
  Dyadic width() const { return hi_ - lo_; }
  Dyadic mid() const { return midpoint(lo_, hi_); }

  bool contains(const Dyadic& x) const { return cmp(lo_, x) <= 0 && cmp(x, hi_) <= 0; }
  bool contains(const mpq_class& q) const { return cmp(lo_, q) <= 0 && cmp(hi_, q) >= 0; }
  bool contains(const DyadicInterval& o) const { return cmp(lo_, o.lo_) <= 0 && cmp(o.hi_, hi_) <= 0; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool intersects(const DyadicInterval& o) const { return cmp(lo_, o.hi_) <= 0 && cmp(o.lo_, hi_) <= 0; }

  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }
  /// +1 / -1 when the sign is certain, 0 otherwise.
  int certain_sign() const { return positive() ? 1 : (negative() ? -1 : 0); }

  /// Largest |x| over the interval.
  Dyadic mag() const { return max(abs(lo_), abs(hi_)); }
  /// Smallest |x| over the interval.
  Dyadic mig() const {
    if (contains_zero()) return {};
    return min(abs(lo_), abs(hi_));
  }

  double to_double() const { return mid().to_double(); }

  DyadicInterval operator-() const { return {-hi_, -lo_}; }

  /// Exact sum/difference/product, no rounding; use the iv_* forms to bound growth.
  friend DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
    return {a.lo_ + b.lo_, a.hi_ + b.hi_};
  }
  friend DyadicInterval operator-(const DyadicInterval& a, const DyadicInterval& b) { return a + (-b); }
  friend DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
    Dyadic p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
  }

  friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  std::string to_string() const { return "[" + lo_.to_string() + ", " + hi_.to_string() + "]"; }

 private:
  Dyadic lo_;
  Dyadic hi_;
};

inline DyadicInterval round_out(const DyadicInterval& x, long prec) {
  return {round(x.lo(), prec, Round::Down), round(x.hi(), prec, Round::Up)};
}

inline DyadicInterval iv_add(const DyadicInterval& a, const DyadicInterval& b, long prec = kDefaultPrecision) {
  return round_out(a + b, prec);
}
inline DyadicInterval iv_sub(const DyadicInterval& a, const DyadicInterval& b, long prec = kDefaultPrecision) {
  return round_out(a - b, prec);
}
inline DyadicInterval iv_mul(const DyadicInterval& a, const DyadicInterval& b, long prec = kDefaultPrecision) {
  return round_out(a * b, prec);
}

inline DyadicInterval iv_sqr(const DyadicInterval& a, long prec = kDefaultPrecision) {
  Dyadic l2 = a.lo() * a.lo(), h2 = a.hi() * a.hi();
  if (a.contains_zero()) return round_out({Dyadic(), max(l2, h2)}, prec);
  return round_out({min(l2, h2), max(l2, h2)}, prec);
}

inline DyadicInterval iv_div(const DyadicInterval& a, const DyadicInterval& b, long prec = kDefaultPrecision) {
  if (b.contains_zero()) raise(ErrorCode::DivisorContainsZero, "divisor interval " + b.to_string() + " contains 0");
  const Dyadic* num[2] = {&a.lo(), &a.hi()};
  const Dyadic* den[2] = {&b.lo(), &b.hi()};
  Dyadic lo, hi;
  bool first = true;
  for (const auto* n : num) {
    for (const auto* d : den) {
      Dyadic l = div(*n, *d, prec, Round::Down), h = div(*n, *d, prec, Round::Up);
      if (first || cmp(l, lo) < 0) lo = l;
      if (first || cmp(h, hi) > 0) hi = h;
      first = false;
    }
  }
  return {lo, hi};
}

inline DyadicInterval iv_inv(const DyadicInterval& b, long prec = kDefaultPrecision) {
  return iv_div(DyadicInterval(1), b, prec);
}

inline DyadicInterval iv_sqrt(const DyadicInterval& a, long prec = kDefaultPrecision) {
  if (a.lo().sign() < 0) raise(ErrorCode::NegativeSqrt, "square root of interval with negative part");
  return {sqrt(a.lo(), prec, Round::Down), sqrt(a.hi(), prec, Round::Up)};
}

inline DyadicInterval iv_abs(const DyadicInterval& a) {
  if (a.lo().sign() >= 0) return a;
  if (a.hi().sign() <= 0) return -a;
  return {Dyadic(), max(-a.lo(), a.hi())};
}

inline DyadicInterval iv_max(const DyadicInterval& a, const DyadicInterval& b) {
  return {max(a.lo(), b.lo()), max(a.hi(), b.hi())};
}
inline DyadicInterval iv_min(const DyadicInterval& a, const DyadicInterval& b) {
  return {min(a.lo(), b.lo()), min(a.hi(), b.hi())};
}

inline DyadicInterval hull(const DyadicInterval& a, const DyadicInterval& b) {
  return {min(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

/// Returns false when the intersection is empty.
inline bool intersect(const DyadicInterval& a, const DyadicInterval& b, DyadicInterval& out) {
  if (!a.intersects(b)) return false;
  out = DyadicInterval(max(a.lo(), b.lo()), min(a.hi(), b.hi()));
  return true;
}

inline DyadicInterval iv_pow(const DyadicInterval& a, unsigned long k, long prec = kDefaultPrecision) {
  DyadicInterval result(1), base = a;
  while (k > 0) {
    if (k & 1UL) result = iv_mul(result, base, prec);
    k >>= 1UL;
    if (k > 0) base = iv_sqr(base, prec);
  }
  return result;
}

inline DyadicInterval iv_scale2(const DyadicInterval& a, long k) { return {a.lo().ldexp(k), a.hi().ldexp(k)}; }

/// Certain comparisons: true only when the relation holds for every pair of points.
inline bool certainly_less(const DyadicInterval& a, const DyadicInterval& b) { return cmp(a.hi(), b.lo()) < 0; }
inline bool certainly_leq(const DyadicInterval& a, const DyadicInterval& b) { return cmp(a.hi(), b.lo()) <= 0; }

// ---------------------------------------------------------------------------
// Elementary functions. Each endpoint goes through MPFR with a directed rounding
// mode, so the result still encloses the exact image.

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(long prec) { mpfr_init2(v_, static_cast<mpfr_prec_t>(std::max(prec, 2L))); }
  Mpfr(const Dyadic& d) {  // NOLINT(google-explicit-constructor)
    mpfr_init2(v_, static_cast<mpfr_prec_t>(std::max(d.mantissa_bits(), 2L)));
    mpfr_set_z_2exp(v_, d.mantissa().get_mpz_t(), d.exponent(), MPFR_RNDN);  // exact
  }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  Dyadic to_dyadic() const {
    if (mpfr_zero_p(v_)) return {};
    if (!mpfr_number_p(v_)) raise(ErrorCode::InvalidArgument, "non-finite MPFR result");
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    return Dyadic(m, static_cast<long>(e));
  }

 private:
  mpfr_t v_;
};

inline mpfr_rnd_t mode(Round r) { return r == Round::Down ? MPFR_RNDD : MPFR_RNDU; }

template <class F>
Dyadic apply_unary(F f, const Dyadic& x, long prec, Round dir) {
  Mpfr in(x), out(prec);
  f(out.get(), in.get(), mode(dir));
  return out.to_dyadic();
}

}  // namespace detail

/// Monotone increasing functions lift endpoint-wise.
inline DyadicInterval iv_log2(const DyadicInterval& x, long prec = kDefaultPrecision) {
  if (!x.positive()) raise(ErrorCode::InvalidArgument, "log2 of interval not strictly positive: " + x.to_string());
  return {detail::apply_unary(mpfr_log2, x.lo(), prec, Round::Down),
          detail::apply_unary(mpfr_log2, x.hi(), prec, Round::Up)};
}

inline DyadicInterval iv_log(const DyadicInterval& x, long prec = kDefaultPrecision) {
  if (!x.positive()) raise(ErrorCode::InvalidArgument, "log of interval not strictly positive: " + x.to_string());
  return {detail::apply_unary(mpfr_log, x.lo(), prec, Round::Down),
          detail::apply_unary(mpfr_log, x.hi(), prec, Round::Up)};
}

inline DyadicInterval iv_exp2(const DyadicInterval& x, long prec = kDefaultPrecision) {
  return {detail::apply_unary(mpfr_exp2, x.lo(), prec, Round::Down),
          detail::apply_unary(mpfr_exp2, x.hi(), prec, Round::Up)};
}

inline DyadicInterval iv_exp(const DyadicInterval& x, long prec = kDefaultPrecision) {
  return {detail::apply_unary(mpfr_exp, x.lo(), prec, Round::Down),
          detail::apply_unary(mpfr_exp, x.hi(), prec, Round::Up)};
}

/// x^y for x >= 0, y > 0 (used for (log2 a)^gamma). Monotone in x; in y the
/// direction depends on whether x is below or above 1, so all corners are taken.
inline DyadicInterval iv_pow_pos(const DyadicInterval& x, const DyadicInterval& y, long prec = kDefaultPrecision) {
  if (x.lo().sign() < 0) raise(ErrorCode::InvalidArgument, "power of interval with negative part");
  if (!y.positive()) raise(ErrorCode::InvalidArgument, "exponent interval must be positive");
  auto corner = [&](const Dyadic& base, const Dyadic& ex, Round dir) {
    if (base.is_zero()) return Dyadic();
    detail::Mpfr b(base), e(ex), out(prec);
    mpfr_pow(out.get(), b.get(), e.get(), detail::mode(dir));
    return out.to_dyadic();
  };
  Dyadic lo = min(corner(x.lo(), y.lo(), Round::Down), corner(x.lo(), y.hi(), Round::Down));
  Dyadic hi = max(corner(x.hi(), y.lo(), Round::Up), corner(x.hi(), y.hi(), Round::Up));
  return {lo, hi};
}

inline DyadicInterval iv_pi(long prec = kDefaultPrecision) {
  detail::Mpfr lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return {lo.to_dyadic(), hi.to_dyadic()};
}

}  // namespace cfindep
