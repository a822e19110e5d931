#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cfindep/complex_interval.hpp"
#include "cfindep/numfield.hpp"

namespace cfindep {

/// A partial quotient or convergent entry: an exact rational or an element of K.
using Scalar = std::variant<mpq_class, FieldElement>;

inline bool is_field(const Scalar& s) { return std::holds_alternative<FieldElement>(s); }

inline FieldPtr scalar_field(const Scalar& s) {
  if (const auto* f = std::get_if<FieldElement>(&s)) return f->field();
  return nullptr;
}

namespace detail {

/// Rationals promote into K; two different fields do not mix.
template <class OpQ, class OpK>
Scalar lift_binary(const Scalar& a, const Scalar& b, OpQ opq, OpK opk) {
  const auto* qa = std::get_if<mpq_class>(&a);
  const auto* qb = std::get_if<mpq_class>(&b);
  if (qa && qb) return opq(*qa, *qb);
  if (qa) {
    const auto& fb = std::get<FieldElement>(b);
    return opk(FieldElement::rational(fb.field(), *qa), fb);
  }
  if (qb) {
    const auto& fa = std::get<FieldElement>(a);
    return opk(fa, FieldElement::rational(fa.field(), *qb));
  }
  return opk(std::get<FieldElement>(a), std::get<FieldElement>(b));
}

}  // namespace detail

inline Scalar s_add(const Scalar& a, const Scalar& b) {
  return detail::lift_binary(
      a, b, [](const mpq_class& x, const mpq_class& y) { return Scalar(mpq_class(x + y)); },
      [](const FieldElement& x, const FieldElement& y) { return Scalar(x + y); });
}
inline Scalar s_sub(const Scalar& a, const Scalar& b) {
  return detail::lift_binary(
      a, b, [](const mpq_class& x, const mpq_class& y) { return Scalar(mpq_class(x - y)); },
      [](const FieldElement& x, const FieldElement& y) { return Scalar(x - y); });
}
inline Scalar s_mul(const Scalar& a, const Scalar& b) {
  return detail::lift_binary(
      a, b, [](const mpq_class& x, const mpq_class& y) { return Scalar(mpq_class(x * y)); },
      [](const FieldElement& x, const FieldElement& y) { return Scalar(x * y); });
}
inline bool s_is_zero(const Scalar& a) {
  if (const auto* q = std::get_if<mpq_class>(&a)) return *q == 0;
  return std::get<FieldElement>(a).is_zero();
}
inline Scalar s_div(const Scalar& a, const Scalar& b) {
  if (s_is_zero(b)) raise(ErrorCode::DivisionByZero, "scalar division by zero");
  return detail::lift_binary(
      a, b, [](const mpq_class& x, const mpq_class& y) { return Scalar(mpq_class(x / y)); },
      [](const FieldElement& x, const FieldElement& y) { return Scalar(x / y); });
}
inline Scalar s_neg(const Scalar& a) {
  if (const auto* q = std::get_if<mpq_class>(&a)) return mpq_class(-*q);
  return -std::get<FieldElement>(a);
}
inline bool s_equal(const Scalar& a, const Scalar& b) { return s_is_zero(s_sub(a, b)); }

/// Sign under the distinguished (identity) embedding; exact.
inline int s_sign(const Scalar& a) {
  if (const auto* q = std::get_if<mpq_class>(&a)) return sgn(*q);
  return sign(std::get<FieldElement>(a));
}

/// Identity-embedding enclosure with relative width about 2^-prec.
inline DyadicInterval s_enclose(const Scalar& a, long prec = kDefaultPrecision) {
  if (const auto* q = std::get_if<mpq_class>(&a)) return DyadicInterval::from_rational(*q, prec);
  return enclose(std::get<FieldElement>(a), prec);
}

inline std::string s_to_string(const Scalar& a) {
  if (const auto* q = std::get_if<mpq_class>(&a)) return q->get_str();
  return std::get<FieldElement>(a).to_string();
}

inline Scalar s_pow(const Scalar& a, unsigned long k) {
  if (const auto* q = std::get_if<mpq_class>(&a)) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q->get_num_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), q->get_den_mpz_t(), k);
    return mpq_class(n, d);  // already canonical: gcd(n^k, d^k) = 1
  }
  return std::get<FieldElement>(a).pow(k);
}

/// Convergent pair at index n: (p_{n-1}, q_{n-1}, p_n, q_n).
struct ConvergentState {
  long n = 0;
  Scalar p_prev = mpq_class(1);
  Scalar q_prev = mpq_class(0);
  Scalar p_cur = mpq_class(0);
  Scalar q_cur = mpq_class(1);
};

/// State after a_0: (p_{-1}, q_{-1}) = (1, 0), (p_0, q_0) = (a_0, 1).
inline ConvergentState cf_start(const Scalar& a0) {
  ConvergentState s;
  s.p_cur = a0;
  return s;
}

inline ConvergentState advance(const ConvergentState& s, const Scalar& a_next) {
  ConvergentState t;
  t.n = s.n + 1;
  t.p_prev = s.p_cur;
  t.q_prev = s.q_cur;
  t.p_cur = s_add(s_mul(a_next, s.p_cur), s.p_prev);
  t.q_cur = s_add(s_mul(a_next, s.q_cur), s.q_prev);
  return t;
}

/// q_n p_{n-1} - p_n q_{n-1} == (-1)^n, checked exactly.
inline bool determinant_identity_holds(const ConvergentState& s) {
  Scalar det = s_sub(s_mul(s.q_cur, s.p_prev), s_mul(s.p_cur, s.q_prev));
  return s_equal(det, mpq_class(s.n % 2 == 0 ? 1 : -1));
}

/// States for indices 0..n from quotients a_0..a_n.
inline std::vector<ConvergentState> convergents(const std::vector<Scalar>& quotients) {
  std::vector<ConvergentState> out;
  if (quotients.empty()) return out;
  out.push_back(cf_start(quotients[0]));
  for (std::size_t k = 1; k < quotients.size(); ++k) out.push_back(cfindep::advance(out.back(), quotients[k]));
  return out;
}

/// Backward evaluation a_0 + 1/(a_1 + 1/(... + 1/a_n)).
inline Scalar eval_finite(const std::vector<Scalar>& quotients) {
  if (quotients.empty()) raise(ErrorCode::InvalidArgument, "empty continued fraction");
  Scalar v = quotients.back();
  for (std::size_t k = quotients.size() - 1; k-- > 0;) {
    if (s_is_zero(v)) raise(ErrorCode::ZeroTailDivision, "tail at index " + std::to_string(k + 1) + " is zero");
    v = s_add(quotients[k], s_div(mpq_class(1), v));
  }
  return v;
}

/// sum_{k=1}^n (-1)^{k+1} / (q_k q_{k-1}), which equals p_n/q_n when a_0 = 0.
inline Scalar alternating_sum(const std::vector<ConvergentState>& history) {
  if (history.empty()) raise(ErrorCode::InvalidArgument, "empty convergent history");
  if (!s_is_zero(history.front().p_cur)) raise(ErrorCode::InvalidArgument, "alternating sum needs a_0 = 0");
  Scalar sum = mpq_class(0);
  for (std::size_t k = 1; k < history.size(); ++k) {
    Scalar term = s_div(mpq_class(1), s_mul(history[k].q_cur, history[k - 1].q_cur));
    sum = (k % 2 == 1) ? s_add(sum, term) : s_sub(sum, term);
  }
  return sum;
}

/// q_n > prod_{k=1}^n a_k, compared exactly. Strict, so n = 1 (equality) is false.
inline bool product_lower_bound_check(const std::vector<Scalar>& quotients) {
  if (quotients.size() < 2) return false;
  for (std::size_t k = 1; k < quotients.size(); ++k) {
    if (s_sign(quotients[k]) <= 0) raise(ErrorCode::QuotientBelowOne, "product bound needs positive quotients");
  }
  auto hist = convergents(quotients);
  Scalar prod = mpq_class(1);
  for (std::size_t k = 1; k < quotients.size(); ++k) prod = s_mul(prod, quotients[k]);
  return s_sign(s_sub(hist.back().q_cur, prod)) > 0;
}

// ---------------------------------------------------------------------------
// Enclosures of infinite continued fractions.

struct CFValueEnclosure {
  DyadicInterval value;
  long order = 0;
  std::string tail_bound_kind;  // "nested-convergents" or "truncation"
  /// Enclosure of |alpha - p_n/q_n| from the error formula (diagnostic only).
  DyadicInterval error_bound;
};

namespace detail {

inline void require_quotients_at_least_one(const std::vector<Scalar>& a, long prec) {
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (const auto* q = std::get_if<mpq_class>(&a[k])) {
      if (*q < 1) raise(ErrorCode::QuotientBelowOne, "a_" + std::to_string(k) + " = " + q->get_str() + " < 1");
      continue;
    }
    DyadicInterval v = s_enclose(a[k], prec);
    if (cmp(v.lo(), Dyadic(1)) >= 0) continue;
    if (cmp(v.hi(), Dyadic(1)) < 0) raise(ErrorCode::QuotientBelowOne, "a_" + std::to_string(k) + " < 1");
    // straddles 1: decide exactly
    if (s_sign(s_sub(a[k], mpq_class(1))) < 0) raise(ErrorCode::QuotientBelowOne, "a_" + std::to_string(k) + " < 1");
  }
}

}  // namespace detail

/// Error formula bound: |alpha - p_n/q_n| = 1 / (q_n^2 (alpha_{n+1} + q_{n-1}/q_n)), where the
/// tail alpha_{n+1} lies in [a_{n+1}, a_{n+1} + 1].
inline DyadicInterval error_formula_bound(const DyadicInterval& qn, const DyadicInterval& qprev,
                                          const DyadicInterval& a_next, long prec) {
  DyadicInterval ratio = iv_div(qprev, qn, prec);
  DyadicInterval tail(a_next.lo(), a_next.hi() + Dyadic(1));
  DyadicInterval den = iv_mul(iv_sqr(qn, prec), iv_add(tail, ratio, prec), prec);
  return iv_inv(den, prec);
}

/// Enclose alpha = [a_0; a_1, ...] given a_0..a_{n+1}. The limit lies strictly between
/// p_n/q_n and p_{n+1}/q_{n+1}, at distance at least 1/(q_n^2 (a_{n+1} + 2)) from p_n/q_n.
inline CFValueEnclosure enclose_value(const std::vector<Scalar>& a, long n, long prec = kDefaultPrecision) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "enclose_value needs n >= 1");
  if (static_cast<long>(a.size()) < n + 2) raise(ErrorCode::InvalidArgument, "enclose_value needs a_0..a_{n+1}");
  std::vector<Scalar> used(a.begin(), a.begin() + n + 2);
  detail::require_quotients_at_least_one(used, 64);
  auto hist = convergents(used);
  const auto& sn = hist[static_cast<std::size_t>(n)];
  const auto& sn1 = hist[static_cast<std::size_t>(n + 1)];
  bool even = (n % 2 == 0);

  CFValueEnclosure out;
  out.order = n;

  bool all_rational = true;
  for (const auto& s : used) all_rational = all_rational && !is_field(s);
  if (all_rational) {
    const mpq_class& pn = std::get<mpq_class>(sn.p_cur);
    const mpq_class& qn = std::get<mpq_class>(sn.q_cur);
    const mpq_class& pn1 = std::get<mpq_class>(sn1.p_cur);
    const mpq_class& qn1 = std::get<mpq_class>(sn1.q_cur);
    const mpq_class& an1 = std::get<mpq_class>(used.back());
    mpq_class cn = pn / qn, cn1 = pn1 / qn1;
    mpq_class gap = 1 / (qn * qn * (an1 + 2));
    mpq_class lo = even ? mpq_class(cn + gap) : cn1;
    mpq_class hi = even ? cn1 : mpq_class(cn - gap);
    out.value = DyadicInterval(from_rational(lo, prec, Round::Down), from_rational(hi, prec, Round::Up));
    mpq_class bound = 1 / (qn * qn1);
    out.tail_bound_kind = (cmp(out.value.width(), bound) <= 0) ? "nested-convergents" : "truncation";
    out.error_bound = error_formula_bound(DyadicInterval::from_rational(qn, prec + 32),
                                          DyadicInterval::from_rational(std::get<mpq_class>(sn.q_prev), prec + 32),
                                          DyadicInterval::from_rational(an1, prec + 32), prec);
    return out;
  }

  // Field-valued quotients: identity-embedding intervals at a higher working precision.
  long wp = prec + 32;
  DyadicInterval pn = s_enclose(sn.p_cur, wp), qn = s_enclose(sn.q_cur, wp);
  DyadicInterval pn1 = s_enclose(sn1.p_cur, wp), qn1 = s_enclose(sn1.q_cur, wp);
  DyadicInterval qprev = s_enclose(sn.q_prev, wp);
  DyadicInterval an1 = s_enclose(used.back(), wp);
  if (!qn.positive() || !qn1.positive()) raise(ErrorCode::PrecisionInsufficient, "convergent denominators not resolved");
  DyadicInterval cn = iv_div(pn, qn, wp), cn1 = iv_div(pn1, qn1, wp);
  DyadicInterval gap = iv_inv(iv_mul(iv_sqr(qn, wp), iv_add(an1, DyadicInterval(2), wp), wp), wp);
  Dyadic lo, hi;
  if (even) {
    lo = iv_add(cn, DyadicInterval(gap.lo()), wp).lo();
    hi = cn1.hi();
  } else {
    lo = cn1.lo();
    hi = iv_sub(cn, DyadicInterval(gap.lo()), wp).hi();
  }
  if (cmp(lo, hi) > 0) raise(ErrorCode::PrecisionInsufficient, "enclosure endpoints crossed");
  out.value = round_out(DyadicInterval(lo, hi), prec);
  DyadicInterval bound = iv_inv(iv_mul(qn, qn1, wp), wp);
  out.tail_bound_kind = (cmp(out.value.width(), bound.lo()) <= 0) ? "nested-convergents" : "truncation";
  out.error_bound = error_formula_bound(qn, qprev, an1, prec);
  return out;
}

/// Enclosure when only interval enclosures of the quotients are available.
inline CFValueEnclosure enclose_value_intervals(const std::vector<DyadicInterval>& a, long n, long prec = kDefaultPrecision) {
  if (n < 1 || static_cast<long>(a.size()) < n + 2) raise(ErrorCode::InvalidArgument, "enclose_value needs a_0..a_{n+1}");
  long wp = prec + 32;
  for (long k = 1; k <= n + 1; ++k) {
    if (cmp(a[static_cast<std::size_t>(k)].lo(), Dyadic(1)) < 0) {
      raise(ErrorCode::QuotientBelowOne, "a_" + std::to_string(k) + " not certified >= 1");
    }
  }
  DyadicInterval pp(1), qp(0), p = a[0], q(1);
  DyadicInterval pn, qn, qprev;
  for (long k = 1; k <= n + 1; ++k) {
    if (k == n + 1) {
      pn = p;
      qn = q;
      qprev = qp;
    }
    DyadicInterval np = iv_add(iv_mul(a[static_cast<std::size_t>(k)], p, wp), pp, wp);
    DyadicInterval nq = iv_add(iv_mul(a[static_cast<std::size_t>(k)], q, wp), qp, wp);
    pp = p;
    qp = q;
    p = np;
    q = nq;
  }
  CFValueEnclosure out;
  out.order = n;
  out.value = round_out(hull(iv_div(pn, qn, wp), iv_div(p, q, wp)), prec);
  DyadicInterval bound = iv_inv(iv_mul(qn, q, wp), wp);
  out.tail_bound_kind = (cmp(out.value.width(), bound.lo()) <= 0) ? "nested-convergents" : "truncation";
  out.error_bound = error_formula_bound(qn, qprev, a[static_cast<std::size_t>(n + 1)], prec);
  return out;
}

/// q_{n-1}/q_n == [0; a_n, ..., a_1] (the two forms of the error denominator).
inline bool reversed_cf_identity_holds(const std::vector<Scalar>& a, long n) {
  if (n < 1 || static_cast<long>(a.size()) < n + 1) raise(ErrorCode::InvalidArgument, "need a_0..a_n");
  auto hist = convergents(std::vector<Scalar>(a.begin(), a.begin() + n + 1));
  const auto& s = hist.back();
  std::vector<Scalar> rev{mpq_class(0)};
  for (long k = n; k >= 1; --k) rev.push_back(a[static_cast<std::size_t>(k)]);
  return s_equal(s_div(s.q_prev, s.q_cur), eval_finite(rev));
}

// ---------------------------------------------------------------------------
// Complex continued fractions (backward evaluation only).

inline ComplexInterval complex_cf_eval(const std::vector<ComplexInterval>& z, long prec = kDefaultPrecision) {
  if (z.empty()) raise(ErrorCode::InvalidArgument, "empty continued fraction");
  ComplexInterval v = z.back();
  for (std::size_t k = z.size() - 1; k-- > 0;) {
    if (v.contains_zero()) raise(ErrorCode::TailContainsZero, "tail enclosure at index " + std::to_string(k + 1) + " contains 0");
    v = c_add(z[k], c_inv(v, prec), prec);
  }
  return v;
}

/// Exact Gaussian-rational complex number.
struct GaussianRational {
  mpq_class re = 0;
  mpq_class im = 0;

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational operator-() const { return {-re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational inverse() const {
    mpq_class n = re * re + im * im;
    if (n == 0) raise(ErrorCode::ZeroTailDivision, "inverse of zero");
    return {re / n, -im / n};
  }
  mpq_class norm2() const { return re * re + im * im; }
  ComplexInterval enclose(long prec = kDefaultPrecision) const {
    return ComplexInterval::from_rationals(re, im, prec);
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) { return a.re == b.re && a.im == b.im; }
};

inline GaussianRational complex_cf_eval_exact(const std::vector<GaussianRational>& z) {
  if (z.empty()) raise(ErrorCode::InvalidArgument, "empty continued fraction");
  GaussianRational v = z.back();
  for (std::size_t k = z.size() - 1; k-- > 0;) {
    if (v.is_zero()) raise(ErrorCode::ZeroTailDivision, "tail at index " + std::to_string(k + 1) + " is zero");
    v = z[k] + v.inverse();
  }
  return v;
}

}  // namespace cfindep
