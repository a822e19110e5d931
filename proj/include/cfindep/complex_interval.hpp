#pragma once

#include <string>
#include <utility>

#include "cfindep/interval.hpp"

namespace cfindep {

/// Rectangular complex enclosure re + i*im.
class ComplexInterval {
 public:
  ComplexInterval() = default;
  ComplexInterval(DyadicInterval re) : re_(std::move(re)), im_(0) {}  // NOLINT(google-explicit-constructor)
  ComplexInterval(long re) : re_(re), im_(0) {}                       // NOLINT(google-explicit-constructor)
  ComplexInterval(DyadicInterval re, DyadicInterval im) : re_(std::move(re)), im_(std::move(im)) {}

  static ComplexInterval from_rationals(const mpq_class& re, const mpq_class& im, long prec = kDefaultPrecision) {
    return {DyadicInterval::from_rational(re, prec), DyadicInterval::from_rational(im, prec)};
  }

  const DyadicInterval& re() const { return re_; }
  const DyadicInterval& im() const { return im_; }

  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool contains(const ComplexInterval& o) const { return re_.contains(o.re_) && im_.contains(o.im_); }
  bool intersects(const ComplexInterval& o) const { return re_.intersects(o.re_) && im_.intersects(o.im_); }

  ComplexInterval conj() const { return {re_, -im_}; }
  ComplexInterval operator-() const { return {-re_, -im_}; }

  std::string to_string() const { return re_.to_string() + " + i" + im_.to_string(); }

 private:
  DyadicInterval re_;
  DyadicInterval im_;
};

inline ComplexInterval c_add(const ComplexInterval& a, const ComplexInterval& b, long prec = kDefaultPrecision) {
  return {iv_add(a.re(), b.re(), prec), iv_add(a.im(), b.im(), prec)};
}

inline ComplexInterval c_sub(const ComplexInterval& a, const ComplexInterval& b, long prec = kDefaultPrecision) {
  return {iv_sub(a.re(), b.re(), prec), iv_sub(a.im(), b.im(), prec)};
}

inline ComplexInterval c_mul(const ComplexInterval& a, const ComplexInterval& b, long prec = kDefaultPrecision) {
  DyadicInterval re = round_out(a.re() * b.re() - a.im() * b.im(), prec);
  DyadicInterval im = round_out(a.re() * b.im() + a.im() * b.re(), prec);
  return {re, im};
}

/// |z|^2 enclosure.
inline DyadicInterval c_norm2(const ComplexInterval& z, long prec = kDefaultPrecision) {
  return iv_add(iv_sqr(z.re(), prec), iv_sqr(z.im(), prec), prec);
}

inline DyadicInterval c_abs(const ComplexInterval& z, long prec = kDefaultPrecision) {
  if (z.im().is_point() && z.im().lo().is_zero()) return round_out(iv_abs(z.re()), prec);
  return iv_sqrt(c_norm2(z, prec), prec);
}

inline ComplexInterval c_inv(const ComplexInterval& b, long prec = kDefaultPrecision) {
  if (b.contains_zero()) raise(ErrorCode::DivisorContainsZero, "complex divisor box contains 0: " + b.to_string());
  DyadicInterval den = c_norm2(b, prec + 8);
  return {iv_div(b.re(), den, prec), iv_div(-b.im(), den, prec)};
}

inline ComplexInterval c_div(const ComplexInterval& a, const ComplexInterval& b, long prec = kDefaultPrecision) {
  if (b.im().is_point() && b.im().lo().is_zero()) {
    return {iv_div(a.re(), b.re(), prec), iv_div(a.im(), b.re(), prec)};
  }
  return c_mul(a, c_inv(b, prec + 8), prec);
}

}  // namespace cfindep
