#pragma once

#include <mpfr.h>

#include <string>

#include "cfindep/interval.hpp"

namespace cfindep {

namespace detail {

/// Decimal rendering of an exact dyadic with `digits` significant digits.
inline std::string dyadic_to_decimal(const Dyadic& x, int digits, mpfr_rnd_t rnd) {
  if (x.is_zero()) return "0";
  mpfr_t v;
  mpfr_init2(v, std::max<long>(x.mantissa_bits(), 2));
  mpfr_set_z_2exp(v, x.mantissa().get_mpz_t(), x.exponent(), MPFR_RNDN);  // exact
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), v, rnd);
  std::string s(raw);
  mpfr_free_str(raw);
  mpfr_clear(v);
  std::string sign;
  if (s[0] == '-') {
    sign = "-";
    s.erase(0, 1);
  }
  // value = 0.s * 10^e
  long exp10 = static_cast<long>(e) - 1;
  std::string out;
  if (exp10 >= 0 && exp10 < digits) {
    out = s.substr(0, static_cast<std::size_t>(exp10 + 1));
    std::string frac = s.substr(static_cast<std::size_t>(exp10 + 1));
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  } else if (exp10 < 0 && exp10 >= -4) {
    std::string frac = std::string(static_cast<std::size_t>(-exp10 - 1), '0') + s;
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = "0." + frac;
  } else {
    std::string frac = s.substr(1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = s.substr(0, 1) + (frac.empty() ? "" : "." + frac) + "e" + (exp10 >= 0 ? "+" : "") + std::to_string(exp10);
  }
  return sign + out;
}

}  // namespace detail

struct DecimalValue {
  std::string value;        // midpoint, rounded to nearest
  std::string error_bound;  // |true - value| <= error_bound for every point of the interval
};

inline DecimalValue to_decimal(const DyadicInterval& x, int digits = 20) {
  Dyadic mid = x.mid();
  Dyadic radius = (x.hi() - x.lo()).ldexp(-1);
  // nearest rounding to `digits` significant digits errs by < |mid| 10^(1-digits) < |mid| 2^(-3(digits-1))
  Dyadic err = radius;
  if (!mid.is_zero()) err = err + abs(mid).ldexp(-3 * (digits - 1));
  return {detail::dyadic_to_decimal(mid, digits, MPFR_RNDN), detail::dyadic_to_decimal(err, 3, MPFR_RNDU)};
}

/// Short human-readable form "value ± err".
inline std::string decimal_string(const DyadicInterval& x, int digits = 12) {
  DecimalValue d = to_decimal(x, digits);
  return d.error_bound == "0" ? d.value : d.value + " ± " + d.error_bound;
}

}  // namespace cfindep
