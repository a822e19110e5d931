#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfindep/numfield.hpp"

namespace cfindep {

using IntMatrix = std::vector<std::vector<mpz_class>>;

struct LllResult {
  IntMatrix basis;      // reduced rows
  IntMatrix transform;  // unimodular H with basis = H * input
  std::vector<mpz_class> d;  // d_0 = 1, d_i = prod_{j<=i} |b*_j|^2 (integral Gram-Schmidt data)
  long swaps = 0;

  /// |b*_i|^2 = d_{i+1} / d_i for the 0-based row i.
  mpq_class gs_norm2(std::size_t i) const {
    mpq_class v(d[i + 1], d[i]);
    v.canonicalize();
    return v;
  }
};

namespace detail {

inline mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Nearest integer to num/den (den > 0), ties toward +inf.
inline mpz_class round_div(const mpz_class& num, const mpz_class& den) {
  mpz_class t = 2 * num + den, q;
  mpz_class d2 = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), d2.get_mpz_t());
  return q;
}

}  // namespace detail

/// Integral LLL reduction with delta = num/den (default 99/100), exact integer
/// Gram-Schmidt data throughout.
inline LllResult lattice_reduce(const IntMatrix& input, long delta_num = 99, long delta_den = 100) {
  std::size_t n = input.size();
  LllResult r;
  r.basis = input;
  r.transform.assign(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r.transform[i][i] = 1;
  if (n == 0) {
    r.d = {1};
    return r;
  }
  auto& b = r.basis;
  auto& h = r.transform;
  // 1-based indexing below follows the textbook presentation.
  std::vector<mpz_class> d(n + 1, 0);
  std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1, 0));
  auto B = [&](std::size_t i) -> std::vector<mpz_class>& { return b[i - 1]; };
  auto H = [&](std::size_t i) -> std::vector<mpz_class>& { return h[i - 1]; };
  d[0] = 1;
  d[1] = detail::dot(B(1), B(1));
  if (d[1] == 0) raise(ErrorCode::RankDeficient, "zero basis vector");
  if (n == 1) {
    r.d = d;
    return r;
  }

  auto redi = [&](std::size_t k, std::size_t l) {
    mpz_class twice = 2 * lam[k][l];
    if (abs(twice) <= d[l]) return;
    mpz_class q = detail::round_div(lam[k][l], d[l]);
    for (std::size_t c = 0; c < B(k).size(); ++c) B(k)[c] -= q * B(l)[c];
    for (std::size_t c = 0; c < n; ++c) H(k)[c] -= q * H(l)[c];
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  std::size_t kmax = 1;
  auto swapi = [&](std::size_t k, std::size_t kmax_now) {
    std::swap(B(k), B(k - 1));
    std::swap(H(k), H(k - 1));
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    mpz_class l = lam[k][k - 1];
    mpz_class bb = (d[k - 2] * d[k] + l * l);
    mpz_divexact(bb.get_mpz_t(), bb.get_mpz_t(), d[k - 1].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax_now; ++i) {
      mpz_class t = lam[i][k];
      mpz_class a = d[k] * lam[i][k - 1] - l * t;
      mpz_divexact(lam[i][k].get_mpz_t(), a.get_mpz_t(), d[k - 1].get_mpz_t());
      mpz_class c = bb * t + l * lam[i][k];
      mpz_divexact(lam[i][k - 1].get_mpz_t(), c.get_mpz_t(), d[k].get_mpz_t());
    }
    d[k - 1] = bb;
    ++r.swaps;
  };

  std::size_t k = 2;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        mpz_class u = detail::dot(B(k), B(j));
        for (std::size_t i = 1; i < j; ++i) {
          mpz_class t = d[i] * u - lam[k][i] * lam[j][i];
          mpz_divexact(u.get_mpz_t(), t.get_mpz_t(), d[i - 1].get_mpz_t());
        }
        if (j < k) {
          lam[k][j] = u;
        } else {
          d[k] = u;
          if (u == 0) raise(ErrorCode::RankDeficient, "basis rows are linearly dependent");
        }
      }
    }
    redi(k, k - 1);
    mpz_class lhs = delta_den * (d[k] * d[k - 2] + lam[k][k - 1] * lam[k][k - 1]);
    mpz_class rhs = delta_num * d[k - 1] * d[k - 1];
    if (lhs < rhs) {
      swapi(k, kmax);
      k = std::max<std::size_t>(2, k - 1);
    } else {
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
    }
  }
  r.d = d;
  return r;
}

/// Lovasz condition delta*|b*_{i-1}|^2 <= |b*_i|^2 + mu^2 |b*_{i-1}|^2 and size reduction,
/// recomputed from scratch with rational Gram-Schmidt (independent of the reducer's state).
inline bool is_lll_reduced(const IntMatrix& b, const mpq_class& delta) {
  std::size_t n = b.size();
  std::vector<std::vector<mpq_class>> bs(n);
  std::vector<mpq_class> norm(n);
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    bs[i].assign(b[i].begin(), b[i].end());
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class dp = 0;
      for (std::size_t c = 0; c < b[i].size(); ++c) dp += mpq_class(b[i][c]) * bs[j][c];
      mu[i][j] = dp / norm[j];
      for (std::size_t c = 0; c < b[i].size(); ++c) bs[i][c] -= mu[i][j] * bs[j][c];
    }
    norm[i] = 0;
    for (const auto& v : bs[i]) norm[i] += v * v;
    if (norm[i] == 0) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (abs(mu[i][j]) > mpq_class(1, 2)) return false;
    if (i >= 1 && (norm[i] + mu[i][i - 1] * mu[i][i - 1] * norm[i - 1]) < delta * norm[i - 1]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Integer relation search.

enum class RelationStatus { Found, NoneBelowHeight };

inline std::string to_string(RelationStatus s) { return s == RelationStatus::Found ? "found" : "none_below_height"; }

inline constexpr const char* kRelationDisclaimer =
    "none_below_height is evidence relative to (H, P), not a proof of linear independence";

struct RelationResult {
  RelationStatus status = RelationStatus::NoneBelowHeight;
  std::vector<mpz_class> coefficients;  // empty unless found
  mpz_class height_bound;
  long precision = 0;
  DyadicInterval residual;
  std::size_t lattice_dim = 0;
  /// Lattice bound: every vector of the reduced basis' lattice is longer than any
  /// height-H relation could be, so no relation of height <= H exists among the values.
  bool certified = false;
  mpq_class min_gs_norm2;
  // Filled by the field variant.
  std::vector<FieldElement> field_coefficients;
};

namespace detail {

inline void normalize_relation(std::vector<mpz_class>& c) {
  mpz_class g = 0;
  for (const auto& v : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1) {
    for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
  for (const auto& v : c) {
    if (v == 0) continue;
    if (v < 0) {
      for (auto& w : c) w = -w;
    }
    break;
  }
}

inline DyadicInterval combine(const std::vector<mpz_class>& c, const std::vector<DyadicInterval>& x, long prec) {
  DyadicInterval s(0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    s = iv_add(s, iv_mul(DyadicInterval(Dyadic(c[i], 0)), x[i], prec), prec);
  }
  return s;
}

}  // namespace detail

/// Search for c in Z^m, 0 < |c|_inf <= H, with sum c_i x_i = 0.
inline RelationResult find_relation(const std::vector<DyadicInterval>& values, const mpz_class& height, long precision) {
  if (height < 1) raise(ErrorCode::InvalidArgument, "height must be >= 1");
  if (values.empty()) raise(ErrorCode::InvalidArgument, "no values");
  Dyadic limit = Dyadic::pow2(-precision);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (cmp(values[i].width(), limit) > 0) {
      raise(ErrorCode::PrecisionTooLow, "value " + std::to_string(i) + " is wider than 2^-" + std::to_string(precision));
    }
  }
  std::size_t m = values.size();
  IntMatrix lat(m, std::vector<mpz_class>(m + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    lat[i][i] = 1;
    // round(2^P * mid)
    Dyadic scaled = values[i].mid().ldexp(precision);
    mpq_class q = scaled.to_rational();
    lat[i][m] = detail::round_div(q.get_num(), q.get_den());
  }
  LllResult red = lattice_reduce(lat);

  RelationResult out;
  out.height_bound = height;
  out.precision = precision;
  out.lattice_dim = m;
  out.min_gs_norm2 = red.gs_norm2(0);
  for (std::size_t i = 1; i < m; ++i) out.min_gs_norm2 = std::min(out.min_gs_norm2, red.gs_norm2(i));

  Dyadic accept = Dyadic::pow2(-(precision / 2));
  std::optional<std::pair<mpz_class, std::vector<mpz_class>>> best;  // (norm^2, coefficients)
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<mpz_class> c(red.basis[r].begin(), red.basis[r].begin() + static_cast<long>(m));
    bool nonzero = false, small = true;
    mpz_class n2 = 0;
    for (const auto& v : c) {
      if (v != 0) nonzero = true;
      if (abs(v) > height) small = false;
      n2 += v * v;
    }
    if (!nonzero || !small) continue;
    DyadicInterval res = detail::combine(c, values, 2 * precision);
    if (!res.contains_zero() || cmp(res.width(), accept) >= 0) continue;
    if (!best || n2 < best->first) best = std::make_pair(n2, c);
  }
  if (best) {
    out.status = RelationStatus::Found;
    out.coefficients = best->second;
    detail::normalize_relation(out.coefficients);
    out.residual = detail::combine(out.coefficients, values, 2 * precision);
    return out;
  }
  // Any relation of height <= H gives a lattice vector of squared length <= m H^2 + (m H)^2
  // (each rounded column entry is off by at most 1 from 2^P x_i).
  mpz_class mh = height * static_cast<unsigned long>(m);
  mpz_class bound = static_cast<unsigned long>(m) * height * height + mh * mh;
  out.certified = out.min_gs_norm2 > mpq_class(bound);
  out.status = RelationStatus::NoneBelowHeight;
  return out;
}

/// Relations over K: values v_1..v_M are expanded to {omega_i v_j} with omega the power
/// basis (or a user basis), and found relations are mapped back to K-coefficients
/// A_j = sum_i c_{j,i} omega_i.
inline RelationResult find_relation_over_field(const std::vector<DyadicInterval>& values, const FieldPtr& field,
                                               const mpz_class& height, long precision,
                                               const std::vector<FieldElement>& basis_override = {}) {
  long dd = field->degree();
  std::vector<FieldElement> omega = basis_override;
  if (omega.empty()) {
    for (long i = 0; i < dd; ++i) {
      std::vector<mpq_class> c(static_cast<std::size_t>(dd), 0);
      c[static_cast<std::size_t>(i)] = 1;
      omega.emplace_back(field, c);
    }
  }
  if (static_cast<long>(omega.size()) != dd) raise(ErrorCode::InvalidArgument, "basis size must equal the field degree");
  long wp = precision + 64;
  std::vector<DyadicInterval> w;
  for (const auto& o : omega) w.push_back(enclose(o, wp));
  std::vector<DyadicInterval> expanded;
  for (const auto& v : values)
    for (const auto& wi : w) expanded.push_back(iv_mul(v, wi, wp));
  RelationResult r = find_relation(expanded, height, precision);
  if (r.status == RelationStatus::Found) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      FieldElement a = FieldElement::rational(field, 0);
      for (std::size_t i = 0; i < omega.size(); ++i) {
        a = a + mpq_class(r.coefficients[j * omega.size() + i]) * omega[i];
      }
      r.field_coefficients.push_back(a);
    }
  }
  return r;
}

/// All roots of p lying in K, found by relation search against the power basis and
/// verified exactly.
inline std::vector<FieldElement> roots_in_field(const FieldPtr& field, const IntPoly& p) {
  std::vector<FieldElement> out;
  IntPoly sq = gcd(p, p.derivative()).degree() == 0 ? p : IntPoly();
  if (sq.is_zero()) {
    IntPoly quotient;
    divides_exactly(p, gcd(p, p.derivative()), &quotient);
    sq = quotient;
  }
  auto eval_at = [&](const FieldElement& x) {
    FieldElement acc = FieldElement::rational(field, 0);
    for (long i = sq.degree(); i >= 0; --i) acc = acc * x + FieldElement::rational(field, mpq_class(sq.coeff(static_cast<std::size_t>(i))));
    return acc;
  };
  long dd = field->degree();
  for (const auto& iso : isolate_real_roots(sq)) {
    bool done = false;
    for (long prec = 256; prec <= 8192 && !done; prec *= 2) {
      DyadicInterval r = refine_root(sq, iso, Dyadic::pow2(-prec - 8));
      std::vector<DyadicInterval> vals{r};
      DyadicInterval th = field->theta(prec + 64);
      DyadicInterval pw(1);
      for (long i = 0; i < dd; ++i) {
        vals.push_back(pw);
        pw = iv_mul(pw, th, prec + 64);
      }
      mpz_class h;
      mpz_ui_pow_ui(h.get_mpz_t(), 2, static_cast<unsigned long>(prec / (2 * (dd + 2))));
      RelationResult rel = find_relation(vals, h, prec);
      if (rel.status != RelationStatus::Found || rel.coefficients[0] == 0) continue;
      std::vector<mpq_class> c(static_cast<std::size_t>(dd));
      for (long i = 0; i < dd; ++i) c[static_cast<std::size_t>(i)] = mpq_class(-rel.coefficients[static_cast<std::size_t>(i + 1)], rel.coefficients[0]);
      for (auto& v : c) v.canonicalize();
      FieldElement x(field, c);
      if (eval_at(x).is_zero()) {
        out.push_back(x);
        done = true;
      }
    }
  }
  return out;
}

}  // namespace cfindep
