#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfindep/complex_interval.hpp"
#include "cfindep/intpoly.hpp"
#include "cfindep/roots.hpp"

namespace cfindep {

inline constexpr long kEmbeddingPrecision = 192;
inline constexpr long kMaxFieldDegree = 8;
inline constexpr long kPrecisionCap = 1L << 16;

/// Conjugate enclosures of the field generator. `conjugates` lists all D roots in
/// embedding order: the distinguished real root first, the other real roots
/// ascending, then each nonreal pair as (re + i im, re - i im) with im > 0.
struct EmbeddingSet {
  std::vector<DyadicInterval> real_roots;
  std::vector<std::pair<DyadicInterval, DyadicInterval>> complex_pairs;
  std::vector<ComplexInterval> conjugates;
  long precision = 0;

  std::size_t size() const { return conjugates.size(); }
};

namespace detail {

/// Row-reduce an augmented rational matrix; returns rank. Used for inverses and
/// linear dependencies among power coordinates.
inline std::size_t rref(std::vector<std::vector<mpq_class>>& m, std::size_t ncols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    mpq_class inv = 1 / m[rank][c];
    for (auto& v : m[rank]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c];
      for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Product of monic linear factors over a subset of root boxes.
inline std::vector<ComplexInterval> subset_product(const std::vector<ComplexInterval>& roots,
                                                   const std::vector<std::size_t>& idx, long prec) {
  std::vector<ComplexInterval> c{ComplexInterval(1)};
  for (std::size_t k : idx) {
    std::vector<ComplexInterval> next(c.size() + 1, ComplexInterval(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] = c_add(next[i + 1], c[i], prec);
      next[i] = c_sub(next[i], c_mul(c[i], roots[k], prec), prec);
    }
    c = std::move(next);
  }
  return c;
}

/// Unique integer inside an interval; 0 = none, 1 = found, 2 = ambiguous.
inline int unique_integer(const DyadicInterval& x, mpz_class& out) {
  mpq_class lo = x.lo().to_rational(), hi = x.hi().to_rational();
  mpz_class a, b;
  mpz_cdiv_q(a.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  mpz_fdiv_q(b.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  if (a > b) return 0;
  if (a == b) {
    out = a;
    return 1;
  }
  return 2;
}

/// Exact factor search over root subsets of size <= deg/2. Returns a nontrivial
/// monic factor if one exists; nullopt means irreducible. Throws
/// PrecisionInsufficient only if the enclosures never get tight enough.
inline std::optional<IntPoly> find_factor(const IntPoly& p) {
  long deg = p.degree();
  if (deg <= 1) return std::nullopt;
  for (long wp = kEmbeddingPrecision; wp <= kPrecisionCap; wp *= 2) {
    std::vector<RootDisk> disks;
    if (!certify_roots(p, wp, disks)) continue;
    std::vector<ComplexInterval> boxes;
    for (const auto& d : disks) boxes.push_back(d.box());
    bool ambiguous = false;
    for (long size = 1; size <= deg / 2; ++size) {
      std::vector<bool> pick(static_cast<std::size_t>(deg), false);
      std::fill(pick.begin(), pick.begin() + size, true);
      do {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < pick.size(); ++i)
          if (pick[i]) idx.push_back(i);
        auto coeffs = subset_product(boxes, idx, wp);
        std::vector<mpz_class> ints(coeffs.size());
        bool candidate = true;
        for (std::size_t i = 0; i < coeffs.size() && candidate; ++i) {
          if (!coeffs[i].im().contains_zero()) {
            candidate = false;
            break;
          }
          int u = unique_integer(coeffs[i].re(), ints[i]);
          if (u == 0) candidate = false;
          if (u == 2) {
            ambiguous = true;
            candidate = false;
          }
        }
        if (candidate) {
          IntPoly f(ints);
          if (divides_exactly(p, f)) return f;
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    if (!ambiguous) return std::nullopt;
  }
  raise(ErrorCode::PrecisionInsufficient, "irreducibility test could not separate candidate factors");
}

}  // namespace detail

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

inline EmbeddingSet compute_embeddings(const IntPoly& minpoly, const DyadicInterval& distinguished, long precision);

/// K = Q(theta), theta the unique real root of `minpoly` inside the distinguished interval.
class NumberField {
 public:
  static FieldPtr create(const IntPoly& minpoly, const DyadicInterval& root_hint) {
    if (minpoly.degree() < 1) raise(ErrorCode::NotMonic, "minimal polynomial must have degree >= 1");
    if (!minpoly.is_monic()) raise(ErrorCode::NotMonic, minpoly.to_string() + " is not monic");
    if (minpoly.degree() > kMaxFieldDegree) {
      raise(ErrorCode::DegreeTooLarge, "field degree " + std::to_string(minpoly.degree()) + " exceeds 8");
    }
    if (!is_squarefree(minpoly)) raise(ErrorCode::Reducible, minpoly.to_string() + " has a repeated factor");
    if (auto f = detail::find_factor(minpoly)) {
      raise(ErrorCode::Reducible, minpoly.to_string() + " has the factor " + f->to_string());
    }
    if (sturm_count(minpoly, root_hint) != 1) {
      raise(ErrorCode::RootNotIsolated, "interval " + root_hint.to_string() + " does not isolate one real root");
    }
    return FieldPtr(new NumberField(minpoly, root_hint));
  }

  static FieldPtr rationals() { return create(IntPoly{0, 1}, DyadicInterval(-1, 1)); }

  const IntPoly& minpoly() const { return minpoly_; }
  long degree() const { return minpoly_.degree(); }
  const DyadicInterval& root_hint() const { return hint_; }
  const EmbeddingSet& default_embeddings() const { return embeddings_; }

  /// Enclosure of theta of width <= 2^-bits (cached; thread-safe).
  DyadicInterval theta(long bits) const {
    std::lock_guard<std::mutex> lock(mu_);
    Dyadic target = Dyadic::pow2(-bits);
    if (cmp(theta_.width(), target) > 0) theta_ = refine_root(minpoly_, theta_, target);
    return theta_;
  }

  bool same_as(const NumberField& o) const {
    if (this == &o) return true;
    if (!(minpoly_ == o.minpoly_)) return false;
    DyadicInterval cut;
    if (!intersect(theta(64), o.theta(64), cut)) return false;
    return sturm_count(minpoly_, cut) == 1;
  }

  std::string describe() const { return "Q(theta), theta root of " + minpoly_.to_string() + " in " + hint_.to_string(); }

 private:
  NumberField(IntPoly minpoly, DyadicInterval hint) : minpoly_(std::move(minpoly)), hint_(std::move(hint)) {
    int s_lo = minpoly_(hint_.lo()).sign(), s_hi = minpoly_(hint_.hi()).sign();
    if (s_lo == 0) {
      theta_ = DyadicInterval(hint_.lo());
    } else if (s_hi == 0) {
      theta_ = DyadicInterval(hint_.hi());
    } else {
      theta_ = hint_;
    }
    theta_ = refine_root(minpoly_, theta_, Dyadic::pow2(-kEmbeddingPrecision));
    embeddings_ = compute_embeddings(minpoly_, theta_, kEmbeddingPrecision);
  }

  IntPoly minpoly_;
  DyadicInterval hint_;
  EmbeddingSet embeddings_;
  mutable std::mutex mu_;
  mutable DyadicInterval theta_;
};

inline FieldPtr field_new(const IntPoly& minpoly, const DyadicInterval& root_hint) {
  return NumberField::create(minpoly, root_hint);
}

inline EmbeddingSet compute_embeddings(const IntPoly& p, const DyadicInterval& distinguished, long precision) {
  for (long wp = precision + 32; wp <= kPrecisionCap; wp *= 2) {
    std::vector<RootDisk> disks;
    if (!certify_roots(p, wp, disks)) continue;
    EmbeddingSet e;
    e.precision = precision;
    bool ok = true;
    std::vector<DyadicInterval> reals;
    std::vector<std::pair<DyadicInterval, DyadicInterval>> pairs;
    for (const auto& d : disks) {
      if (d.real) {
        DyadicInterval seg(d.re - d.radius, d.re + d.radius);
        if (sturm_count(p, seg) != 1) {
          ok = false;
          break;
        }
        Dyadic scale = Dyadic::pow2(std::min(0L, -precision + std::max(0L, d.re.is_zero() ? 0L : d.re.magnitude())));
        reals.push_back(refine_root(p, seg, scale));
      } else if (d.im.sign() > 0) {
        // Disks of radius r around each pair; the radius is already tiny relative to wp.
        Dyadic limit = Dyadic::pow2(-precision + std::max(0L, std::max(d.re.is_zero() ? 0L : d.re.magnitude(), d.im.magnitude())));
        if (cmp(d.radius.ldexp(1), limit) > 0) {
          ok = false;
          break;
        }
        ComplexInterval b = d.box();
        pairs.emplace_back(b.re(), b.im());
      }
    }
    if (!ok) continue;
    std::sort(reals.begin(), reals.end(), [](const DyadicInterval& a, const DyadicInterval& b) { return cmp(a.lo(), b.lo()) < 0; });
    // The distinguished root goes first.
    std::size_t pos = reals.size();
    for (std::size_t i = 0; i < reals.size(); ++i) {
      DyadicInterval cut;
      if (intersect(reals[i], distinguished, cut) && sturm_count(p, cut) == 1) {
        pos = i;
        break;
      }
    }
    if (pos == reals.size()) continue;
    std::rotate(reals.begin(), reals.begin() + static_cast<long>(pos), reals.begin() + static_cast<long>(pos) + 1);
    e.real_roots = reals;
    e.complex_pairs = pairs;
    for (const auto& r : reals) e.conjugates.emplace_back(r);
    for (const auto& [re, im] : pairs) {
      e.conjugates.emplace_back(re, im);
      e.conjugates.emplace_back(re, -im);
    }
    if (static_cast<long>(e.conjugates.size()) != p.degree()) continue;
    return e;
  }
  raise(ErrorCode::PrecisionInsufficient, "could not separate the roots of " + p.to_string());
}

inline EmbeddingSet embeddings(const NumberField& k, long precision = kEmbeddingPrecision) {
  if (precision <= k.default_embeddings().precision) return k.default_embeddings();
  return compute_embeddings(k.minpoly(), k.theta(precision + 8), precision);
}

/// Element of K in the power basis: sum coords[i] * theta^i.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::vector<mpq_class> coords) : field_(std::move(field)), c_(std::move(coords)) {
    if (!field_) raise(ErrorCode::InvalidArgument, "field element without a field");
    auto d = static_cast<std::size_t>(field_->degree());
    if (c_.size() > d) raise(ErrorCode::InvalidArgument, "too many coordinates for the field degree");
    c_.resize(d, 0);
  }

  static FieldElement rational(FieldPtr field, const mpq_class& q) { return FieldElement(std::move(field), {q}); }
  static FieldElement theta(FieldPtr field) {
    if (field->degree() == 1) {
      // theta is the rational root of x - c
      mpq_class r = -mpq_class(field->minpoly().coeff(0));
      return FieldElement(field, {r});
    }
    return FieldElement(std::move(field), {0, 1});
  }

  const FieldPtr& field() const { return field_; }
  const std::vector<mpq_class>& coords() const { return c_; }
  long degree() const { return field_ ? field_->degree() : 0; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return v == 0; });
  }
  bool is_rational() const {
    return std::all_of(c_.begin() + (c_.empty() ? 0 : 1), c_.end(), [](const mpq_class& v) { return v == 0; });
  }
  mpq_class rational_value() const { return c_.empty() ? mpq_class(0) : c_[0]; }

  friend void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (!a.field_ || !b.field_ || !a.field_->same_as(*b.field_)) {
      raise(ErrorCode::FieldMismatch, "operands belong to different number fields");
    }
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    std::vector<mpq_class> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
    return {a.field_, std::move(c)};
  }
  FieldElement operator-() const {
    std::vector<mpq_class> c(c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -c_[i];
    return {field_, std::move(c)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    const IntPoly& f = a.field_->minpoly();
    std::size_t d = a.c_.size();
    std::vector<mpq_class> prod(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.c_[i] * b.c_[j];
    }
    // reduce with theta^d = -sum f_i theta^i
    for (std::size_t k = prod.size(); k-- > d;) {
      if (prod[k] == 0) continue;
      mpq_class t = prod[k];
      prod[k] = 0;
      for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= t * mpq_class(f.coeff(i));
    }
    prod.resize(d);
    return {a.field_, std::move(prod)};
  }

  friend FieldElement operator*(const mpq_class& q, const FieldElement& a) {
    std::vector<mpq_class> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = q * a.c_[i];
    return {a.field_, std::move(c)};
  }

  /// Matrix of multiplication by *this in the power basis (column j = this * theta^j).
  std::vector<std::vector<mpq_class>> mult_matrix() const {
    std::size_t d = c_.size();
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d));
    FieldElement col = *this;
    FieldElement th = FieldElement(field_, d > 1 ? std::vector<mpq_class>{0, 1} : std::vector<mpq_class>{-mpq_class(field_->minpoly().coeff(0))});
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d; ++i) m[i][j] = col.c_[i];
      col = col * th;
    }
    return m;
  }

  FieldElement inverse() const {
    if (is_zero()) raise(ErrorCode::DivisionByZero, "inverse of zero field element");
    auto m = mult_matrix();
    std::size_t d = c_.size();
    for (std::size_t i = 0; i < d; ++i) m[i].push_back(i == 0 ? 1 : 0);
    std::size_t rank = detail::rref(m, d);
    if (rank < d) raise(ErrorCode::DivisionByZero, "singular multiplication matrix");
    std::vector<mpq_class> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = m[i][d];
    return {field_, std::move(x)};
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

  FieldElement pow(unsigned long k) const {
    FieldElement r = rational(field_, 1), base = *this;
    while (k > 0) {
      if (k & 1UL) r = r * base;
      k >>= 1UL;
      if (k > 0) base = base * base;
    }
    return r;
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    check_same_field(a, b);
    return a.c_ == b.c_;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[i].get_str() + ")";
      if (i >= 1) s += "*t";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  FieldPtr field_;
  std::vector<mpq_class> c_;
};

inline FieldElement fe_add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement fe_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement fe_neg(const FieldElement& a) { return -a; }
inline FieldElement fe_inv(const FieldElement& a) { return a.inverse(); }

namespace detail {

/// Coordinate polynomial evaluated at a conjugate enclosure.
inline ComplexInterval eval_coords(const std::vector<mpq_class>& c, const ComplexInterval& z, long prec) {
  ComplexInterval r(0);
  for (std::size_t i = c.size(); i-- > 0;) {
    r = c_add(c_mul(r, z, prec), ComplexInterval(DyadicInterval::from_rational(c[i], prec)), prec);
  }
  return r;
}

inline DyadicInterval eval_coords_real(const std::vector<mpq_class>& c, const DyadicInterval& x, long prec) {
  DyadicInterval r(0);
  for (std::size_t i = c.size(); i-- > 0;) {
    r = iv_add(iv_mul(r, x, prec), DyadicInterval::from_rational(c[i], prec), prec);
  }
  return r;
}

/// Relative width test: width <= 2^-bits * max(1, |x|).
inline bool tight(const DyadicInterval& x, long bits) {
  Dyadic scale = max(Dyadic(1), x.mag());
  return cmp(x.width(), scale * Dyadic::pow2(-bits)) <= 0;
}

}  // namespace detail

/// sigma_i(x) as (re, im) enclosures.
inline ComplexInterval sigma_eval(const EmbeddingSet& e, const FieldElement& x, std::size_t i) {
  if (i >= e.size()) raise(ErrorCode::InvalidArgument, "embedding index out of range");
  if (x.is_rational()) return ComplexInterval(DyadicInterval::from_rational(x.rational_value(), e.precision + 32));
  return detail::eval_coords(x.coords(), e.conjugates[i], e.precision + 32);
}

/// Value of x under the distinguished real embedding, relative width <= 2^-prec.
inline DyadicInterval enclose(const FieldElement& x, long prec = kDefaultPrecision) {
  if (x.is_rational()) return DyadicInterval::from_rational(x.rational_value(), prec + 2);
  // Pull out the rational content first: S * alpha with a huge integer S would
  // otherwise need theta to as many bits as S has.
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& c : x.coords()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  if (num_gcd > 1 || den_lcm > 1) {
    mpq_class content(num_gcd, den_lcm);
    content.canonicalize();
    std::vector<mpq_class> prim;
    for (const auto& c : x.coords()) prim.push_back(c / content);
    DyadicInterval v = enclose(FieldElement(x.field(), prim), prec + 8);
    return round_out(iv_mul(v, DyadicInterval::from_rational(content, prec + 8), prec + 8), prec + 4);
  }
  for (long wp = prec + 16; wp <= kPrecisionCap + prec; wp = wp * 2) {
    // cancellation may eat bits; the coordinate magnitudes bound how many
    long extra = 0;
    for (const auto& c : x.coords()) {
      if (c != 0) {
        extra = std::max(extra, static_cast<long>(mpz_sizeinbase(c.get_num_mpz_t(), 2)) -
                                    static_cast<long>(mpz_sizeinbase(c.get_den_mpz_t(), 2)));
      }
    }
    long bits = wp + std::max(0L, extra) + 8 * x.degree();
    DyadicInterval th = x.field()->theta(bits);
    DyadicInterval v = detail::eval_coords_real(x.coords(), th, bits);
    if (!x.is_zero() && v.contains_zero()) continue;
    if (detail::tight(v, prec)) return v;
  }
  raise(ErrorCode::PrecisionInsufficient, "could not enclose field element to the requested width");
}

/// Sign under the distinguished embedding (exact: 0 only for x = 0).
inline int sign(const FieldElement& x) {
  if (x.is_zero()) return 0;
  if (x.is_rational()) return sgn(x.rational_value());
  for (long prec = 64; prec <= kPrecisionCap; prec *= 2) {
    DyadicInterval v = detail::eval_coords_real(x.coords(), x.field()->theta(prec), prec);
    if (int s = v.certain_sign()) return s;
  }
  raise(ErrorCode::PrecisionInsufficient, "sign of field element undecided");
}

/// Compare two elements under the distinguished embedding.
inline int compare(const FieldElement& a, const FieldElement& b) { return sign(a - b); }

/// house(x) = max_i |sigma_i(x)|, width <= 2^(-prec+4) * magnitude.
inline DyadicInterval house(const FieldElement& x, long prec = kDefaultPrecision) {
  if (x.is_zero()) return DyadicInterval(0);
  if (x.is_rational()) return round_out(iv_abs(DyadicInterval::from_rational(x.rational_value(), prec + 4)), prec + 4);
  for (long wp = prec + 16; wp <= kPrecisionCap; wp *= 2) {
    EmbeddingSet e = embeddings(*x.field(), wp);
    DyadicInterval best;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      DyadicInterval m = c_abs(sigma_eval(e, x, i), wp);
      best = first ? m : iv_max(best, m);
      first = false;
    }
    Dyadic tol = best.hi() * Dyadic::pow2(-prec + 4);
    if (cmp(best.width(), tol) <= 0) return best;
  }
  raise(ErrorCode::PrecisionInsufficient, "house enclosure did not reach the requested width");
}

/// Minimal polynomial over Q (monic, rational coefficients, constant first).
inline std::vector<mpq_class> minimal_polynomial(const FieldElement& x) {
  std::size_t d = x.coords().size();
  // Columns are powers x^0..x^k; find the first k where x^k depends on lower powers.
  std::vector<FieldElement> pw{FieldElement::rational(x.field(), 1)};
  for (std::size_t k = 1; k <= d; ++k) {
    pw.push_back(pw.back() * x);
    // Solve sum_{i<k} c_i x^i = x^k.
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(k + 1));
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t i = 0; i < k; ++i) m[r][i] = pw[i].coords()[r];
      m[r][k] = pw[k].coords()[r];
    }
    std::size_t rank = detail::rref(m, k);
    // consistent iff no row has zeros in the first k columns and nonzero rhs
    bool consistent = true;
    for (std::size_t r = rank; r < d; ++r)
      if (m[r][k] != 0) consistent = false;
    if (!consistent) continue;
    std::vector<mpq_class> poly(k + 1, 0);
    // rank == k here because 1..x^{k-1} are independent
    for (std::size_t r = 0; r < rank; ++r) {
      std::size_t lead = 0;
      while (m[r][lead] == 0) ++lead;
      poly[lead] = -m[r][k];
    }
    poly[k] = 1;
    return poly;
  }
  raise(ErrorCode::InvalidArgument, "no minimal polynomial found (degree overflow)");
}

inline bool is_algebraic_integer(const FieldElement& x) {
  auto mp = minimal_polynomial(x);
  return std::all_of(mp.begin(), mp.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

/// Exact norm N(x) = prod_i sigma_i(x), via a resultant with the minimal polynomial.
inline mpq_class norm(const FieldElement& x) {
  const auto& c = x.coords();
  mpz_class den = 1;
  for (const auto& v : c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<mpz_class> ints(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) ints[i] = mpq_class(c[i] * den).get_num();
  IntPoly a(ints);
  const IntPoly& f = x.field()->minpoly();
  mpz_class r = resultant(f, a);
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(f.degree()));
  mpq_class q(r, scale);
  q.canonicalize();
  return q;
}

inline mpq_class trace(const FieldElement& x) {
  auto m = x.mult_matrix();
  mpq_class t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

}  // namespace cfindep
