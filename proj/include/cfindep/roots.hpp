#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "cfindep/complex_interval.hpp"
#include "cfindep/intpoly.hpp"

namespace cfindep {

/// Number of distinct real roots of a squarefree p in the closed interval.
inline int sturm_count(const IntPoly& p, const DyadicInterval& interval) {
  if (p.is_zero()) raise(ErrorCode::InvalidArgument, "sturm_count of the zero polynomial");
  if (!is_squarefree(p)) raise(ErrorCode::NotSquarefree, p.to_string() + " is not squarefree");
  if (p.degree() == 0) return 0;
  auto chain = sturm_chain(p);
  int n = detail::variations_at(chain, interval.lo()) - detail::variations_at(chain, interval.hi());
  if (p(interval.lo()).is_zero()) ++n;
  return n;
}

/// Real roots of a squarefree p in the open ray (a, +inf).
inline int sturm_count_above(const IntPoly& p, const Dyadic& a) {
  if (!is_squarefree(p)) raise(ErrorCode::NotSquarefree, p.to_string() + " is not squarefree");
  if (p.degree() <= 0) return 0;
  auto chain = sturm_chain(p);
  return detail::variations_at(chain, a) - detail::variations_at_infinity(chain, true);
}

inline int count_real_roots(const IntPoly& p) {
  if (!is_squarefree(p)) raise(ErrorCode::NotSquarefree, p.to_string() + " is not squarefree");
  if (p.degree() <= 0) return 0;
  auto chain = sturm_chain(p);
  return detail::variations_at_infinity(chain, false) - detail::variations_at_infinity(chain, true);
}

/// Disjoint isolating intervals for all real roots, ascending. A root that lands on
/// a bisection point is returned as a point interval.
inline std::vector<DyadicInterval> isolate_real_roots(const IntPoly& p) {
  std::vector<DyadicInterval> out;
  if (p.degree() <= 0) return out;
  if (!is_squarefree(p)) raise(ErrorCode::NotSquarefree, p.to_string() + " is not squarefree");
  auto chain = sturm_chain(p);
  Dyadic b = root_bound(p);
  // Work on half-open pieces (lo, hi]; -b is never a root.
  struct Piece {
    Dyadic lo, hi;
    int vlo, vhi;
  };
  std::vector<Piece> stack{{-b, b, detail::variations_at(chain, -b), detail::variations_at(chain, b)}};
  while (!stack.empty()) {
    Piece pc = stack.back();
    stack.pop_back();
    int n = pc.vlo - pc.vhi;
    if (n == 0) continue;
    if (n == 1) {
      if (p(pc.hi).is_zero()) {
        out.emplace_back(pc.hi);
      } else {
        out.emplace_back(pc.lo, pc.hi);
      }
      continue;
    }
    Dyadic m = midpoint(pc.lo, pc.hi);
    int vm = detail::variations_at(chain, m);
    stack.push_back({m, pc.hi, vm, pc.vhi});
    stack.push_back({pc.lo, m, pc.vlo, vm});
  }
  std::sort(out.begin(), out.end(), [](const DyadicInterval& x, const DyadicInterval& y) { return cmp(x.lo(), y.lo()) < 0; });
  return out;
}

/// Shrink an interval containing exactly one simple root of p to width <= target_width.
/// Bisection first, interval Newton once p' has constant sign on the interval.
inline DyadicInterval refine_root(const IntPoly& p, const DyadicInterval& isolating, const Dyadic& target_width) {
  if (target_width.sign() <= 0) raise(ErrorCode::InvalidArgument, "target width must be positive");
  Dyadic lo = isolating.lo(), hi = isolating.hi();
  int slo = p(lo).sign(), shi = p(hi).sign();
  if (slo == 0) return DyadicInterval(lo);
  if (shi == 0) return DyadicInterval(hi);
  if (slo == shi) raise(ErrorCode::NoSignChange, "no sign change of " + p.to_string() + " on " + isolating.to_string());

  long need = std::max(0L, isolating.width().magnitude() - target_width.magnitude() + 2);
  long prec = std::max(kDefaultPrecision, need + 64);
  long cap = 10 * prec;
  IntPoly dp = p.derivative();

  for (long iter = 0; iter < cap; ++iter) {
    if (cmp(hi - lo, target_width) <= 0) return {lo, hi};
    DyadicInterval x(lo, hi);
    DyadicInterval dx = dp(x, prec);
    bool shrunk = false;
    if (!dx.contains_zero()) {
      // Newton: root in m - p(m)/p'(X), intersected with X.
      Dyadic m = midpoint(lo, hi);
      Dyadic pm = p(m);
      if (pm.is_zero()) return DyadicInterval(m);
      DyadicInterval step = iv_div(DyadicInterval(pm), dx, prec);
      DyadicInterval nx = round_out(DyadicInterval(m) - step, prec);
      DyadicInterval cut;
      if (!intersect(nx, x, cut)) raise(ErrorCode::NoSignChange, "interval Newton excluded the root");
      // keep only progress that also preserves the sign bracket
      if (cmp((cut.hi() - cut.lo()).ldexp(1), hi - lo) <= 0) {
        int sl = p(cut.lo()).sign(), sh = p(cut.hi()).sign();
        if (sl == 0) return DyadicInterval(cut.lo());
        if (sh == 0) return DyadicInterval(cut.hi());
        if (sl == slo && sh == shi) {
          lo = cut.lo();
          hi = cut.hi();
          shrunk = true;
        }
      }
    }
    if (!shrunk) {
      Dyadic m = midpoint(lo, hi);
      int sm = p(m).sign();
      if (sm == 0) return DyadicInterval(m);
      if (sm == slo) {
        lo = m;
      } else {
        hi = m;
      }
    }
  }
  if (cmp(hi - lo, target_width) <= 0) return {lo, hi};
  raise(ErrorCode::NonConvergent, "root refinement hit the iteration cap");
}

// ---------------------------------------------------------------------------
// All complex roots of a squarefree integer polynomial, each certified inside
// a disk that contains exactly one root.

struct RootDisk {
  Dyadic re;
  Dyadic im;
  Dyadic radius;  // rigorous upper bound
  bool real = false;
  ComplexInterval box() const {
    return {DyadicInterval(re - radius, re + radius), DyadicInterval(im - radius, im + radius)};
  }
};

namespace detail {

struct CPoint {
  Dyadic re, im;
};

inline CPoint cp_mul(const CPoint& a, const CPoint& b, long prec) {
  return {round(a.re * b.re - a.im * b.im, prec, Round::Down), round(a.re * b.im + a.im * b.re, prec, Round::Down)};
}

inline CPoint cp_div(const CPoint& a, const CPoint& b, long prec) {
  Dyadic den = b.re * b.re + b.im * b.im;
  if (den.is_zero()) raise(ErrorCode::DivisionByZero, "complex point division by zero");
  Dyadic nr = a.re * b.re + a.im * b.im, ni = a.im * b.re - a.re * b.im;
  return {div(nr, den, prec, Round::Down), div(ni, den, prec, Round::Down)};
}

/// Exact evaluation at a dyadic complex point.
inline CPoint cp_eval(const IntPoly& p, const CPoint& z) {
  CPoint r{Dyadic(), Dyadic()};
  for (long i = p.degree(); i >= 0; --i) {
    CPoint t{r.re * z.re - r.im * z.im, r.re * z.im + r.im * z.re};
    r = {t.re + Dyadic(p.coeff(static_cast<std::size_t>(i)), 0), t.im};
  }
  return r;
}

/// Weierstrass (Durand-Kerner) approximations at working precision wp; not rigorous.
inline std::vector<CPoint> durand_kerner(const IntPoly& p, long wp) {
  auto n = static_cast<std::size_t>(p.degree());
  // Start in double precision, then polish at full precision.
  std::vector<std::complex<double>> zd(n);
  double rb = root_bound(p).to_double();
  std::complex<double> seed(0.4, 0.9);
  for (std::size_t i = 0; i < n; ++i) zd[i] = rb * 0.5 * std::pow(seed, static_cast<double>(i + 1));
  auto pd = [&](std::complex<double> z) {
    std::complex<double> r = 0;
    for (long i = p.degree(); i >= 0; --i) r = r * z + p.coeff(static_cast<std::size_t>(i)).get_d();
    return r;
  };
  for (int it = 0; it < 500; ++it) {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= zd[i] - zd[j];
      if (std::abs(den) == 0) den = 1e-300;
      std::complex<double> w = pd(zd[i]) / den;
      zd[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(zd[i])));
    }
    if (worst < 1e-15) break;
  }
  std::vector<CPoint> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = {Dyadic::from_double(zd[i].real()), Dyadic::from_double(zd[i].imag())};
  }
  for (int it = 0; it < 60 + 4 * static_cast<int>(wp); ++it) {
    long worst = 1L << 40;  // smallest (magnitude of correction - magnitude of root)
    bool all_zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      CPoint den{Dyadic(1), Dyadic()};
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den = cp_mul(den, {z[i].re - z[j].re, z[i].im - z[j].im}, wp);
      CPoint val = cp_eval(p, z[i]);
      if (val.re.is_zero() && val.im.is_zero()) continue;
      if (den.re.is_zero() && den.im.is_zero()) den = {Dyadic::pow2(-wp), Dyadic()};
      CPoint w = cp_div(val, den, wp);
      z[i] = {round(z[i].re - w.re, wp, Round::Down), round(z[i].im - w.im, wp, Round::Down)};
      long wm = std::max(w.re.is_zero() ? -(1L << 40) : w.re.magnitude(), w.im.is_zero() ? -(1L << 40) : w.im.magnitude());
      long zm = std::max(z[i].re.is_zero() ? 0L : z[i].re.magnitude(), z[i].im.is_zero() ? 0L : z[i].im.magnitude());
      if (!(w.re.is_zero() && w.im.is_zero())) all_zero = false;
      worst = std::min(worst, zm - wm);
    }
    if (all_zero || worst > wp - 4) break;
  }
  return z;
}

}  // namespace detail

/// Certified root disks for a squarefree p at working precision wp. Returns false
/// if the disks are not separated or the real/nonreal split cannot be decided.
inline bool certify_roots(const IntPoly& p, long wp, std::vector<RootDisk>& out) {
  auto n = static_cast<std::size_t>(p.degree());
  out.clear();
  if (n == 0) return true;
  auto z = detail::durand_kerner(p, wp);
  // Snap nearly-real approximations onto the real axis so a real root's disk is
  // symmetric and its real segment is a clean bracket.
  for (auto& zi : z) {
    if (zi.im.is_zero()) continue;
    long mag = std::max(zi.re.is_zero() ? 0L : zi.re.magnitude(), 0L);
    if (zi.im.magnitude() < mag - wp / 2) zi.im = Dyadic();
  }
  Dyadic lc(p.leading(), 0);
  std::vector<Dyadic> radius(n);
  for (std::size_t i = 0; i < n; ++i) {
    // w_i = p(z_i) / (lc * prod_{j != i}(z_i - z_j)), radius n*|w_i| (Braess-Hadeler inclusion).
    detail::CPoint num = detail::cp_eval(p, z[i]);
    detail::CPoint den{lc, Dyadic()};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      detail::CPoint d{z[i].re - z[j].re, z[i].im - z[j].im};
      den = {den.re * d.re - den.im * d.im, den.re * d.im + den.im * d.re};
    }
    Dyadic dn2 = den.re * den.re + den.im * den.im;
    if (dn2.is_zero()) return false;
    Dyadic nn2 = num.re * num.re + num.im * num.im;
    Dyadic w2 = div(nn2, dn2, 64, Round::Up);
    Dyadic w = sqrt(w2, 64, Round::Up);
    radius[i] = round(w * Dyadic(static_cast<long>(n)), 64, Round::Up);
    if (radius[i].is_zero()) radius[i] = Dyadic::pow2(-4 * wp);  // exact root; keep a positive radius
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Dyadic dr = z[i].re - z[j].re, di = z[i].im - z[j].im;
      Dyadic s = radius[i] + radius[j];
      if (cmp(dr * dr + di * di, s * s) <= 0) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    RootDisk rd{z[i].re, z[i].im, radius[i], false};
    if (cmp(abs(z[i].im), radius[i]) > 0) {
      rd.real = false;
    } else {
      // The conjugate root lies in the mirrored disk; if that disk meets no other
      // disk, the root must be its own conjugate.
      bool isolated = true;
      for (std::size_t j = 0; j < n && isolated; ++j) {
        if (j == i) continue;
        Dyadic dr = z[i].re - z[j].re, di = -z[i].im - z[j].im;
        Dyadic s = radius[i] + radius[j];
        if (cmp(dr * dr + di * di, s * s) <= 0) isolated = false;
      }
      if (!isolated) return false;
      rd.real = true;
    }
    out.push_back(rd);
  }
  int real_count = 0;
  for (const auto& rd : out) real_count += rd.real ? 1 : 0;
  return real_count == count_real_roots(p);
}

}  // namespace cfindep
