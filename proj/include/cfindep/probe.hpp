#pragma once

#include "cfindep/cfcore.hpp"
#include "cfindep/criteria.hpp"
#include "cfindep/relation.hpp"
#include "cfindep/sequences.hpp"

namespace cfindep {

/// Numerical look at the conclusion: search for a K-linear relation among
/// alpha_1, ..., alpha_M and 1 using truncated continued fractions.
struct ProbeResult {
  std::vector<DyadicInterval> values;  // alpha_1 .. alpha_M, then 1
  std::vector<long> truncation;        // order used for each alpha_j
  RelationResult relation;
  std::string disclaimer = kRelationDisclaimer;
};

/// Enclosure of [0; a_1, a_2, ...] of width <= 2^-bits, starting at order n and
/// doubling it while the tail still matters.
inline std::pair<DyadicInterval, long> enclose_cf(const CFSpec& s, long n, long bits) {
  Dyadic limit = Dyadic::pow2(-bits);
  for (long order = std::max(1L, n);; order *= 2) {
    std::vector<Scalar> prefix = cf_prefix(s, order + 1);
    CFValueEnclosure e = enclose_value(prefix, order, bits + 32);
    if (cmp(e.value.width(), limit) <= 0) return {e.value, order};
    if (order > 1000000) raise(ErrorCode::PrecisionInsufficient, "continued fraction converges too slowly");
  }
}

inline ProbeResult probe_independence(const Thm1Config& cfg, long n, const mpz_class& height, long precision) {
  cfg.validate();
  ProbeResult out;
  for (const auto& s : cfg.sequences) {
    auto [v, order] = enclose_cf(s, n, precision + 16);
    out.values.push_back(v);
    out.truncation.push_back(order);
  }
  out.values.emplace_back(1);
  out.relation = find_relation_over_field(out.values, cfg.field, height, precision);
  return out;
}

}  // namespace cfindep
