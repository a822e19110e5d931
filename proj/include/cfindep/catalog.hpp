#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cfindep/criteria.hpp"
#include "cfindep/sequences.hpp"

namespace cfindep {

/// A configuration from the theorem's corollaries and examples, with defaults for a desk-scale run.
struct NamedExample {
  std::string name;
  std::string description;
  std::string field_description;
  long default_K = 0;  // 0: no K parameter
  long default_N = 6;
  long default_precision = 512;
  std::string note;
  std::function<Thm1Config(long K)> build;

  Thm1Config config(long K = 0) const { return build(K > 0 ? K : default_K); }
};

namespace detail {

inline Thm1Config make_config(FieldPtr k, std::vector<CFSpec> seqs) {
  Thm1Config c;
  c.field = std::move(k);
  c.sequences = std::move(seqs);
  return c;
}

inline IntPoly c3_polynomial() { return IntPoly{-17, 24, -9, 1}; }  // (y - 3)^3 - 3(y - 3) + 1

inline std::vector<NamedExample> build_catalog() {
  std::vector<NamedExample> out;
  out.push_back({"ex1", "[0; (4+sqrt2) a_n] and [0; (4-sqrt2) a_n], a_n = 2^(n 3^n); roots of x^2 - 8x + 14", "Q(sqrt2) = Q(4+sqrt2)", 0, 6,
                 512, "D = M = 2, d = 3",
                 [](long) {
                   IntPoly P{14, -8, 1};
                   FieldPtr k = root_field(P);
                   CFSpec base = seq_doubly_exponential(3);
                   return make_config(k, {seq_root_scaled(P, 1, base, k), seq_root_scaled(P, 2, base, k)});
                 }});
  out.push_back({"ex2", "[0; a_n (1+d(n)) sqrt2] and [0; a_n d(n) sqrt2], a_n = 2^(n 3^n)", "Q(sqrt2)", 0, 6, 512,
                 "D = M = 2, d = 3; ordered so that a_{n,1} is the larger quotient",
                 [](long) {
                   CFSpec base = seq_doubly_exponential(3);
                   return make_config(sqrt2_field(), {seq_divisor_plus_one_sqrt2(base), seq_divisor_sqrt2(base)});
                 }});
  out.push_back({"ex3", "[0; a_n/j], j = 1, 2, 3, a_n = 2^(m 2^m) with m = n + 1", "Q", 0, 7, 256,
                 "D = 1, M = 3, d = 2; the middle and last sequences are read as a_n/2 and a_n/3",
                 [](long) {
                   CFSpec base = seq_doubly_exponential(2, 1);
                   return make_config(NumberField::rationals(), {seq_div_by_j(1, base), seq_div_by_j(2, base), seq_div_by_j(3, base)});
                 }});
  out.push_back({"c2", "[0; a_n/j], j = 1..K, a_n = 2^(m d^m) with m = n + 1, d = max(2, K-1)", "Q", 4, 6, 256,
                 "D = 1, M = K; the index shift keeps interleaving valid at n = 1",
                 [](long K) {
                   CFSpec base = seq_doubly_exponential(compute_d(1, K), 1);
                   std::vector<CFSpec> s;
                   for (long j = 1; j <= K; ++j) s.push_back(seq_div_by_j(j, base));
                   return make_config(NumberField::rationals(), s);
                 }});
  out.push_back({"c3", "[0; alpha_j a_n], alpha_1 > alpha_2 > alpha_3 roots of y^3 - 9y^2 + 24y - 17, a_n = 2^(n 8^n)",
                 "cyclic cubic field Q(alpha_1)", 0, 5, 512, "D = M = 3, d = 8",
                 [](long) {
                   IntPoly P = c3_polynomial();
                   FieldPtr k = root_field(P);
                   CFSpec base = seq_doubly_exponential(8);
                   return make_config(k, {seq_root_scaled(P, 1, base, k), seq_root_scaled(P, 2, base, k), seq_root_scaled(P, 3, base, k)});
                 }});
  out.push_back({"c4", "[0; a_n (j + H_n)], j = K..1, a_n = 2^(n d^n), d = max(2, K-1)", "Q", 3, 7, 256,
                 "D = 1, M = K; H_n kept exact",
                 [](long K) {
                   CFSpec base = seq_doubly_exponential(compute_d(1, K));
                   std::vector<CFSpec> s;
                   for (long j = K; j >= 1; --j) s.push_back(seq_harmonic(j, base));
                   return make_config(NumberField::rationals(), s);
                 }});
  out.push_back({"c5", "[0; a_n (1 + pi(n)/n)^j], j = K-1..0, a_n = 2^(n d^n), d = max(2, K-1)", "Q", 3, 7, 256,
                 "D = 1, M = K",
                 [](long K) {
                   CFSpec base = seq_doubly_exponential(compute_d(1, K));
                   std::vector<CFSpec> s;
                   for (long j = K - 1; j >= 0; --j) s.push_back(seq_prime_pi_power(j, base));
                   return make_config(NumberField::rationals(), s);
                 }});
  out.push_back({"t2", "[0; sqrt(j) a_n], j = K..1, a_n = 2^(n d^n), d = K 2^pi(K) - 1", "Q(sqrt 1, ..., sqrt K)", 2, 5, 512,
                 "D = 2^pi(K), M = K; positive square roots",
                 [](long K) {
                   FieldPtr k = multiquadratic_field(K);
                   long d = compute_d(k->degree(), K);
                   CFSpec base = seq_doubly_exponential(d);
                   std::vector<CFSpec> s;
                   for (long j = K; j >= 1; --j) s.push_back(seq_sqrt_j(j, k, base));
                   return make_config(k, s);
                 }});
  out.push_back({"laursen", "[0; phi^(j + 2(n-1)) a_n], j = K..1, a_n = 2^(n d^n), d = max(2, 2K-1)", "Q(phi)", 2, 6, 512,
                 "D = 2, M = K; meant for the real-part sign condition",
                 [](long K) {
                   CFSpec base = seq_doubly_exponential(compute_d(2, K));
                   std::vector<CFSpec> s;
                   for (long j = K; j >= 1; --j) s.push_back(seq_phi_powers(j, base));
                   return make_config(golden_field(), s);
                 }});
  out.push_back({"hanluc", "[0; (1 + p_n/n) sqrt2] and [0; a_n (p_n/n) sqrt2], a_n = 2^(n 3^n)", "Q(sqrt2)", 0, 6, 512,
                 "D = M = 2, d = 3; the two sequences grow at different rates, so interleaving and the ratio condition are not expected to hold",
                 [](long) {
                   return make_config(sqrt2_field(), {seq_prime_ratio_sqrt2(), seq_prime_scaled_sqrt2(seq_doubly_exponential(3))});
                 }});
  return out;
}

}  // namespace detail

inline const std::vector<NamedExample>& list_named_examples() {
  static const std::vector<NamedExample> catalog = detail::build_catalog();
  return catalog;
}

inline const NamedExample& named_example(const std::string& name) {
  for (const auto& e : list_named_examples())
    if (e.name == name) return e;
  raise(ErrorCode::UnknownFamily, "no named example '" + name + "'");
}

}  // namespace cfindep
