// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "cfindep/catalog.hpp"
#include "cfindep/cfcore.hpp"
#include "cfindep/lemmas.hpp"
#include "cfindep/probe.hpp"
#include "cfindep/relation.hpp"
#include "cfindep/roots.hpp"
#include "cfindep/run.hpp"
#include "oracles.hpp"

using namespace cfindep;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

FieldPtr sqrt2() {
  static FieldPtr k = field_new(IntPoly{-2, 0, 1}, DyadicInterval(1, 2));
  return k;
}

// Shared corpus for criteria 1-3: 200 rational CFs (quotients in [1, 10^6]) and 50 over Q(sqrt2).
std::vector<std::vector<Scalar>> corpus() {
  std::vector<std::vector<Scalar>> out;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> len(1, 30), quot(1, 1000000), den(1, 4), u(1, 50), v(0, 20);
  for (int t = 0; t < 200; ++t) {
    long n = len(rng);
    std::vector<Scalar> a{mpq_class(t % 2 ? quot(rng) : 0)};
    for (long k = 1; k <= n; ++k) {
      // (m s + r)/s stays inside [1, 10^6]
      long s = den(rng);
      mpq_class q = s == 1 ? mpq_class(quot(rng)) : mpq_class(quot(rng) % 999999 * s + s + quot(rng) % s, s);
      q.canonicalize();
      a.emplace_back(q);
    }
    out.push_back(std::move(a));
  }
  for (int t = 0; t < 50; ++t) {
    long n = len(rng);
    std::vector<Scalar> a{mpq_class(0)};
    for (long k = 1; k <= n; ++k) a.emplace_back(FieldElement(sqrt2(), {u(rng), v(rng)}));
    out.push_back(std::move(a));
  }
  return out;
}

Outcome determinant_identity() {
  Outcome o;
  long steps = 0;
  for (const auto& a : corpus()) {
    for (const auto& s : convergents(a)) {
      o.require(determinant_identity_holds(s), "identity broken at step " + std::to_string(s.n));
      ++steps;
    }
  }
  o.detail = o.ok ? std::to_string(steps) + " steps, 250 CFs" : o.detail;
  return o;
}

Outcome alternating_and_evaluation() {
  Outcome o;
  long alt = 0;
  for (const auto& a : corpus()) {
    auto h = convergents(a);
    Scalar conv = s_div(h.back().p_cur, h.back().q_cur);
    o.require(s_equal(eval_finite(a), conv), "backward and forward evaluation disagree");
    if (s_is_zero(a[0])) {
      o.require(s_equal(alternating_sum(h), conv), "alternating sum differs from p_n/q_n");
      ++alt;
    }
  }
  if (o.ok) o.detail = "250 evaluations, " + std::to_string(alt) + " alternating sums";
  return o;
}

Outcome product_bound() {
  Outcome o;
  long checked = 0;
  for (const auto& a : corpus()) {
    // q_1 = a_1 exactly, so the strict bound starts at n = 2
    for (std::size_t n = 3; n <= a.size(); ++n) {
      std::vector<Scalar> prefix(a.begin(), a.begin() + static_cast<long>(n));
      o.require(product_lower_bound_check(prefix), "q_n <= prod a_k at n = " + std::to_string(n - 1));
      ++checked;
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " prefixes";
  return o;
}

Outcome enclosure_soundness() {
  Outcome o;
  DyadicInterval root = refine_root(IntPoly{-2, 0, 1}, DyadicInterval(1, 2), Dyadic::pow2(-300));
  DyadicInterval target = iv_sub(root, DyadicInterval(1), 320);
  for (long n = 1; n <= 20; ++n) {
    std::vector<Scalar> a{mpq_class(0)};
    for (long k = 1; k <= n + 1; ++k) a.emplace_back(mpq_class(2));
    CFValueEnclosure e = enclose_value(a, n);
    std::string at = " at n = " + std::to_string(n);
    o.require(e.value.contains(target), "enclosure misses sqrt2 - 1" + at);
    auto q = oracle::constant_q(2, n + 1);
    o.require(cmp(e.value.width(), mpq_class(1, q[n] * q[n + 1])) <= 0, "width above 1/(q_n q_{n+1})" + at);
    CFValueEnclosure prev = e;
    for (long p : {256L, 512L}) {
      CFValueEnclosure fine = enclose_value(a, n, p);
      o.require(prev.value.contains(fine.value), "doubling precision left the coarser enclosure" + at);
      o.require(cmp(fine.value.width(), prev.value.width()) <= 0, "doubling precision widened" + at);
      o.require(fine.value.contains(target), "fine enclosure misses sqrt2 - 1" + at);
      prev = fine;
    }
  }
  if (o.ok) o.detail = "n = 1..20";
  return o;
}

Outcome lemma2() {
  Outcome o;
  SuiteResult r = lemma2_suite(1000, 1);
  o.require(r.trials == 1000 && r.passed == 1000 && r.failures.empty(), std::to_string(r.failures.size()) + " failures");
  o.require(cmp(r.worst.lo(), Dyadic(1) - Dyadic::pow2(-40)) >= 0, "worst |CF| below 1 - 2^-40");
  if (o.ok) o.detail = "1000/1000, worst |CF| >= " + std::to_string(r.worst.lo().to_double());
  return o;
}

Outcome lemma3() {
  Outcome o;
  SuiteResult r = lemma3_suite(1000, 1);
  o.require(r.trials == 1000 && r.passed == 1000 && r.failures.empty(), std::to_string(r.failures.size()) + " failures");
  o.require(cmp(r.worst.lo(), -Dyadic::pow2(-40)) >= 0, "Re CF - Re z_0 below -2^-40");
  if (o.ok) o.detail = "1000/1000, worst Re CF - Re z_0 >= " + std::to_string(r.worst.lo().to_double());
  return o;
}

Outcome lemma1_and_remark() {
  Outcome o;
  const long n_max = 30;
  RatioTrace t = lemma1_trace(seq_constant(2), seq_constant(1), n_max);
  o.require(t.exact, "ratio trace not exact");
  auto pell = oracle::constant_q(2, n_max), fib = oracle::constant_q(1, n_max);
  for (long n = 1; n <= n_max; ++n) {
    mpq_class want(pell[n], fib[n]);
    want.canonicalize();
    o.require(t.ratios[n - 1].contains(want), "ratio differs from Pell/Fibonacci at n = " + std::to_string(n));
    if (n >= 3) {
      mpq_class before(pell[n - 1], fib[n - 1]);
      before.canonicalize();
      o.require(before < want, "exact ratio not increasing at n = " + std::to_string(n));
    }
  }
  o.require(t.increasing_from >= 1 && t.increasing_from <= 2, "library reports increase from n = " + std::to_string(t.increasing_from));
  o.require(mpq_class(pell[18], fib[18]) > 1000, "ratio at n = 18 not above 10^3");

  RemarkResult r = remark_counterexample(2000);
  o.require(r.monotone, "remark ratios not increasing");
  o.require(r.below_bound, "remark ratio above the product bound");
  o.require(cmp(r.max_ratio.hi(), mpq_class(338, 25)) < 0, "remark max ratio not below 13.52");
  o.require(cmp(r.bound.hi(), mpq_class(338, 25)) < 0, "product bound not below 13.52");
  if (o.ok)
    o.detail = "Pell/Fib(18) = " + std::to_string(mpq_class(pell[18], fib[18]).get_d()) +
               ", remark max " + std::to_string(r.max_ratio.hi().to_double()) + " < bound " +
               std::to_string(r.bound.hi().to_double());
  return o;
}

Outcome theorem1_ex1() {
  Outcome o;
  o.require(compute_d(2, 2) == 3, "compute_d(2, 2) != 3");
  for (long K = 2; K <= 8; ++K) {
    o.require(compute_d(K, K) == K * K - 1, "compute_d(K, K) != K^2 - 1 for K = " + std::to_string(K));
    o.require(compute_d(1, K) == std::max(2L, K - 1), "compute_d(1, K) != max(2, K - 1) for K = " + std::to_string(K));
  }
  Thm1Config c = named_example("ex1").config();
  o.require(c.D() == 2 && c.M() == 2 && c.d() == 3, "Ex1 parameters differ from D = M = 2, d = 3");
  o.require(c.condition5_mode == Condition5Mode::Auto, "Ex1 not in auto condition-5 mode");
  HypothesisReport r = check_all(c, 6, 512);
  o.require(r.overall == Verdict::Pass, "overall verdict is not pass");
  for (const auto& cond : r.conditions) {
    o.require(!cond.margins.empty() || cond.verdict != Verdict::Pass, cond.name + " has no margin series");
  }
  if (o.ok) o.detail = std::to_string(r.conditions.size()) + " conditions pass at N = 6, mode " + r.condition5_mode_used;
  return o;
}

Dyadic random_dyadic(std::mt19937_64& rng, long bits) {
  mpz_class m = 0;
  for (long b = 0; b < bits; b += 64) {
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), 64);
    m += mpz_class(std::to_string(rng()));
  }
  return Dyadic(m, -((bits + 63) / 64) * 64);
}

Outcome relation_engine() {
  Outcome o;
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<long> coef(-100, 100), size(2, 6);
  int found = 0, none = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<Dyadic> x;
    Dyadic last;
    for (long i = 0, m = size(rng); i + 1 < m; ++i) {
      x.push_back(random_dyadic(rng, 320));
      last = last + Dyadic(coef(rng)) * x.back();
    }
    x.push_back(last);
    auto r = find_relation(std::vector<DyadicInterval>(x.begin(), x.end()), 100, 256);
    Dyadic exact;
    for (std::size_t i = 0; i < x.size() && r.status == RelationStatus::Found; ++i)
      exact = exact + Dyadic(r.coefficients[i], 0) * x[i];
    bool ok = r.status == RelationStatus::Found && r.residual.contains_zero() && exact.is_zero();
    o.require(ok, "planted trial " + std::to_string(t) + " not recovered");
    found += ok;
  }
  for (int t = 0; t < 50; ++t) {
    std::vector<DyadicInterval> v;
    for (long i = 0, m = size(rng); i < m; ++i) v.emplace_back(random_dyadic(rng, 320));
    auto r = find_relation(v, 100, 256);
    o.require(r.status == RelationStatus::NoneBelowHeight, "spurious relation in random trial " + std::to_string(t));
    none += r.status == RelationStatus::NoneBelowHeight;
  }
  DyadicInterval s2 = enclose(FieldElement::theta(sqrt2()), 136);
  auto r = find_relation({DyadicInterval(1), s2, iv_add(s2, DyadicInterval(1), 136)}, 100, 128);
  o.require(r.status == RelationStatus::Found && r.coefficients == std::vector<mpz_class>{1, 1, -1},
            "(1, sqrt2, 1 + sqrt2) did not give (1, 1, -1)");
  if (o.ok) o.detail = std::to_string(found) + "/50 planted, " + std::to_string(none) + "/50 none_below_height";
  return o;
}

Outcome independence_probe() {
  Outcome o;
  std::string labels;
  for (const char* name : {"ex1", "hanluc"}) {
    ProbeResult r = probe_independence(named_example(name).config(), 6, 1000, 2048);
    o.require(r.relation.status == RelationStatus::NoneBelowHeight, std::string(name) + ": relation found");
    o.require(r.disclaimer.find("not a proof") != std::string::npos, std::string(name) + ": missing evidence label");
  }
  if (o.ok) o.detail = "ex1 and hanluc: none_below_height (evidence, not proof)";
  return o;
}

Outcome house_integrality() {
  Outcome o;
  auto [lo, hi] = oracle::sqrt_bracket(2, 100);
  DyadicInterval h1 = house(FieldElement(sqrt2(), {4, -1}), 64);
  o.require(cmp(h1.lo(), mpq_class(4 + hi)) <= 0 && cmp(h1.hi(), mpq_class(4 + lo)) >= 0, "house(4 - sqrt2) misses 4 + sqrt2");
  DyadicInterval h2 = house(FieldElement(sqrt2(), {0, 1}), 64);
  o.require(cmp(h2.lo(), mpq_class(hi)) <= 0 && cmp(h2.hi(), mpq_class(lo)) >= 0, "house(sqrt2) misses sqrt2");
  auto k5 = field_new(IntPoly{-5, 0, 1}, DyadicInterval(2, 3));
  o.require(is_algebraic_integer(FieldElement(k5, {mpq_class(1, 2), mpq_class(1, 2)})), "(1 + sqrt5)/2 not integral");
  o.require(!is_algebraic_integer(FieldElement(sqrt2(), {0, mpq_class(1, 2)})), "sqrt2/2 reported integral");
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(-50, 50);
  auto cbrt2 = field_new(IntPoly{-2, 0, 0, 1}, DyadicInterval(1, 2));
  for (int t = 0; t < 100; ++t) {
    FieldElement a(sqrt2(), {c(rng), c(rng)});
    FieldElement b(cbrt2, {c(rng), c(rng), c(rng)});
    // (1 + sqrt5)/2 scaled by an integer: still integral with half-integer coordinates
    long m = c(rng);
    FieldElement g(k5, {mpq_class(m, 2), mpq_class(m, 2)});
    for (const auto& e : {a, b, g}) {
      o.require(is_algebraic_integer(e), "random element not integral");
      o.require(norm(e).get_den() == 1, "norm of an algebraic integer is not an integer");
    }
  }
  if (o.ok) o.detail = "houses enclose, integrality exact, 300 integral norms";
  return o;
}

Outcome determinism() {
  Outcome o;
  std::vector<std::string> configs{
      R"({"task": "convergents", "sequences": [{"kind": "constant", "value": "2"}], "N": 20})",
      R"({"task": "enclose", "sequences": [{"kind": "constant", "value": "2"}], "N": 12, "precision": 256})",
      R"({"task": "check-named-example", "example": "ex2", "N": 5, "precision": 256})",
      R"({"task": "check-named-example", "example": "hanluc", "N": 4})",
      R"({"task": "lemma1", "sequences": [{"kind": "constant", "value": "2"}, {"kind": "constant", "value": "1"}], "N": 25})",
      R"({"task": "lemma2", "trials": 200, "seed": 5})",
      R"({"task": "lemma3", "trials": 200, "seed": 6})",
      R"({"task": "remark", "N": 300})",
      R"({"task": "relation", "example": "ex1", "N": 4, "height": "100", "precision": 512})",
      R"({"task": "list"})"};
  for (const auto& text : configs) {
    RunConfig c = parse_run_config(text);
    std::string first = run(c).report.dump(2);
    o.require(first == run(c).report.dump(2), c.task + ": two runs differ");
    c.threads = 4;
    o.require(first == run(c).report.dump(2), c.task + ": output depends on thread count");
  }
  if (o.ok) o.detail = std::to_string(configs.size()) + " tasks, 3 runs each";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> body;
  };
  std::vector<Criterion> criteria{
      {"determinant identity", 10, determinant_identity},
      {"alternating sum and evaluation agreement", 10, alternating_and_evaluation},
      {"product lower bound", 5, product_bound},
      {"enclosure soundness", 5, enclosure_soundness},
      {"complex CF modulus suite", 30, lemma2},
      {"complex CF real-part suite", 30, lemma3},
      {"ratio growth and bounded counterexample", 60, lemma1_and_remark},
      {"hypothesis checker on ex1", 120, theorem1_ex1},
      {"integer relation engine", 120, relation_engine},
      {"independence probe", 600, independence_probe},
      {"house and integrality", 5, house_integrality},
      {"determinism", 600, determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.budget_s) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget)";
    }
    failed += !o.ok;
    std::printf("%s %2zu %s [%.2f s] %s\n", o.ok ? "PASS" : "FAIL", i + 1, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
