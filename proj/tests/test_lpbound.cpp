#include "auctionlab/lpbound.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace auctionlab;

namespace {

RuleStats enumerate_rule(const StoppingRule& rule, std::size_t n) { return oracle::rule_stats_by_enumeration(rule, n); }

// Brute-force LP optimum for small n: every basic solution picks, per step, either x_i = 0 or the
// constraint tight, which determines x from left to right.
Rational vertex_enumeration_optimum(std::size_t n) {
  Rational best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<Rational> x(n, Rational(0));
    Rational prefix = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (mask & (1u << (i - 1))) x[i - 1] = (1 - prefix) / static_cast<unsigned long>(i);
      prefix += x[i - 1];
    }
    if (primal_feasible(x)) best = std::max(best, primal_objective(x));
  }
  return best;
}

StoppingRule random_rule(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> s;
  for (std::size_t i = 0; i < n; ++i) {
    const long den = 1 + static_cast<long>(rng() % 7);
    s.push_back(Q(static_cast<long>(rng() % (den + 1)), den));
  }
  return StoppingRule(s);
}

}  // namespace

TEST_CASE("dual certificate for n=5") {
  DualCertificate c = explicit_dual(5);
  CHECK(c.y == std::vector<Rational>{0, 0, 0, Q(1, 10), Q(1, 5)});
  CHECK(c.objective == Q(3, 10));
  CHECK(c.feasible);
  CHECK(c.objective <= Q(1, 4) + Q(2, 5));
}

TEST_CASE("unclamped dual is negative at n/2 for even n") {
  DualCertificate u = explicit_dual(4, false);
  CHECK(u.y[1] == Q(-1, 12));
  CHECK_FALSE(u.feasible);
  CHECK(u.violated == std::optional<std::size_t>(2));
  DualCertificate c = explicit_dual(4);
  CHECK(c.y[1] == 0);
  CHECK(c.feasible);
  CHECK(c.objective == u.objective + Q(1, 12));
  // odd n: the formula is already nonnegative
  CHECK(explicit_dual(7, false).feasible);
}

TEST_CASE("clamped dual is feasible with objective within 1/4 + 2/n up to n = 2000") {
  for (std::size_t n = 2; n <= 2000; ++n) {
    DualCertificate c = explicit_dual(n);
    CHECK(c.feasible);
    CHECK(c.objective <= lp_bound(n));
  }
}

TEST_CASE("dual violation detection") {
  CHECK(dual_violation({0, 0}) == std::optional<std::size_t>(2));
  CHECK_FALSE(dual_violation({0, Q(1, 2)}));
  CHECK(dual_violation({Q(-1, 2), 1}) == std::optional<std::size_t>(1));
  CHECK_THROWS_AS(explicit_dual(1), InputError);
}

TEST_CASE("primal optimum for n=2") {
  LPSolution s = solve_primal(2);
  CHECK(s.x == std::vector<Rational>{0, Q(1, 2)});
  CHECK(s.objective == Q(1, 2));
  CHECK(s.certified_optimal);
}

TEST_CASE("primal threshold rule matches vertex enumeration") {
  for (std::size_t n = 2; n <= 12; ++n) {
    LPSolution s = solve_primal(n);
    CHECK(s.objective == vertex_enumeration_optimum(n));
    CHECK(s.certified_optimal);
    CHECK(primal_feasible(s.x));
  }
}

TEST_CASE("weak duality and optimal threshold location up to n = 200") {
  for (std::size_t n = 2; n <= 200; ++n) {
    LPSolution s = solve_primal(n);
    CHECK(s.certified_optimal);
    CHECK(s.objective <= explicit_dual(n).objective);
    CHECK(s.objective <= lp_bound(n));
    const long k = static_cast<long>(s.threshold);
    CHECK(std::abs(2 * k - static_cast<long>(n)) <= 2);
  }
}

TEST_CASE("threshold objective decreases toward 1/4") {
  Rational prev = 1;
  for (std::size_t n = 2; n <= 10000; ++n) {
    Rational best = 0;
    for (std::size_t k : {n / 2, n / 2 + 1, (n + 1) / 2 + 1})
      if (k >= 1 && k <= n) best = std::max(best, threshold_objective(n, k));
    CHECK(best <= prev);
    CHECK(best > Q(1, 4));
    prev = best;
  }
  CHECK(prev - Q(1, 4) < Q(1, 10000));
}

TEST_CASE("rule statistics: skip-one rule for n=3") {
  StoppingRule r({0, 1, 1});
  RuleStats st = rule_stats(r, 3);
  CHECK(st.x == std::vector<Rational>{0, Q(1, 2), Q(1, 6)});
  CHECK(st.success == Q(1, 3));
  RuleStats e = enumerate_rule(r, 3);
  CHECK(e.x == st.x);
  CHECK(e.success == st.success);
}

TEST_CASE("rule statistics: never stopping") {
  RuleStats st = rule_stats(StoppingRule({0, 0, 0, 0}), 4);
  for (const auto& v : st.x) CHECK(v == 0);
  CHECK(st.success == 0);
}

TEST_CASE("rule validation") {
  CHECK_THROWS_AS(StoppingRule({Q(3, 2)}), InputError);
  CHECK_THROWS_AS(StoppingRule({Q(-1, 2)}), InputError);
  CHECK_THROWS_AS(rule_stats(StoppingRule({0, 1}), 3), InputError);
}

TEST_CASE("closed form equals enumeration and is LP-feasible for random rules") {
  std::mt19937_64 rng(8);
  for (std::size_t n = 2; n <= 6; ++n) {
    const Rational opt = solve_primal(n).objective;
    for (int it = 0; it < 40; ++it) {
      StoppingRule r = random_rule(rng, n);
      RuleStats st = rule_stats(r, n);
      RuleStats e = enumerate_rule(r, n);
      CHECK(st.x == e.x);
      CHECK(st.success == e.success);
      CHECK(primal_feasible(st.x));
      CHECK(st.success <= opt);
      CHECK(st.success == primal_objective(st.x));
    }
  }
}

TEST_CASE("conditional stopping probability ignores the top-two event") {
  CHECK(rank_rule_conditional_check(StoppingRule({0, 1, 1}), 3).holds);
  ConditionalCheck ones = rank_rule_conditional_check(StoppingRule({1, 1, 1, 1}), 4);
  CHECK(ones.holds);
  for (const auto& s : ones.steps) {
    CHECK(s.given_record == 0);  // step 1 always stops
  }
  ConditionalCheck late = rank_rule_conditional_check(StoppingRule({0, 0, 0, 1}), 4);
  REQUIRE(late.steps.size() == 3);
  CHECK(late.steps.back().step == 4);
  CHECK(late.steps.back().given_record == 1);
  CHECK(late.steps.back().given_record_top_two == 1);
  std::mt19937_64 rng(21);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 3 + static_cast<std::size_t>(it % 3);
    CHECK(rank_rule_conditional_check(random_rule(rng, n), n).holds);
  }
}
