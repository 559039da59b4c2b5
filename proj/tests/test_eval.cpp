#include "auctionlab/eval.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

using namespace auctionlab;

namespace {

// Brute force over all n! index permutations through the public engine API.
Rational brute_force_revenue(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                             const AuctionParams& params, const Prediction& pred,
                             const std::vector<BidderId>& tie_break = {}) {
  std::vector<std::size_t> perm(values.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rational sum = 0;
  long count = 0;
  do {
    Instance inst = apply_matching(values, intervals, Matching(perm), tie_break);
    sum += run(inst, params, pred).revenue;
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / count;
}

std::vector<Interval> random_intervals(std::mt19937_64& rng, std::size_t n) {
  std::vector<Interval> out;
  std::uniform_int_distribution<int> t(0, 6);
  for (std::size_t i = 0; i < n; ++i) {
    int a = t(rng), d = t(rng);
    if (d < a) std::swap(a, d);
    out.push_back({Rational(a), Rational(d)});
  }
  return out;
}

std::vector<Rational> one_to(long n) {
  std::vector<Rational> v;
  for (long k = 1; k <= n; ++k) v.emplace_back(k);
  return v;
}

}  // namespace

TEST_CASE("exact evaluation agrees with brute force over every matching") {
  std::mt19937_64 rng(17);
  const std::vector<Rational> alphas{0, Rational(1, 5), Rational(1, 3), Rational(1, 2), Rational(3, 4), 1};
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 6);
    std::vector<Rational> values;
    for (std::size_t k = 0; k < n; ++k) values.emplace_back(static_cast<long>(rng() % 5));  // ties included
    const auto intervals = random_intervals(rng, n);
    std::vector<BidderId> pi(n);
    std::iota(pi.begin(), pi.end(), BidderId{0});
    std::shuffle(pi.begin(), pi.end(), rng);
    AuctionParams params{alphas[rng() % alphas.size()], (it % 3 == 0) ? Rational(1, 2) : Rational(1)};
    Prediction pred(Rational(static_cast<long>(rng() % 6)));
    EvalOptions opt;
    opt.tie_break = pi;
    EvalReport r = exact_expected_revenue(values, intervals, params, pred, opt);
    CHECK(*r.expected_revenue == brute_force_revenue(values, intervals, params, pred, pi));
    CHECK(r.exact);

    EvalOptions full = opt;
    full.full_enumeration = true;
    full.workers = 3;
    EvalReport rf = exact_expected_revenue(values, intervals, params, pred, full);
    CHECK(*rf.expected_revenue == *r.expected_revenue);
    CHECK(*rf.expected_welfare == *r.expected_welfare);
    CHECK(rf.runs == factorial(static_cast<unsigned>(n)).get_num().get_ui());

    // with integer values and prediction the denominator divides n!
    if (params.gamma != 1) continue;
    Rational scaled = *r.expected_revenue * factorial(static_cast<unsigned>(n));
    scaled.canonicalize();
    CHECK(scaled.get_den() == 1);
  }
}

TEST_CASE("consistency on the canonical worst case is exactly alpha") {
  const auto c = canonical_consistency_instance(10);
  for (const auto& alpha : wn_grid(10)) {
    CHECK(consistency_ratio(c.values, disjoint_intervals(10), {alpha}) == alpha);
  }
  CHECK(consistency_ratio(c.values, disjoint_intervals(10), {Rational(3, 5)}) == Rational(3, 5));
}

TEST_CASE("consistency on distinct values is at least alpha and 1 at alpha = 1") {
  const auto v = one_to(7);
  for (const auto& alpha : {Rational(1, 7), Rational(3, 7), Rational(5, 7), Rational(1)}) {
    Rational c = consistency_ratio(v, disjoint_intervals(7), {alpha});
    CHECK(c >= alpha);
    CHECK(c <= 1);
  }
  CHECK(consistency_ratio(v, disjoint_intervals(7), {Rational(1)}) == 1);
  // phase 3 sells to someone above the running maximum, so distinct values earn strictly more
  CHECK(consistency_ratio(v, disjoint_intervals(7), {Rational(3, 7)}) > Rational(3, 7));
}

TEST_CASE("consistency at alpha = 0 matches brute force") {
  const auto v = one_to(6);
  const Rational c = consistency_ratio(v, disjoint_intervals(6), {Rational(0)});
  CHECK(c == brute_force_revenue(v, disjoint_intervals(6), {Rational(0)}, Prediction(Rational(6))) / 6);
}

TEST_CASE("consistency needs a positive highest value") {
  CHECK_THROWS_AS(consistency_ratio({0, 0}, disjoint_intervals(2), {Rational(1, 2)}), InputError);
}

TEST_CASE("two bidders with an empty middle phase") {
  const std::vector<Rational> v{1, Rational(1, 2)};
  AuctionParams p{Rational(0)};
  CHECK(milestones(2, p.alpha) == PhaseMilestones{1, 1});
  EvalReport r = exact_expected_revenue(v, disjoint_intervals(2), p, Prediction(Rational(1000)));
  CHECK(*r.expected_revenue == Rational(1, 4));
  CHECK(*r.ratio_v2 == Rational(1, 2));
  CHECK(*r.ratio_v2 == robustness_floor(2, p.alpha));
}

TEST_CASE("single bidder") {
  const std::vector<Rational> v{5};
  CHECK(*exact_expected_revenue(v, disjoint_intervals(1), {Rational(1, 2)}, Prediction(Rational(3))).expected_revenue == 0);
  CHECK(*exact_expected_revenue(v, disjoint_intervals(1), {Rational(1)}, Prediction(Rational(3))).expected_revenue == 3);
  CHECK(*exact_expected_revenue(v, disjoint_intervals(1), {Rational(1)}, Prediction(Rational(6))).expected_revenue == 0);
}

TEST_CASE("exact mode refuses sizes above the cap") {
  const auto v = one_to(12);
  CHECK_THROWS_AS(exact_expected_revenue(v, disjoint_intervals(12), {Rational(1, 2)}, Prediction(Rational(12))),
                  EnumerationTooLarge);
  EvalOptions opt;
  opt.cap = 3;
  CHECK_THROWS_AS(exact_expected_revenue(one_to(4), disjoint_intervals(4), {Rational(1, 2)}, Prediction(Rational(4)), opt),
                  EnumerationTooLarge);
}

TEST_CASE("size mismatch is an input error") {
  CHECK_THROWS_AS(exact_expected_revenue(one_to(3), disjoint_intervals(2), {Rational(1, 2)}, Prediction(Rational(1))),
                  InputError);
}

TEST_CASE("robustness on the canonical instance at n=10, alpha=3/5") {
  const auto r = canonical_robustness_instance(10, Rational(1, 2));
  const auto iv = disjoint_intervals(10);
  AuctionParams p{Rational(3, 5)};
  auto ratio = [&](const Prediction& pr) -> Rational {
    return *exact_expected_revenue(r.values, iv, p, pr).expected_revenue / Rational(1, 2);
  };
  CHECK(ratio(r.over) == Q(16, 90));
  CHECK(ratio(Prediction(Rational(0))) == Q(16, 90));
  CHECK(ratio(r.under) == Q(43, 90));  // eps/2 is still accepted by the second bidder in phase 2
  for (const auto& pr : r.scenarios())
    CHECK(ratio(pr) == oracle::literal_average_disjoint(r.values, p.alpha, pr.value) * 2);
  RobustnessReport rep = robustness_ratio(r.values, iv, p, default_scenarios(r.values));
  CHECK(rep.ratio == Q(16, 90));
  CHECK(rep.ratio == robustness_floor(10, p.alpha));
  CHECK(rep.ratio >= asymptotic_floor(p.alpha));
  CHECK(rep.per_scenario.size() == 7);
  CHECK_THROWS_AS(robustness_ratio(r.values, iv, p, {}), InputError);
  CHECK_THROWS_AS(robustness_ratio({1, 0, 0}, disjoint_intervals(3), p, {Prediction(Rational(1))}), InputError);
}

TEST_CASE("default scenarios") {
  const auto s = default_scenarios({1, Rational(1, 2), 0});
  std::vector<Rational> got;
  for (const auto& p : s) got.push_back(p.value);
  CHECK(got == std::vector<Rational>{2, Rational(1, 4), Rational(3, 4), 0, Rational(99, 200), 1, Rational(101, 100)});
}

TEST_CASE("robustness matches the closed form for every alpha in W_n, n <= 10") {
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto r = canonical_robustness_instance(n, Rational(1, 2));
    for (const auto& alpha : wn_grid(n)) {
      RobustnessReport rep = robustness_ratio(r.values, disjoint_intervals(n), {alpha}, default_scenarios(r.values));
      CHECK(rep.ratio == robustness_floor(n, alpha));
      CHECK(rep.ratio >= asymptotic_floor(alpha));
    }
  }
}

TEST_CASE("prediction quality") {
  CHECK(prediction_quality(Prediction(Rational(5)), Rational(5)) == 1);
  CHECK(prediction_quality(Prediction(Rational(10)), Rational(5)) == Rational(1, 2));
  CHECK(prediction_quality(Prediction(Rational(5, 3)), Rational(5)) == Rational(1, 3));
  CHECK_THROWS_AS(prediction_quality(Prediction(Rational(0)), Rational(5)), InputError);
  CHECK_THROWS_AS(prediction_quality(Prediction(Rational(1)), Rational(0)), InputError);
}

TEST_CASE("error-tolerant bound with gamma = 1/2 at q = gamma, n = 8") {
  const auto iv = disjoint_intervals(8);
  std::vector<std::vector<Rational>> sets{canonical_consistency_instance(8).values, one_to(8),
                                          canonical_robustness_instance(8, Rational(1, 2)).values};
  for (const auto& values : sets) {
    const Rational v1 = highest(values, 1);
    for (const auto& alpha : wn_grid(8)) {
      ErrorTolerantCheck c = error_tolerant_check(values, iv, alpha, Rational(1, 2), Prediction(v1 / 2));
      CHECK(c.q == Rational(1, 2));
      CHECK(c.prediction_bound_applies);
      CHECK(c.prediction_bound == alpha * v1 / 4);
      CHECK(c.expected_revenue >= c.prediction_bound);
      CHECK(c.holds);
    }
  }
}

TEST_CASE("error-tolerant check with gamma = 1 and a correct prediction is the consistency bound") {
  const auto c1 = canonical_consistency_instance(8).values;
  for (const auto& alpha : wn_grid(8)) {
    ErrorTolerantCheck c = error_tolerant_check(c1, disjoint_intervals(8), alpha, Rational(1), Prediction(Rational(1)));
    CHECK(c.prediction_bound == alpha);
    CHECK(c.expected_revenue == alpha);
    CHECK(c.holds);
  }
}

TEST_CASE("error-tolerant check below the quality threshold asserts only the floor") {
  const auto r = canonical_robustness_instance(8, Rational(1, 2)).values;
  ErrorTolerantCheck c = error_tolerant_check(r, disjoint_intervals(8), Rational(1, 2), Rational(1, 2), Prediction(Rational(10)));
  CHECK(c.q == Rational(1, 10));
  CHECK_FALSE(c.prediction_bound_applies);
  CHECK(c.floor_bound == robustness_floor(8, Rational(1, 2)) / 2);
  CHECK(c.floor_margin >= 0);
  CHECK(c.holds);
}

TEST_CASE("welfare ratio dominates revenue ratio under a correct prediction") {
  for (std::size_t n = 2; n <= 7; ++n)
    for (const auto& alpha : wn_grid(n)) {
      const auto v = one_to(static_cast<long>(n));
      EvalReport r = exact_expected_revenue(v, disjoint_intervals(n), {alpha}, Prediction(v.back()));
      CHECK(*r.expected_welfare >= *r.expected_revenue);
      CHECK(*r.ratio_v1 <= 1);
    }
}

TEST_CASE("Monte Carlo: one trial is one engine run on the seeded matching") {
  const auto v = one_to(6);
  const auto iv = disjoint_intervals(6);
  AuctionParams p{Rational(1, 3)};
  Prediction pred(Rational(5));
  for (std::uint64_t seed : {0ull, 3ull, 123456789ull}) {
    EvalReport r = mc_expected_revenue(v, iv, p, pred, 1, seed);
    Outcome o = run(apply_matching(v, iv, mc_trial_matching(6, seed, 0)), p, pred);
    CHECK(r.revenue_estimate->mean == to_double(o.revenue));
    CHECK(r.revenue_estimate->std_error == 0);
    CHECK_FALSE(r.exact);
  }
  CHECK_THROWS_AS(mc_expected_revenue(v, iv, p, pred, 0, 1), InputError);
}

TEST_CASE("Monte Carlo: constant values have zero variance") {
  std::vector<Rational> v(6, Rational(3));
  EvalReport r = mc_expected_revenue(v, disjoint_intervals(6), {Rational(1, 3)}, Prediction(Rational(1)), 5000, 9);
  CHECK(r.revenue_estimate->std_error == 0);
}

TEST_CASE("Monte Carlo: deterministic and independent of worker count") {
  const auto v = one_to(8);
  EvalOptions one, four;
  four.workers = 4;
  EvalReport a = mc_expected_revenue(v, disjoint_intervals(8), {Rational(1, 2)}, Prediction(Rational(8)), 20000, 7, one);
  EvalReport b = mc_expected_revenue(v, disjoint_intervals(8), {Rational(1, 2)}, Prediction(Rational(8)), 20000, 7, four);
  CHECK(a.revenue_estimate->mean == b.revenue_estimate->mean);
  CHECK(a.revenue_estimate->std_error == b.revenue_estimate->std_error);
  CHECK(a.welfare_estimate->mean == b.welfare_estimate->mean);
}

TEST_CASE("Monte Carlo agrees with exact evaluation at n=10, alpha=3/5") {
  const auto v = one_to(10);
  const auto iv = disjoint_intervals(10);
  AuctionParams p{Rational(3, 5)};
  Prediction pred(Rational(10));
  const double exact = to_double(*exact_expected_revenue(v, iv, p, pred).expected_revenue);
  EvalReport mc = mc_expected_revenue(v, iv, p, pred, 100000, 7);
  CHECK(std::abs(mc.revenue_estimate->mean - exact) <= 4 * mc.revenue_estimate->std_error);
}

TEST_CASE("Monte Carlo error stays within 4 standard errors in at least 99% of repetitions") {
  const auto r = canonical_robustness_instance(7, Rational(1, 2));
  const std::vector<Rational> v{5, 4, 3, Rational(5, 2), 1, Rational(1, 2), 0};
  std::mt19937_64 rng(3);
  const auto iv = random_intervals(rng, 7);
  AuctionParams p{Rational(3, 7)};
  Prediction pred(Rational(4));
  const double exact = to_double(*exact_expected_revenue(v, iv, p, pred).expected_revenue);
  int inside = 0;
  const int reps = 200;
  for (int s = 0; s < reps; ++s) {
    EvalReport mc = mc_expected_revenue(v, iv, p, pred, 2000, 1000 + static_cast<std::uint64_t>(s));
    if (std::abs(mc.revenue_estimate->mean - exact) <= 4 * mc.revenue_estimate->std_error) ++inside;
  }
  CHECK(inside >= reps * 99 / 100);
  (void)r;
}

TEST_CASE("exact enumeration is independent of worker count") {
  const auto v = one_to(8);
  EvalOptions one, three;
  three.workers = 3;
  std::mt19937_64 rng(1);
  const auto iv = random_intervals(rng, 8);
  EvalReport a = exact_expected_revenue(v, iv, {Rational(1, 2)}, Prediction(Rational(6)), one);
  EvalReport b = exact_expected_revenue(v, iv, {Rational(1, 2)}, Prediction(Rational(6)), three);
  CHECK(*a.expected_revenue == *b.expected_revenue);
  CHECK(a.runs == 40320);
}

TEST_CASE("exact_average runs an arbitrary mechanism through the same enumeration") {
  // revenue = first element if a later one is at least as large
  auto mech = [](const std::vector<Rational>& o) {
    for (std::size_t i = 1; i < o.size(); ++i)
      if (o[i] >= o[0]) return o[0];
    return Rational(0);
  };
  const std::vector<Rational> v{3, 1, 2};
  // orderings: 123:1 132:1 213:2 231:2 312:0 321:0 -> 6/6
  CHECK(exact_average(v, mech) == 1);
  EvalOptions full;
  full.full_enumeration = true;
  CHECK(exact_average({1, 0, 0}, [](const std::vector<Rational>& o) { return o[2]; }, full) == Rational(1, 3));
  CHECK(exact_average({1, 0, 0}, [](const std::vector<Rational>& o) { return o[2]; }) == Rational(1, 3));
}

TEST_CASE("trade-off sweep at n=10") {
  SweepResult s = tradeoff_sweep(10, {0, Rational(1, 5), Rational(1, 2), Rational(3, 5), 1});
  CHECK(s.skipped == std::vector<Rational>{Rational(1, 2)});
  REQUIRE(s.rows.size() == 4);
  for (const auto& row : s.rows) {
    CHECK(row.consistency == row.alpha);
    CHECK(row.robustness >= row.floor);
    CHECK(row.robustness == robustness_floor(10, row.alpha));
    CHECK(row.floor == asymptotic_floor(row.alpha));
    CHECK(row.n == 10);
  }
  CHECK(s.rows.back().consistency == 1);
  CHECK(s.rows.back().robustness == 0);
  CHECK(s.rows[0].robustness == Q(25, 90));
}
