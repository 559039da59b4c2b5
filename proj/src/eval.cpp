#include "auctionlab/eval.hpp"

#include "auctionlab/enumerate.hpp"
#include "auctionlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <span>

namespace auctionlab {

namespace {

struct Setup {
  kernel::Schedule schedule;
  kernel::RankTable table;
  std::vector<int> ranks;  // rank of values[k]
  kernel::Config config;
};

void check_sizes(const std::vector<Rational>& values, const std::vector<Interval>& intervals) {
  if (values.empty()) throw InputError("evaluation needs at least one value");
  if (values.size() != intervals.size())
    throw InputError("values and intervals differ in size (" + std::to_string(values.size()) + " vs " +
                     std::to_string(intervals.size()) + ")");
  for (const auto& v : values)
    if (sgn(v) < 0) throw InputError("values must be nonnegative");
}

Setup make_setup(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                 const AuctionParams& raw, const Prediction& prediction, const EvalOptions& options) {
  const std::size_t n = values.size();
  const AuctionParams params{canonical(raw.alpha), canonical(raw.gamma), raw.strict_wn};
  params.validate(n);
  const Rational pred = params.gamma * prediction.value;
  std::vector<Rational> critical = values;
  critical.push_back(Rational(0));
  critical.push_back(pred);
  kernel::RankTable table(std::move(critical));
  std::vector<int> ranks;
  for (const auto& v : values) ranks.push_back(table.rank(v));
  std::vector<Rational> a, d;
  for (const auto& iv : intervals) {
    validate(iv);
    a.push_back(canonical(iv.arrival));
    d.push_back(canonical(iv.departure));
  }
  validate_tie_break(options.tie_break, n);
  const PhaseMilestones m = milestones(n, params.alpha);
  const PhaseMilestones rm = options.engine.rerun_rescale ? milestones(n - 1, params.alpha) : m;
  kernel::Config config{m, rm, table.rank(pred), table.rank(Rational(0))};
  return {kernel::make_schedule(a, d, options.tie_break), std::move(table), std::move(ranks), config};
}

void fill_benchmarks(EvalReport& r, const std::vector<Rational>& values) {
  r.n = values.size();
  r.benchmark_v1 = highest(values, 1);
  r.benchmark_v2 = highest(values, 2);
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

Estimate estimate(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = pairwise_sum(xs) / n;
  std::vector<double> sq(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) sq[k] = (xs[k] - mean) * (xs[k] - mean);
  const double var = xs.size() > 1 ? pairwise_sum(sq) / (n - 1) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

EvalReport exact_expected_revenue(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                                  const AuctionParams& params, const Prediction& prediction,
                                  const EvalOptions& options) {
  check_sizes(values, intervals);
  const std::size_t n = values.size();
  if (n > options.cap)
    throw EnumerationTooLarge("exact mode would enumerate " + factorial(static_cast<unsigned>(n)).get_str() +
                              " matchings for n=" + std::to_string(n) + ", above the cap n<=" +
                              std::to_string(options.cap) + "; use Monte Carlo mode or raise the cap");
  const Setup s = make_setup(values, intervals, params, prediction, options);

  struct Counts {
    std::vector<std::uint64_t> revenue, welfare;
    std::uint64_t runs = 0;
  };
  std::vector<int> items(n);
  if (options.full_enumeration)
    std::iota(items.begin(), items.end(), 0);
  else
    items = s.ranks;
  const std::size_t ranks = s.table.size();
  const bool full = options.full_enumeration;
  auto states = for_each_arrangement<Counts>(items, options.workers, [&](Counts& c, const std::vector<int>& arr) {
    if (c.revenue.empty()) {
      c.revenue.assign(ranks, 0);
      c.welfare.assign(ranks, 0);
    }
    int v[64];
    std::vector<int> heap;
    int* slot = v;
    if (n > 64) {
      heap.resize(n);
      slot = heap.data();
    }
    for (std::size_t k = 0; k < n; ++k) slot[k] = full ? s.ranks[static_cast<std::size_t>(arr[k])] : arr[k];
    ++c.runs;
    const kernel::Alloc a = kernel::alloc(s.schedule, slot, s.config);
    if (a.winner == kernel::kNone) return;
    ++c.revenue[static_cast<std::size_t>(kernel::price(s.schedule, slot, s.config, a, options.engine.payment))];
    ++c.welfare[static_cast<std::size_t>(slot[a.winner])];
  });

  std::vector<std::uint64_t> revenue(ranks, 0), welfare(ranks, 0);
  std::uint64_t runs = 0;
  for (const auto& c : states) {
    runs += c.runs;
    for (std::size_t r = 0; r < c.revenue.size(); ++r) {
      revenue[r] += c.revenue[r];
      welfare[r] += c.welfare[r];
    }
  }
  Rational rev(0), wel(0);
  for (std::size_t r = 0; r < ranks; ++r) {
    rev += s.table.value(static_cast<int>(r)) * Rational(mpz_class(std::to_string(revenue[r])));
    wel += s.table.value(static_cast<int>(r)) * Rational(mpz_class(std::to_string(welfare[r])));
  }
  const Rational total(mpz_class(std::to_string(runs)));
  EvalReport out;
  fill_benchmarks(out, values);
  out.exact = true;
  out.runs = runs;
  out.expected_revenue = rev / total;
  out.expected_welfare = wel / total;
  if (sgn(out.benchmark_v1) > 0) out.ratio_v1 = *out.expected_revenue / out.benchmark_v1;
  if (sgn(out.benchmark_v2) > 0) out.ratio_v2 = *out.expected_revenue / out.benchmark_v2;
  return out;
}

Matching mc_trial_matching(std::size_t n, std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return Matching(std::move(perm));
}

EvalReport mc_expected_revenue(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                               const AuctionParams& params, const Prediction& prediction, std::uint64_t trials,
                               std::uint64_t seed, const EvalOptions& options) {
  check_sizes(values, intervals);
  if (trials < 1) throw InputError("Monte Carlo mode needs at least one trial");
  const std::size_t n = values.size();
  const Setup s = make_setup(values, intervals, params, prediction, options);
  std::vector<double> as_double(s.table.size());
  for (std::size_t r = 0; r < as_double.size(); ++r) as_double[r] = to_double(s.table.value(static_cast<int>(r)));

  std::vector<double> revenue(trials, 0.0), welfare(trials, 0.0);
  constexpr std::uint64_t kChunk = 4096;
  const std::size_t chunks = static_cast<std::size_t>((trials + kChunk - 1) / kChunk);
  parallel_tasks(chunks, options.workers, [&](std::size_t chunk) {
    std::vector<int> slot(n);
    const std::uint64_t end = std::min<std::uint64_t>(trials, (chunk + 1) * kChunk);
    for (std::uint64_t t = chunk * kChunk; t < end; ++t) {
      const Matching m = mc_trial_matching(n, seed, t);
      for (std::size_t k = 0; k < n; ++k) slot[m.assignment[k]] = s.ranks[k];
      const kernel::Alloc a = kernel::alloc(s.schedule, slot.data(), s.config);
      if (a.winner == kernel::kNone) continue;
      const int pr = kernel::price(s.schedule, slot.data(), s.config, a, options.engine.payment);
      revenue[t] = as_double[static_cast<std::size_t>(pr)];
      welfare[t] = as_double[static_cast<std::size_t>(slot[static_cast<std::size_t>(a.winner)])];
    }
  });

  EvalReport out;
  fill_benchmarks(out, values);
  out.exact = false;
  out.runs = trials;
  out.revenue_estimate = estimate(revenue);
  out.welfare_estimate = estimate(welfare);
  return out;
}

Rational exact_average(const std::vector<Rational>& values,
                       const std::function<Rational(const std::vector<Rational>&)>& revenue,
                       const EvalOptions& options) {
  const std::size_t n = values.size();
  if (n == 0) throw InputError("evaluation needs at least one value");
  if (n > options.cap)
    throw EnumerationTooLarge("exact mode over n=" + std::to_string(n) + " exceeds the cap n<=" +
                              std::to_string(options.cap) + "; use Monte Carlo mode or raise the cap");
  kernel::RankTable table(values);
  std::vector<int> items(n);
  if (options.full_enumeration)
    std::iota(items.begin(), items.end(), 0);
  else
    for (std::size_t k = 0; k < n; ++k) items[k] = table.rank(values[k]);
  struct Acc {
    Rational sum{0};
    std::uint64_t runs = 0;
  };
  const bool full = options.full_enumeration;
  auto states = for_each_arrangement<Acc>(items, options.workers, [&](Acc& acc, const std::vector<int>& arr) {
    std::vector<Rational> ordering;
    ordering.reserve(n);
    for (int x : arr) ordering.push_back(full ? values[static_cast<std::size_t>(x)] : table.value(x));
    acc.sum += revenue(ordering);
    ++acc.runs;
  });
  Rational sum(0);
  std::uint64_t runs = 0;
  for (const auto& a : states) {
    sum += a.sum;
    runs += a.runs;
  }
  return sum / Rational(mpz_class(std::to_string(runs)));
}

Rational consistency_ratio(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                           const AuctionParams& params, const EvalOptions& options) {
  const Rational v1 = highest(values, 1);
  if (sgn(v1) <= 0) throw InputError("consistency needs a positive highest value");
  return *exact_expected_revenue(values, intervals, params, Prediction(v1), options).expected_revenue / v1;
}

std::vector<Prediction> default_scenarios(const std::vector<Rational>& values) {
  const Rational v1 = highest(values, 1);
  const Rational v2 = highest(values, 2);
  const Rational delta(1, 100);
  return {Prediction(v1 + 1),          Prediction(v2 / 2), Prediction((v1 + v2) / 2),
          Prediction(Rational(0)),     Prediction(v2 * (1 - delta)), Prediction(v1),
          Prediction(v1 * (1 + delta))};
}

RobustnessReport robustness_ratio(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                                  const AuctionParams& params, const std::vector<Prediction>& scenarios,
                                  const EvalOptions& options) {
  const Rational v2 = highest(values, 2);
  if (sgn(v2) <= 0) throw InputError("robustness needs a positive second-highest value");
  if (scenarios.empty()) throw InputError("robustness needs at least one prediction scenario");
  RobustnessReport out;
  out.scenarios = scenarios;
  for (const auto& p : scenarios) {
    Rational r = *exact_expected_revenue(values, intervals, params, p, options).expected_revenue / v2;
    if (out.per_scenario.empty() || r < out.ratio) out.ratio = r;
    out.per_scenario.push_back(std::move(r));
  }
  return out;
}

Rational prediction_quality(const Prediction& prediction, const Rational& v1) {
  if (sgn(v1) <= 0 || sgn(prediction.value) <= 0)
    throw InputError("prediction quality needs a positive prediction and a positive highest value");
  return std::min(Rational(prediction.value / v1), Rational(v1 / prediction.value));
}

Rational robustness_floor(std::size_t n, const Rational& alpha) {
  if (n < 2) return Rational(0);
  const PhaseMilestones m = milestones(n, alpha);
  const unsigned long a = m.i1_count * (n - m.i1_count);
  const unsigned long b = m.i2_count * (n - m.i2_count);
  Rational r(std::min(a, b), static_cast<unsigned long>(n * (n - 1)));
  r.canonicalize();
  return r;
}

Rational asymptotic_floor(const Rational& raw) {
  const Rational alpha = canonical(raw);
  return (1 - alpha * alpha) / 4;
}

ErrorTolerantCheck error_tolerant_check(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                                        const Rational& raw_alpha, const Rational& raw_gamma,
                                        const Prediction& prediction, const EvalOptions& options) {
  const Rational alpha = canonical(raw_alpha), gamma = canonical(raw_gamma);
  const Rational v1 = highest(values, 1);
  const Rational v2 = highest(values, 2);
  if (sgn(v1) <= 0) throw InputError("error-tolerant check needs a positive highest value");
  ErrorTolerantCheck out;
  out.q = sgn(prediction.value) > 0 ? prediction_quality(prediction, v1) : Rational(0);
  AuctionParams params{alpha, gamma};
  out.expected_revenue = *exact_expected_revenue(values, intervals, params, prediction, options).expected_revenue;
  out.holds = true;
  out.prediction_bound_applies = out.q >= gamma;
  if (out.prediction_bound_applies) {
    out.prediction_bound = alpha * gamma * out.q * v1;
    out.prediction_margin = out.expected_revenue - out.prediction_bound;
    out.holds = sgn(out.prediction_margin) >= 0;
  }
  out.floor_bound = robustness_floor(values.size(), alpha) * v2;
  out.floor_margin = out.expected_revenue - out.floor_bound;
  out.holds = out.holds && sgn(out.floor_margin) >= 0;
  return out;
}

SweepResult tradeoff_sweep(std::size_t n, const std::vector<Rational>& alphas, const EvalOptions& options) {
  SweepResult out;
  const auto intervals = disjoint_intervals(n);
  const auto cons = canonical_consistency_instance(n);
  const auto rob = canonical_robustness_instance(n, Rational(1, 2));
  for (const auto& alpha : alphas) {
    if (!in_wn(alpha, n)) {
      out.skipped.push_back(alpha);
      continue;
    }
    AuctionParams params{alpha};
    SweepRow row;
    row.alpha = alpha;
    row.consistency = consistency_ratio(cons.values, intervals, params, options);
    row.robustness = robustness_ratio(rob.values, intervals, params, default_scenarios(rob.values), options).ratio;
    row.floor = asymptotic_floor(alpha);
    row.n = n;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace auctionlab
