#pragma once

#include "auctionlab/core.hpp"
#include "auctionlab/engine.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace auctionlab {

struct EvalOptions {
  std::size_t cap = 10;           // largest n allowed in exact mode
  unsigned workers = 1;
  bool full_enumeration = false;  // enumerate all n! matchings even when values repeat
  std::vector<BidderId> tie_break;
  EngineOptions engine{false, PaymentVariant::standard, false};
};

struct Estimate {
  double mean = 0;
  double std_error = 0;
};

struct EvalReport {
  bool exact = true;
  std::size_t n = 0;
  std::optional<Rational> expected_revenue;  // exact mode
  std::optional<Rational> expected_welfare;
  std::optional<Estimate> revenue_estimate;  // Monte Carlo mode
  std::optional<Estimate> welfare_estimate;
  Rational benchmark_v1{0};
  Rational benchmark_v2{0};
  std::optional<Rational> ratio_v1;  // exact mode, benchmark > 0
  std::optional<Rational> ratio_v2;
  std::uint64_t runs = 0;  // engine runs (matchings or trials)
};

class EnumerationTooLarge : public InputError {
 public:
  using InputError::InputError;
};

EvalReport exact_expected_revenue(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                                  const AuctionParams& params, const Prediction& prediction,
                                  const EvalOptions& options = {});

EvalReport mc_expected_revenue(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                               const AuctionParams& params, const Prediction& prediction, std::uint64_t trials,
                               std::uint64_t seed, const EvalOptions& options = {});

// The matching used by Monte Carlo trial `trial` under `seed`.
Matching mc_trial_matching(std::size_t n, std::uint64_t seed, std::uint64_t trial);

// Exact average of revenue(arrangement) over all orderings of `values`; used to run
// other mechanisms through the same enumeration.
Rational exact_average(const std::vector<Rational>& values,
                       const std::function<Rational(const std::vector<Rational>&)>& revenue,
                       const EvalOptions& options = {});

Rational consistency_ratio(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                           const AuctionParams& params, const EvalOptions& options = {});

// {v1+1, v2/2, (v1+v2)/2, 0, v2(1-1/100), v1, v1(1+1/100)}
std::vector<Prediction> default_scenarios(const std::vector<Rational>& values);

struct RobustnessReport {
  Rational ratio;  // min over scenarios
  std::vector<Prediction> scenarios;
  std::vector<Rational> per_scenario;
};

RobustnessReport robustness_ratio(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                                  const AuctionParams& params, const std::vector<Prediction>& scenarios,
                                  const EvalOptions& options = {});

// min(ṽ/v1, v1/ṽ)
Rational prediction_quality(const Prediction& prediction, const Rational& v1);

// min(i1(n-i1), i2(n-i2)) / (n(n-1))
Rational robustness_floor(std::size_t n, const Rational& alpha);
Rational asymptotic_floor(const Rational& alpha);  // (1-alpha^2)/4

struct ErrorTolerantCheck {
  Rational q;
  Rational expected_revenue;
  bool prediction_bound_applies = false;  // q >= gamma
  Rational prediction_bound{0};           // alpha*gamma*q*v1
  Rational floor_bound{0};                // robustness_floor * v2
  Rational prediction_margin{0};          // revenue - prediction_bound
  Rational floor_margin{0};               // revenue - floor_bound
  bool holds = false;
};

ErrorTolerantCheck error_tolerant_check(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                                        const Rational& alpha, const Rational& gamma, const Prediction& prediction,
                                        const EvalOptions& options = {});

struct SweepRow {
  Rational alpha;
  Rational consistency;
  Rational robustness;
  Rational floor;  // (1-alpha^2)/4
  std::size_t n;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<Rational> skipped;  // alphas outside W_n
};

// Canonical disjoint instances: consistency on (1,0,...,0), robustness on (1,1/2,0,...,0)
// against default_scenarios.
SweepResult tradeoff_sweep(std::size_t n, const std::vector<Rational>& alphas, const EvalOptions& options = {});

}  // namespace auctionlab
