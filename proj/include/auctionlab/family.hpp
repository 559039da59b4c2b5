#pragma once

#include "auctionlab/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace auctionlab {

// Per-step posted-price rules. Order matters: it is the enumeration order and the
// "three-phase" order that interchanges move toward.
enum class PMRule { never, pred_or_max, max_seen };

struct PMAuction {
  std::vector<PMRule> rules;
  bool operator==(const PMAuction&) const = default;
};

enum class PAKind { never, pred_or_jth, jth_seen };

struct PARule {
  PAKind kind = PAKind::never;
  std::size_t j = 0;  // order statistic of the prefix, 1 = highest; unused for never
  bool operator==(const PARule&) const = default;
};

struct PAAuction {
  std::vector<PARule> rules;
  void validate() const;  // throws InputError unless 1 <= j <= step-1
  bool operator==(const PAAuction&) const = default;
};

std::string to_string(PMRule r);
std::string to_string(const PARule& r);
std::string to_string(const PMAuction& a);  // e.g. "N,P,M"
std::string to_string(const PAAuction& a);  // e.g. "N,P1,S2"
PMAuction parse_pm_auction(const std::string& text);

struct FamilySale {
  bool sold = false;
  std::size_t step = 0;  // 1-based
  Rational price{0};
};

FamilySale pm_run(const PMAuction& auction, const std::vector<Rational>& ordering, const Rational& prediction);
FamilySale pa_run(const PAAuction& auction, const std::vector<Rational>& ordering, const Rational& prediction);

// Scored instances: consistency on (1, 0, ..., 0) with prediction 1; robustness on
// (1, 1/2, 0, ..., 0) under each scenario.
enum class Scenario { over, under, intermediate };
inline constexpr std::array<Scenario, 3> kScenarios{Scenario::over, Scenario::under, Scenario::intermediate};
std::string to_string(Scenario s);
Rational scenario_prediction(Scenario s);  // 2, 1/4, 3/4

struct FamilyScore {
  std::uint64_t c_count = 0;                  // orderings of the consistency instance earning 1
  std::array<std::uint64_t, 3> r_counts{};    // orderings of the robustness instance earning >= 1/2
  std::uint64_t n_factorial = 0;

  std::uint64_t min_r() const;
  Rational consistency() const;
  Rational robustness() const;  // min over scenarios
  Rational robustness(Scenario s) const;
};

FamilyScore score(const PMAuction& auction);
FamilyScore score(const PAAuction& auction);

PMAuction pa_to_pm(const PAAuction& auction);

// Swaps rules at 1-based steps i and i+1; the pair must be out of three-phase order.
PMAuction interchange(const PMAuction& auction, std::size_t i);
bool is_inversion(PMRule first, PMRule second);

// Steps 1..i1 never, i1+1..i2 pred_or_max, the rest max_seen.
PMAuction three_phase_pm(std::size_t n, std::size_t i1, std::size_t i2);

std::vector<PMAuction> all_pm_auctions(std::size_t n);  // 3^n, lexicographic
std::vector<PAAuction> all_pa_auctions(std::size_t n);  // prod (2i-1)

// Scores of a list of auctions, computed on up to `workers` threads.
std::vector<FamilyScore> score_all(const std::vector<PMAuction>& auctions, unsigned workers = 1);

struct InterchangeViolation {
  PMAuction auction;
  std::size_t position = 0;
  FamilyScore before;
  FamilyScore after;
};

struct ScenarioFlag {
  PMAuction auction;
  std::size_t position = 0;  // 0 for PA dominance flags
  Scenario scenario = Scenario::over;
};

struct InterchangeReport {
  std::size_t n = 0;
  std::size_t auctions = 0;
  std::size_t swaps_checked = 0;
  std::vector<InterchangeViolation> violations;  // c_count or min r_count decreased
  std::vector<ScenarioFlag> scenario_flags;      // a single scenario decreased
  bool holds() const { return violations.empty(); }
};

InterchangeReport verify_interchange(std::size_t n, unsigned workers = 1);

struct DominanceViolation {
  PAAuction auction;
  PMAuction image;
  FamilyScore pa_score;
  FamilyScore pm_score;
};

struct DominanceReport {
  std::size_t n = 0;
  std::size_t auctions = 0;
  std::vector<DominanceViolation> violations;  // c_count or min r_count decreased
  std::vector<DominanceViolation> scenario_flags;
  bool holds() const { return violations.empty(); }
};

DominanceReport verify_pa_dominance(std::size_t n, unsigned workers = 1);

// (n/(n-1)) (1-alpha^2)/4
Rational hardness_bound(std::size_t n, const Rational& alpha);

struct OptimalThresholds {
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  Rational robustness;
  std::size_t expected_i1 = 0;  // (1-alpha)n/2
  std::size_t expected_i2 = 0;  // (1+alpha)n/2
  Rational expected_robustness;  // hardness_bound
  Rational robustness_at_expected;
  bool holds = false;  // maximum equals the bound and is attained at the expected pair
};

OptimalThresholds optimal_thresholds(std::size_t n, const Rational& alpha);

struct FrontierPoint {
  Rational consistency;
  Rational max_robustness;  // over auctions at least this consistent
};

struct HardnessEntry {
  PMAuction auction;
  FamilyScore score;
};

struct HardnessCertificate {
  std::size_t n = 0;
  Rational alpha;
  Rational bound;
  std::vector<HardnessEntry> auctions;
  std::vector<FrontierPoint> frontier;
  std::size_t consistent = 0;   // auctions with consistency >= alpha
  Rational best_robustness{0};  // among those
  std::vector<PMAuction> violations;
  bool holds() const { return violations.empty(); }
};

HardnessCertificate hardness_scan(std::size_t n, const Rational& alpha, unsigned workers = 1);

}  // namespace auctionlab
