#pragma once

#include "auctionlab/core.hpp"
#include "auctionlab/engine.hpp"

#include <cstdint>
#include <vector>

namespace auctionlab {

struct DeviationReport {
  BidderId bidder = 0;
  BidderType best_report;
  Rational truthful_utility{0};
  Rational best_utility{0};
  Rational gain{0};                        // best_utility - truthful_utility
  EventTrace witness_trace;                // run on the best report
  std::vector<BidderType> others_reports;  // full profile; the audited bidder's entry is the truth
  std::size_t candidates = 0;
};

enum class GridRestriction {
  none,
  value_only,  // true arrival and departure kept
  time_only,   // true value kept
};

// Candidate misreports for `bidder`. Values: 0, every reported value, prediction and scaled prediction,
// each also shifted by +-delta_v. Times: every event time shifted by 0, +-delta_t, with arrival >= the
// true arrival and departure >= reported arrival. delta_* is half the smallest gap in that domain.
// Sorted by (value, arrival, departure); contains the truthful type.
std::vector<BidderType> deviation_grid(const Instance& truth, BidderId bidder, const AuctionParams& params,
                                       const Prediction& prediction,
                                       GridRestriction restriction = GridRestriction::none,
                                       const std::vector<BidderType>& others_reports = {});

struct AuditOptions {
  EngineOptions engine{false, PaymentVariant::standard, false};
  GridRestriction restriction = GridRestriction::none;
  bool adversarial_others = false;
  std::size_t profiles = 16;  // sampled misreport profiles per bidder when adversarial
  std::uint64_t seed = 0;
  bool reference_path = false;  // evaluate every candidate through run_with_reports (slow)
};

// others_reports: one entry per bidder (the audited bidder's entry is ignored); empty = truthful.
DeviationReport audit_bidder(const Instance& truth, const AuctionParams& params, const Prediction& prediction,
                             BidderId bidder, const std::vector<BidderType>& others_reports = {},
                             const AuditOptions& options = {});

// One report per bidder; with adversarial_others the report with the largest gain across the
// truthful profile and the sampled profiles.
std::vector<DeviationReport> audit_instance(const Instance& truth, const AuctionParams& params,
                                            const Prediction& prediction, const AuditOptions& options = {});

struct AuditCase {
  Instance instance;
  AuctionParams params;
  Prediction prediction;
};

// Overlapping instance with 2..max_n bidders, small integer times, distinct values, random
// tie-break order, alpha from a fixed menu, and error tolerance 1/2 in a quarter of cases.
AuditCase random_audit_case(std::uint64_t seed, std::size_t max_n);

}  // namespace auctionlab
