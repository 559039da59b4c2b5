#pragma once

#include "auctionlab/core.hpp"

#include <optional>
#include <vector>

namespace auctionlab {

struct PhaseMilestones {
  std::size_t i1_count;
  std::size_t i2_count;
  friend bool operator==(const PhaseMilestones&, const PhaseMilestones&) = default;
};

// (ceil((1-alpha)n/2), floor((1+alpha)n/2)); i2 is raised to i1 when rounding crosses them.
PhaseMilestones milestones(std::size_t n, const Rational& alpha);

enum class EventKind { arrival, departure, threshold_update, clinch };
const char* to_string(EventKind k);

struct TraceEvent {
  Rational time;
  EventKind kind;
  BidderId bidder;
  Threshold tau_before;
  Threshold tau_after;
  Rational v_max;
  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};
using EventTrace = std::vector<TraceEvent>;

struct AllocationResult {
  std::optional<BidderId> winner;
  Threshold threshold;  // at clinch, or final if unsold
  bool active_winner = false;
  EventTrace trace;
};

enum class PaymentVariant {
  standard,
  no_rerun,            // p = tau always
  no_tiebreak_clause,  // rerun lowers the price only when the rerun winner is passive
};

struct EngineOptions {
  bool rerun_rescale = false;  // rerun with milestones for n-1 bidders
  PaymentVariant payment = PaymentVariant::standard;
  bool record_trace = true;
};

struct Outcome {
  std::optional<BidderId> winner;
  std::optional<Rational> allocation_time;
  Rational price{0};
  Rational revenue{0};
  Rational welfare{0};
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

AllocationResult alloc(const Instance& instance, const AuctionParams& params, const Prediction& prediction,
                       const EngineOptions& options = {});

// Throws std::logic_error when the allocation has no winner.
Rational payment(const Instance& instance, const AuctionParams& params, const Prediction& prediction,
                 const AllocationResult& allocation, const EngineOptions& options = {});

Outcome run(const Instance& instance, const AuctionParams& params, const Prediction& prediction,
            const EngineOptions& options = {});

struct ReportedRun {
  Outcome outcome;                  // welfare measured against true types
  std::vector<Rational> utilities;  // per bidder, against true types
  AllocationResult allocation;      // on reported types
};

// reports[i] must not arrive before the true arrival and must satisfy departure >= arrival.
ReportedRun run_with_reports(const Instance& truth, const std::vector<BidderType>& reports,
                             const AuctionParams& params, const Prediction& prediction,
                             const EngineOptions& options = {});

}  // namespace auctionlab
