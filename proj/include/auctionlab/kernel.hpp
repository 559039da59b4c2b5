#pragma once

// Integer-rank form of the allocation and payment rules. The rules only compare values and take
// maxima, so replacing every value by its rank in a sorted list of critical values is exact.
// The event order depends only on times and the tie-break order, so one Schedule serves every
// assignment of values to bidders.

#include "auctionlab/core.hpp"
#include "auctionlab/engine.hpp"

#include <climits>
#include <cstdint>
#include <vector>

namespace auctionlab::kernel {

constexpr int kInfinity = INT_MAX;
constexpr int kNone = -1;

struct Step {
  std::uint32_t bidder;
  bool departure;
};

struct Schedule {
  std::size_t n = 0;
  std::vector<Step> steps;
  std::vector<std::uint32_t> departure_index;  // 1-based position of each bidder among departures
  std::vector<std::uint32_t> by_priority;      // bidders, highest priority first
  std::vector<std::uint32_t> priority;         // inverse of by_priority
  std::vector<Rational> step_time;             // only filled when built from rationals
};

// Time order; arrivals before departures at equal times; tie-break order within a kind.
Schedule make_schedule(const std::vector<Rational>& arrivals, const std::vector<Rational>& departures,
                       const std::vector<BidderId>& tie_break, bool keep_times = false);
Schedule make_schedule(const Instance& instance, bool keep_times = false);
// Bidder k alone at time k+1.
Schedule sequential_schedule(std::size_t n);

struct Alloc {
  int winner = kNone;
  int tau = kInfinity;
  bool active_winner = false;
};

struct TraceStep {
  std::size_t step;  // index into Schedule::steps
  EventKind kind;
  std::uint32_t bidder;
  int tau_before;
  int tau_after;
  int v_max;
};

struct Config {
  PhaseMilestones m;
  PhaseMilestones rerun_m;  // milestones used when the payment rule reruns without the winner
  int pred;                 // rank of gamma * prediction
  int zero_rank;            // rank of 0
};

// excluded = kNone simulates every bidder; otherwise that bidder is skipped entirely.
Alloc alloc(const Schedule& s, const int* value, const Config& c, int excluded = kNone,
            std::vector<TraceStep>* trace = nullptr);

// Price rank for a sold allocation.
int price(const Schedule& s, const int* value, const Config& c, const Alloc& a, PaymentVariant variant);

// Sorted, deduplicated critical values and a rank lookup.
class RankTable {
 public:
  explicit RankTable(std::vector<Rational> critical);
  int rank(const Rational& v) const;  // value must be present
  const Rational& value(int r) const { return sorted_[static_cast<std::size_t>(r)]; }
  std::size_t size() const { return sorted_.size(); }
  const std::vector<Rational>& sorted() const { return sorted_; }

 private:
  std::vector<Rational> sorted_;
};

Threshold to_threshold(const RankTable& t, int rank);

}  // namespace auctionlab::kernel
