#pragma once

#include "auctionlab/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace auctionlab {

using BidderId = std::size_t;  // 0-based index into Instance::bidders()

struct Interval {
  Rational arrival;
  Rational departure;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct BidderType {
  Rational arrival;
  Rational departure;
  Rational value;
  friend bool operator==(const BidderType&, const BidderType&) = default;
};

void validate(const BidderType& b);  // throws InputError
void validate(const Interval& iv);
// Empty is accepted and means identity.
void validate_tie_break(const std::vector<BidderId>& tie_break, std::size_t n);

class Instance {
 public:
  // tie_break lists bidders from highest to lowest priority; empty means identity.
  explicit Instance(std::vector<BidderType> bidders, std::vector<BidderId> tie_break = {},
                    bool distinct = false);

  std::size_t size() const { return bidders_.size(); }
  const std::vector<BidderType>& bidders() const { return bidders_; }
  const BidderType& operator[](BidderId i) const { return bidders_[i]; }
  const std::vector<BidderId>& tie_break() const { return tie_break_; }
  // Position of bidder i in the tie-break order (0 = highest priority).
  std::size_t priority(BidderId i) const { return priority_[i]; }
  // i ≻ j in the tie-break order.
  bool precedes(BidderId i, BidderId j) const { return priority_[i] < priority_[j]; }
  bool distinct() const { return distinct_; }

  std::vector<Rational> values() const;
  std::vector<Interval> intervals() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<BidderType> bidders_;
  std::vector<BidderId> tie_break_;
  std::vector<std::size_t> priority_;
  bool distinct_;
};

struct AuctionParams {
  Rational alpha;
  Rational gamma{1};
  bool strict_wn = false;  // reject alpha outside W_n instead of rounding milestones

  void validate(std::size_t n) const;  // throws InputError
};

// alpha*n and (1-alpha)*n/2 both integral.
bool in_wn(const Rational& alpha, std::size_t n);
std::vector<Rational> wn_grid(std::size_t n);  // all members of W_n, ascending

struct Prediction {
  Rational value;
  explicit Prediction(Rational v);
};

// assignment[value_slot] = interval_slot
struct Matching {
  std::vector<std::size_t> assignment;
  explicit Matching(std::vector<std::size_t> a);
};

Matching random_assignment(std::size_t n, std::uint64_t seed);
Instance apply_matching(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                        const Matching& m, std::vector<BidderId> tie_break = {});
Instance random_matching(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                         std::uint64_t seed, std::vector<BidderId> tie_break = {});

// Bidder i is active exactly at time i+1 and carries values[i].
Instance sequential_instance(const std::vector<Rational>& values);
std::vector<Interval> disjoint_intervals(std::size_t n);  // [(1,1), (2,2), ..., (n,n)]

struct ConsistencyCase {
  std::vector<Rational> values;  // (1, 0, ..., 0)
  Prediction prediction;         // 1
};
ConsistencyCase canonical_consistency_instance(std::size_t n);

struct RobustnessCase {
  std::vector<Rational> values;  // (1, eps, 0, ..., 0)
  Prediction over;               // 2
  Prediction under;              // eps/2
  Prediction intermediate;       // (1+eps)/2
  std::vector<Prediction> scenarios() const { return {over, under, intermediate}; }
};
RobustnessCase canonical_robustness_instance(std::size_t n, const Rational& eps);

// Breaks ties by adding distinct multiples of a step smaller than any existing gap.
// Relative order of originally distinct values is preserved; the result is pairwise distinct.
std::vector<Rational> make_distinct(const std::vector<Rational>& values);
bool pairwise_distinct(const std::vector<Rational>& values);

// Sorted descending order statistics; missing ones read as 0.
Rational highest(const std::vector<Rational>& values, std::size_t k = 1);

}  // namespace auctionlab
