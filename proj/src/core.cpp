#include "auctionlab/core.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace auctionlab {

void validate(const BidderType& raw) {
  const BidderType b{canonical(raw.arrival), canonical(raw.departure), canonical(raw.value)};
  if (sgn(b.arrival) < 0) throw InputError("arrival must be nonnegative, got " + to_string(b.arrival));
  if (b.departure < b.arrival)
    throw InputError("departure " + to_string(b.departure) + " precedes arrival " + to_string(b.arrival));
  if (sgn(b.value) < 0) throw InputError("value must be nonnegative, got " + to_string(b.value));
}

void validate(const Interval& iv) { validate(BidderType{iv.arrival, iv.departure, 0}); }

void validate_tie_break(const std::vector<BidderId>& tie_break, std::size_t n) {
  if (tie_break.empty()) return;
  if (tie_break.size() != n) throw InputError("tie_break must list every bidder exactly once");
  std::vector<char> seen(n, 0);
  for (BidderId b : tie_break) {
    if (b >= n || seen[b]) throw InputError("tie_break is not a permutation of the bidders");
    seen[b] = 1;
  }
}

Instance::Instance(std::vector<BidderType> bidders, std::vector<BidderId> tie_break, bool distinct)
    : bidders_(std::move(bidders)), tie_break_(std::move(tie_break)), distinct_(distinct) {
  const std::size_t n = bidders_.size();
  if (n == 0) throw InputError("instance needs at least one bidder");
  for (auto& b : bidders_) {
    b.arrival.canonicalize();
    b.departure.canonicalize();
    b.value.canonicalize();
  }
  for (const auto& b : bidders_) validate(b);
  if (tie_break_.empty()) {
    tie_break_.resize(n);
    std::iota(tie_break_.begin(), tie_break_.end(), BidderId{0});
  }
  validate_tie_break(tie_break_, n);
  priority_.assign(n, 0);
  for (std::size_t pos = 0; pos < n; ++pos) priority_[tie_break_[pos]] = pos;
  if (distinct_ && !pairwise_distinct(values())) throw InputError("instance flagged distinct has repeated values");
}

std::vector<Rational> Instance::values() const {
  std::vector<Rational> out;
  out.reserve(bidders_.size());
  for (const auto& b : bidders_) out.push_back(b.value);
  return out;
}

std::vector<Interval> Instance::intervals() const {
  std::vector<Interval> out;
  out.reserve(bidders_.size());
  for (const auto& b : bidders_) out.push_back({b.arrival, b.departure});
  return out;
}

void AuctionParams::validate(std::size_t n) const {
  const Rational alpha = canonical(this->alpha), gamma = canonical(this->gamma);
  if (sgn(alpha) < 0 || alpha > 1) throw InputError("alpha must lie in [0,1], got " + to_string(alpha));
  if (sgn(gamma) < 0 || gamma > 1) throw InputError("gamma must lie in [0,1], got " + to_string(gamma));
  if (strict_wn && !in_wn(alpha, n))
    throw InputError("alpha " + to_string(alpha) + " is not in W_" + std::to_string(n));
}

bool in_wn(const Rational& raw, std::size_t n) {
  const Rational alpha = canonical(raw);
  if (sgn(alpha) < 0 || alpha > 1) return false;
  Rational a = alpha * n;
  Rational b = (1 - alpha) * n / 2;
  return a.get_den() == 1 && b.get_den() == 1;
}

std::vector<Rational> wn_grid(std::size_t n) {
  std::vector<Rational> out;
  for (std::size_t k = 0; k <= n; ++k) {
    Rational a(static_cast<unsigned long>(k), static_cast<unsigned long>(n));
    a.canonicalize();
    if (in_wn(a, n)) out.push_back(a);
  }
  return out;
}

Prediction::Prediction(Rational v) : value(canonical(std::move(v))) {
  if (sgn(value) < 0) throw InputError("prediction must be nonnegative, got " + to_string(value));
}

Matching::Matching(std::vector<std::size_t> a) : assignment(std::move(a)) {
  std::vector<char> seen(assignment.size(), 0);
  for (auto s : assignment) {
    if (s >= assignment.size() || seen[s]) throw InputError("matching is not a bijection");
    seen[s] = 1;
  }
}

Matching random_assignment(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return Matching(std::move(perm));
}

Instance apply_matching(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                        const Matching& m, std::vector<BidderId> tie_break) {
  if (values.size() != intervals.size())
    throw InputError("values and intervals differ in size (" + std::to_string(values.size()) + " vs " +
                     std::to_string(intervals.size()) + ")");
  if (m.assignment.size() != values.size()) throw InputError("matching size differs from instance size");
  std::vector<BidderType> bidders(values.size());
  for (std::size_t v = 0; v < values.size(); ++v) {
    const Interval& iv = intervals[m.assignment[v]];
    bidders[m.assignment[v]] = {iv.arrival, iv.departure, values[v]};
  }
  return Instance(std::move(bidders), std::move(tie_break));
}

Instance random_matching(const std::vector<Rational>& values, const std::vector<Interval>& intervals,
                         std::uint64_t seed, std::vector<BidderId> tie_break) {
  if (values.size() != intervals.size())
    throw InputError("values and intervals differ in size (" + std::to_string(values.size()) + " vs " +
                     std::to_string(intervals.size()) + ")");
  return apply_matching(values, intervals, random_assignment(values.size(), seed), std::move(tie_break));
}

Instance sequential_instance(const std::vector<Rational>& values) {
  if (values.empty()) throw InputError("sequential instance needs at least one value");
  std::vector<BidderType> bidders;
  bidders.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    Rational t(static_cast<unsigned long>(i + 1));
    bidders.push_back({t, t, values[i]});
  }
  return Instance(std::move(bidders));
}

std::vector<Interval> disjoint_intervals(std::size_t n) {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < n; ++i) {
    Rational t(static_cast<unsigned long>(i + 1));
    out.push_back({t, t});
  }
  return out;
}

ConsistencyCase canonical_consistency_instance(std::size_t n) {
  if (n < 2) throw InputError("canonical instances need n >= 2");
  std::vector<Rational> values(n, Rational(0));
  values[0] = 1;
  return {values, Prediction(Rational(1))};
}

RobustnessCase canonical_robustness_instance(std::size_t n, const Rational& raw_eps) {
  const Rational eps = canonical(raw_eps);
  if (n < 2) throw InputError("canonical instances need n >= 2");
  if (sgn(eps) <= 0 || eps >= 1) throw InputError("eps must lie strictly between 0 and 1");
  std::vector<Rational> values(n, Rational(0));
  values[0] = 1;
  values[1] = eps;
  return {values, Prediction(Rational(2)), Prediction(Rational(eps / 2)), Prediction(Rational((1 + eps) / 2))};
}

bool pairwise_distinct(const std::vector<Rational>& values) {
  std::vector<Rational> s = values;
  for (auto& v : s) v.canonicalize();
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

std::vector<Rational> make_distinct(const std::vector<Rational>& raw) {
  std::vector<Rational> values = raw;
  for (auto& v : values) v.canonicalize();
  std::vector<Rational> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  Rational gap(1);
  for (std::size_t k = 1; k < sorted.size(); ++k)
    if (sorted[k] != sorted[k - 1]) gap = std::min(gap, Rational(sorted[k] - sorted[k - 1]));
  const Rational step = gap / Rational(static_cast<unsigned long>(values.size() + 1));
  std::vector<Rational> out = values;
  // k-th repeat of a value (in input order) moves up by k steps.
  for (std::size_t i = 0; i < values.size(); ++i) {
    unsigned long repeats = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (values[j] == values[i]) ++repeats;
    out[i] += step * repeats;
  }
  return out;
}

Rational highest(const std::vector<Rational>& values, std::size_t k) {
  if (k == 0 || k > values.size()) return Rational(0);
  std::vector<Rational> s = values;
  for (auto& v : s) v.canonicalize();
  std::nth_element(s.begin(), s.begin() + (k - 1), s.end(), std::greater<>());
  return s[k - 1];
}

}  // namespace auctionlab
