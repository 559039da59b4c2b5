#include "auctionlab/audit.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace auctionlab;

namespace {

Instance payment_reduction_instance() { return Instance({{0, 10, 9}, {1, 2, 3}, {3, 4, 5}, {5, 6, 2}}); }
Instance tiebreak_clause_instance() {
  return Instance({{0, 20, 9}, {1, 2, 3}, {3, 4, 5}, {5, 6, 2}, {Q(9, 2), 15, 6}});
}

Rational replay(const Instance& truth, const DeviationReport& r, const AuctionParams& p, const Prediction& pred,
                EngineOptions e = {}) {
  std::vector<BidderType> reports = r.others_reports;
  reports[r.bidder] = r.best_report;
  e.record_trace = true;
  ReportedRun run = run_with_reports(truth, reports, p, pred, e);
  CHECK(run.allocation.trace == r.witness_trace);
  return run.utilities[r.bidder];
}

}  // namespace

TEST_CASE("grid contains the truthful type and respects reporting constraints") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    AuditCase c = random_audit_case(seed, 5);
    for (BidderId i = 0; i < c.instance.size(); ++i) {
      auto grid = deviation_grid(c.instance, i, c.params, c.prediction);
      CHECK(std::find(grid.begin(), grid.end(), c.instance[i]) != grid.end());
      for (const auto& b : grid) {
        CHECK(b.arrival >= c.instance[i].arrival);
        CHECK(b.departure >= b.arrival);
        CHECK(b.value >= 0);
      }
      CHECK(std::is_sorted(grid.begin(), grid.end(), [](const BidderType& a, const BidderType& b) {
        return std::tie(a.value, a.arrival, a.departure) < std::tie(b.value, b.arrival, b.departure);
      }));
    }
  }
}

TEST_CASE("grid size for two disjoint bidders") {
  Instance inst({{0, 1, 5}, {2, 3, 3}});
  AuctionParams p{Q(1, 2)};
  Prediction pred(Rational(4));
  auto grid = deviation_grid(inst, 0, p, pred);
  // value points {0, 3, 4, 5}, time points {0, 1, 2, 3}; each point contributes itself and +-delta
  const std::size_t value_points = 4, time_points = 4;
  CHECK(grid.size() <= (3 * value_points + 3) * (3 * time_points) * (3 * time_points));
  CHECK(grid.size() > 0);
}

TEST_CASE("grid straddles every threshold the engine can produce") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    AuditCase c = random_audit_case(seed, 5);
    std::vector<Rational> critical{Rational(0), c.params.gamma * c.prediction.value};
    for (const auto& b : c.instance.bidders()) critical.push_back(b.value);
    std::sort(critical.begin(), critical.end());
    critical.erase(std::unique(critical.begin(), critical.end()), critical.end());
    for (BidderId i = 0; i < c.instance.size(); ++i) {
      auto grid = deviation_grid(c.instance, i, c.params, c.prediction, GridRestriction::value_only);
      for (std::size_t k = 0; k + 1 < critical.size(); ++k) {
        bool between = std::any_of(grid.begin(), grid.end(),
                                   [&](const BidderType& b) { return b.value > critical[k] && b.value < critical[k + 1]; });
        CHECK(between);
      }
      CHECK(std::any_of(grid.begin(), grid.end(), [&](const BidderType& b) { return b.value > critical.back(); }));
    }
  }
}

TEST_CASE("fast grid evaluation matches run_with_reports on every candidate") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    AuditCase c = random_audit_case(seed, 4);
    for (BidderId i = 0; i < c.instance.size(); ++i) {
      for (auto variant : {PaymentVariant::standard, PaymentVariant::no_rerun}) {
        AuditOptions fast, slow;
        fast.engine.payment = slow.engine.payment = variant;
        slow.reference_path = true;
        DeviationReport a = audit_bidder(c.instance, c.params, c.prediction, i, {}, fast);
        DeviationReport b = audit_bidder(c.instance, c.params, c.prediction, i, {}, slow);
        CHECK(a.best_report == b.best_report);
        CHECK(a.best_utility == b.best_utility);
        CHECK(a.truthful_utility == b.truthful_utility);
      }
    }
  }
}

TEST_CASE("random overlapping instances admit no profitable deviation") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    AuditCase c = random_audit_case(seed, 5);
    for (const auto& r : audit_instance(c.instance, c.params, c.prediction)) {
      CHECK(r.gain <= 0);
      CHECK(r.gain == r.best_utility - r.truthful_utility);
    }
  }
}

TEST_CASE("value-only and time-only deviations are unprofitable") {
  for (std::uint64_t seed = 500; seed < 540; ++seed) {
    AuditCase c = random_audit_case(seed, 5);
    for (auto restriction : {GridRestriction::value_only, GridRestriction::time_only}) {
      AuditOptions o;
      o.restriction = restriction;
      for (const auto& r : audit_instance(c.instance, c.params, c.prediction, o)) CHECK(r.gain <= 0);
    }
  }
}

TEST_CASE("adversarial others: truthfulness stays dominant") {
  AuditOptions o;
  o.adversarial_others = true;
  o.profiles = 6;
  for (std::uint64_t seed = 900; seed < 915; ++seed) {
    AuditCase c = random_audit_case(seed, 4);
    o.seed = seed;
    for (const auto& r : audit_instance(c.instance, c.params, c.prediction, o)) {
      CHECK(r.gain <= 0);
      CHECK(replay(c.instance, r, c.params, c.prediction) == r.best_utility);
    }
  }
}

TEST_CASE("first-phase departers cannot gain") {
  // bidder 2 departs first and sees an infinite threshold
  Instance inst = payment_reduction_instance();
  DeviationReport r = audit_bidder(inst, {Q(1, 2)}, Prediction(Rational(8)), 1);
  CHECK(r.truthful_utility == 0);
  CHECK(r.gain <= 0);
}

TEST_CASE("the winner cannot lower the reduced price") {
  Instance inst = payment_reduction_instance();
  AuctionParams p{Q(1, 2)};
  Prediction pred(Rational(8));
  DeviationReport r = audit_bidder(inst, p, pred, 0);
  CHECK(r.truthful_utility == 4);
  CHECK(r.gain <= 0);
  AuditOptions times;
  times.restriction = GridRestriction::time_only;
  CHECK(audit_bidder(inst, p, pred, 0, {}, times).gain <= 0);
}

TEST_CASE("a mid-value loser overbidding pays the high threshold") {
  Instance inst = sequential_instance({3, 6, 5, 2});
  AuctionParams p{Q(1, 2)};
  Prediction pred(Rational(8));
  CHECK_FALSE(run(inst, p, pred).winner);
  auto reports = inst.bidders();
  reports[2].value = 8;
  ReportedRun over = run_with_reports(inst, reports, p, pred);
  REQUIRE(over.outcome.winner);
  CHECK(*over.outcome.winner == 2);
  CHECK(over.outcome.price == 8);
  CHECK(over.utilities[2] == -3);
  CHECK(audit_bidder(inst, p, pred, 2).gain <= 0);
}

TEST_CASE("dropping the rerun exposes a profitable value misreport") {
  Instance inst = payment_reduction_instance();
  AuctionParams p{Q(1, 2)};
  Prediction pred(Rational(8));
  AuditOptions broken;
  broken.engine.payment = PaymentVariant::no_rerun;
  DeviationReport r = audit_bidder(inst, p, pred, 0, {}, broken);
  CHECK(r.truthful_utility == 1);
  CHECK(r.gain > 0);
  CHECK(r.best_utility == 4);
  CHECK(r.best_report.value < 8);
  CHECK(replay(inst, r, p, pred, broken.engine) == r.best_utility);
  CHECK(audit_bidder(inst, p, pred, 0).gain <= 0);
}

TEST_CASE("dropping the tie-break clause exposes a profitable value misreport") {
  Instance inst = tiebreak_clause_instance();
  AuctionParams p{Q(1, 5)};
  Prediction pred(Rational(8));
  AuditOptions broken;
  broken.engine.payment = PaymentVariant::no_tiebreak_clause;
  DeviationReport r = audit_bidder(inst, p, pred, 0, {}, broken);
  CHECK(r.truthful_utility == 1);
  CHECK(r.gain == 3);
  CHECK(replay(inst, r, p, pred, broken.engine) == r.best_utility);
  CHECK(audit_bidder(inst, p, pred, 0).gain <= 0);
  for (const auto& rep : audit_instance(inst, p, pred)) CHECK(rep.gain <= 0);
}

TEST_CASE("others reporting an early arrival is rejected") {
  Instance inst = payment_reduction_instance();
  auto others = inst.bidders();
  others[2].arrival = 0;
  CHECK_THROWS_AS(audit_bidder(inst, {Q(1, 2)}, Prediction(Rational(8)), 0, others), InputError);
}

TEST_CASE("random audit cases are reproducible") {
  AuditCase a = random_audit_case(42, 5), b = random_audit_case(42, 5);
  CHECK(a.instance == b.instance);
  CHECK(a.params.alpha == b.params.alpha);
  CHECK(a.prediction.value == b.prediction.value);
  CHECK(a.instance.size() >= 2);
  CHECK(a.instance.size() <= 5);
}
