#include "auctionlab/audit.hpp"

#include "auctionlab/kernel.hpp"

#include <algorithm>
#include <random>
#include <tuple>

namespace auctionlab {

namespace {

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Rational half_min_gap(const std::vector<Rational>& sorted_unique) {
  Rational gap(1);
  bool found = false;
  for (std::size_t k = 1; k < sorted_unique.size(); ++k) {
    Rational g = sorted_unique[k] - sorted_unique[k - 1];
    if (!found || g < gap) gap = g;
    found = true;
  }
  return gap / 2;
}

std::vector<Rational> with_shifts(const std::vector<Rational>& points, const Rational& delta) {
  std::vector<Rational> out;
  for (const auto& p : points) {
    out.push_back(p);
    out.push_back(p - delta);
    out.push_back(p + delta);
  }
  sort_unique(out);
  return out;
}

std::vector<BidderType> profile_of(const Instance& truth, BidderId bidder, const std::vector<BidderType>& others) {
  if (others.empty()) return truth.bidders();
  if (others.size() != truth.size()) throw InputError("others_reports needs one entry per bidder");
  std::vector<BidderType> p = others;
  p[bidder] = truth[bidder];
  for (auto& b : p) {
    b.arrival.canonicalize();
    b.departure.canonicalize();
    b.value.canonicalize();
  }
  return p;
}

bool lex_less(const BidderType& a, const BidderType& b) {
  return std::tie(a.value, a.arrival, a.departure) < std::tie(b.value, b.arrival, b.departure);
}

}  // namespace

std::vector<BidderType> deviation_grid(const Instance& truth, BidderId bidder, const AuctionParams& params,
                                       const Prediction& prediction, GridRestriction restriction,
                                       const std::vector<BidderType>& others_reports) {
  if (bidder >= truth.size()) throw InputError("bidder out of range");
  const std::vector<BidderType> profile = profile_of(truth, bidder, others_reports);
  const BidderType& own = truth[bidder];
  const Rational pred = canonical(params.gamma) * prediction.value;

  std::vector<Rational> value_points{Rational(0), prediction.value, pred};
  std::vector<Rational> time_points;
  for (const auto& b : profile) {
    value_points.push_back(b.value);
    time_points.push_back(b.arrival);
    time_points.push_back(b.departure);
  }
  sort_unique(value_points);
  sort_unique(time_points);

  std::vector<Rational> values = with_shifts(value_points, half_min_gap(value_points));
  values.erase(std::remove_if(values.begin(), values.end(), [](const Rational& v) { return sgn(v) < 0; }),
               values.end());
  std::vector<Rational> times = with_shifts(time_points, half_min_gap(time_points));

  if (restriction == GridRestriction::time_only) values = {own.value};
  std::vector<std::pair<Rational, Rational>> windows;
  if (restriction == GridRestriction::value_only) {
    windows.emplace_back(own.arrival, own.departure);
  } else {
    for (const auto& a : times) {
      if (a < own.arrival) continue;
      for (const auto& d : times)
        if (d >= a) windows.emplace_back(a, d);
    }
  }

  std::vector<BidderType> out;
  out.reserve(values.size() * windows.size());
  for (const auto& v : values)
    for (const auto& [a, d] : windows) out.push_back({a, d, v});
  return out;  // values ascending, then arrival, then departure
}

DeviationReport audit_bidder(const Instance& truth, const AuctionParams& raw_params, const Prediction& prediction,
                             BidderId bidder, const std::vector<BidderType>& others_reports,
                             const AuditOptions& options) {
  const AuctionParams params{canonical(raw_params.alpha), canonical(raw_params.gamma), raw_params.strict_wn};
  const std::size_t n = truth.size();
  params.validate(n);
  const std::vector<BidderType> profile = profile_of(truth, bidder, others_reports);
  const std::vector<BidderType> grid =
      deviation_grid(truth, bidder, params, prediction, options.restriction, others_reports);
  const BidderType& own = truth[bidder];

  DeviationReport rep;
  rep.bidder = bidder;
  rep.others_reports = profile;
  rep.candidates = grid.size();

  auto reference_utility = [&](const BidderType& report) {
    std::vector<BidderType> reports = profile;
    reports[bidder] = report;
    return run_with_reports(truth, reports, params, prediction, options.engine).utilities[bidder];
  };

  // Others' reports must respect their own true arrivals too.
  for (BidderId j = 0; j < n; ++j)
    if (j != bidder && profile[j].arrival < truth[j].arrival)
      throw InputError("bidder " + std::to_string(j + 1) + " is reported to arrive before the true arrival");

  rep.truthful_utility = reference_utility(own);

  bool have_best = false;
  auto consider = [&](const BidderType& cand, const Rational& u) {
    if (!have_best || u > rep.best_utility || (u == rep.best_utility && lex_less(cand, rep.best_report))) {
      rep.best_report = cand;
      rep.best_utility = u;
      have_best = true;
    }
  };

  if (options.reference_path) {
    for (const auto& cand : grid) consider(cand, reference_utility(cand));
  } else {
    // Ranks over every value that can appear, so one table serves the whole grid.
    const Rational pred = params.gamma * prediction.value;
    std::vector<Rational> critical{Rational(0), pred};
    for (const auto& b : profile) critical.push_back(b.value);
    for (const auto& c : grid) critical.push_back(c.value);
    const kernel::RankTable table(std::move(critical));
    std::vector<int> ranks(n);
    for (std::size_t j = 0; j < n; ++j) ranks[j] = table.rank(profile[j].value);
    const PhaseMilestones m = milestones(n, params.alpha);
    const PhaseMilestones rm = options.engine.rerun_rescale ? milestones(n - 1, params.alpha) : m;
    const kernel::Config config{m, rm, table.rank(pred), table.rank(Rational(0))};

    std::vector<Rational> arrivals(n), departures(n);
    for (std::size_t j = 0; j < n; ++j) {
      arrivals[j] = profile[j].arrival;
      departures[j] = profile[j].departure;
    }
    // Group candidates by window so each schedule is built once.
    std::vector<std::size_t> order(grid.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return std::tie(grid[x].arrival, grid[x].departure) < std::tie(grid[y].arrival, grid[y].departure);
    });
    kernel::Schedule schedule;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const BidderType& cand = grid[order[k]];
      if (k == 0 || cand.arrival != grid[order[k - 1]].arrival || cand.departure != grid[order[k - 1]].departure) {
        arrivals[bidder] = cand.arrival;
        departures[bidder] = cand.departure;
        schedule = kernel::make_schedule(arrivals, departures, truth.tie_break());
      }
      ranks[bidder] = table.rank(cand.value);
      const kernel::Alloc a = kernel::alloc(schedule, ranks.data(), config);
      Rational u(0);
      if (a.winner == static_cast<int>(bidder)) {
        const Rational& p = table.value(kernel::price(schedule, ranks.data(), config, a, options.engine.payment));
        const bool in_window = cand.departure >= own.arrival && cand.departure <= own.departure;
        u = in_window ? Rational(own.value - p) : Rational(-p);
      }
      consider(cand, u);
    }
  }

  rep.gain = rep.best_utility - rep.truthful_utility;
  std::vector<BidderType> reports = profile;
  reports[bidder] = rep.best_report;
  EngineOptions traced = options.engine;
  traced.record_trace = true;
  rep.witness_trace = run_with_reports(truth, reports, params, prediction, traced).allocation.trace;
  return rep;
}

std::vector<DeviationReport> audit_instance(const Instance& truth, const AuctionParams& params,
                                            const Prediction& prediction, const AuditOptions& options) {
  const std::size_t n = truth.size();
  std::vector<DeviationReport> out;
  for (BidderId i = 0; i < n; ++i) out.push_back(audit_bidder(truth, params, prediction, i, {}, options));
  if (!options.adversarial_others) return out;

  // Each bidder draws a misreport from its own grid, independently per profile.
  std::vector<std::vector<BidderType>> grids;
  for (BidderId j = 0; j < n; ++j) grids.push_back(deviation_grid(truth, j, params, prediction));
  for (std::size_t k = 0; k < options.profiles; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    std::vector<BidderType> profile(n);
    for (BidderId j = 0; j < n; ++j) profile[j] = grids[j][rng() % grids[j].size()];
    for (BidderId i = 0; i < n; ++i) {
      DeviationReport r = audit_bidder(truth, params, prediction, i, profile, options);
      if (r.gain > out[i].gain) out[i] = std::move(r);
    }
  }
  return out;
}

AuditCase random_audit_case(std::uint64_t seed, std::size_t max_n) {
  if (max_n < 2) throw InputError("random audit cases need max_n >= 2");
  std::mt19937_64 rng(seed);
  const std::size_t n = 2 + static_cast<std::size_t>(rng() % (max_n - 1));
  const int horizon = static_cast<int>(2 * n + 2);
  std::vector<int> pool;
  for (int v = 1; v <= static_cast<int>(3 * n); ++v) pool.push_back(v);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<BidderType> bidders;
  std::uniform_int_distribution<int> t(0, horizon);
  for (std::size_t i = 0; i < n; ++i) {
    int a = t(rng), d = t(rng);
    if (d < a) std::swap(a, d);
    bidders.push_back({Rational(a), Rational(d), Rational(pool[i])});
  }
  std::vector<BidderId> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = i;
  std::shuffle(pi.begin(), pi.end(), rng);

  static const std::vector<Rational> menu{Rational(0),    Rational(1, 5), Rational(1, 4), Rational(1, 3),
                                          Rational(1, 2), Rational(3, 5), Rational(2, 3), Rational(3, 4),
                                          Rational(4, 5), Rational(1)};
  AuctionParams params{menu[rng() % menu.size()]};
  if (rng() % 4 == 0) params.gamma = Rational(1, 2);
  Prediction pred(Rational(static_cast<long>(rng() % (3 * n + 2))));
  return {Instance(std::move(bidders), std::move(pi), true), params, pred};
}

}  // namespace auctionlab
