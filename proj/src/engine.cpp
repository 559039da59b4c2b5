#include "auctionlab/engine.hpp"

#include "auctionlab/kernel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace auctionlab {

PhaseMilestones milestones(std::size_t n, const Rational& raw_alpha) {
  const Rational alpha = canonical(raw_alpha);
  const Rational lo = (1 - alpha) * n / 2;
  const Rational hi = (1 + alpha) * n / 2;
  mpz_class c, f;
  mpz_cdiv_q(c.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  mpz_fdiv_q(f.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  std::size_t i1 = c.get_ui();
  std::size_t i2 = f.get_ui();
  i1 = std::min(i1, n);
  i2 = std::clamp(i2, i1, n);
  return {i1, i2};
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::arrival: return "arrival";
    case EventKind::departure: return "departure";
    case EventKind::threshold_update: return "threshold_update";
    case EventKind::clinch: return "clinch";
  }
  return "?";
}

namespace kernel {

Schedule make_schedule(const std::vector<Rational>& arrivals, const std::vector<Rational>& departures,
                       const std::vector<BidderId>& tie_break, bool keep_times) {
  const std::size_t n = arrivals.size();
  Schedule s;
  s.n = n;
  s.by_priority.resize(n);
  s.priority.resize(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    s.by_priority[pos] = static_cast<std::uint32_t>(tie_break.empty() ? pos : tie_break[pos]);
    s.priority[s.by_priority[pos]] = static_cast<std::uint32_t>(pos);
  }
  struct Ev {
    const Rational* time;
    bool departure;
    std::uint32_t bidder;
  };
  std::vector<Ev> ev;
  ev.reserve(2 * n);
  for (std::uint32_t b = 0; b < n; ++b) {
    ev.push_back({&arrivals[b], false, b});
    ev.push_back({&departures[b], true, b});
  }
  std::sort(ev.begin(), ev.end(), [&](const Ev& x, const Ev& y) {
    if (int c = cmp(*x.time, *y.time); c != 0) return c < 0;
    if (x.departure != y.departure) return !x.departure;
    return s.priority[x.bidder] < s.priority[y.bidder];
  });
  s.departure_index.assign(n, 0);
  std::uint32_t departed = 0;
  for (const Ev& e : ev) {
    s.steps.push_back({e.bidder, e.departure});
    if (e.departure) s.departure_index[e.bidder] = ++departed;
    if (keep_times) s.step_time.push_back(*e.time);
  }
  return s;
}

Schedule make_schedule(const Instance& instance, bool keep_times) {
  std::vector<Rational> a, d;
  for (const auto& b : instance.bidders()) {  // instances hold reduced rationals
    a.push_back(b.arrival);
    d.push_back(b.departure);
  }
  return make_schedule(a, d, instance.tie_break(), keep_times);
}

Schedule sequential_schedule(std::size_t n) {
  Schedule s;
  s.n = n;
  s.by_priority.resize(n);
  s.priority.resize(n);
  s.departure_index.resize(n);
  for (std::uint32_t b = 0; b < n; ++b) {
    s.by_priority[b] = s.priority[b] = b;
    s.departure_index[b] = b + 1;
    s.steps.push_back({b, false});
    s.steps.push_back({b, true});
  }
  return s;
}

namespace {

inline int threshold_for(std::size_t departed, int v_max, const PhaseMilestones& m, int pred) {
  if (departed < m.i1_count) return kInfinity;
  if (departed < m.i2_count) return std::max(v_max, pred);
  return v_max;
}

}  // namespace

Alloc alloc(const Schedule& s, const int* value, const Config& c, int excluded, std::vector<TraceStep>* trace) {
  constexpr std::size_t kStack = 64;
  char stack_flags[kStack] = {};
  std::vector<char> heap_flags;
  char* active = stack_flags;
  if (s.n > kStack) {
    heap_flags.assign(s.n, 0);
    active = heap_flags.data();
  }

  std::size_t departed = 0;
  int v_max = c.zero_rank;
  int tau = threshold_for(0, v_max, c.m, c.pred);
  auto log = [&](std::size_t k, EventKind kind, std::uint32_t b, int before, int after) {
    if (trace) trace->push_back({k, kind, b, before, after, v_max});
  };

  for (std::size_t k = 0; k < s.steps.size(); ++k) {
    const Step st = s.steps[k];
    const std::uint32_t b = st.bidder;
    if (static_cast<int>(b) == excluded) continue;
    if (!st.departure) {
      active[b] = 1;
      log(k, EventKind::arrival, b, tau, tau);
      if (tau != kInfinity && value[b] >= tau) {
        log(k, EventKind::clinch, b, tau, tau);
        return {static_cast<int>(b), tau, false};
      }
      continue;
    }
    active[b] = 0;
    ++departed;
    v_max = std::max(v_max, value[b]);
    log(k, EventKind::departure, b, tau, tau);
    const int next = threshold_for(departed, v_max, c.m, c.pred);
    if (next == tau) continue;  // active bidders were all below tau on arrival
    log(k, EventKind::threshold_update, b, tau, next);
    tau = next;
    if (tau == kInfinity) continue;
    for (std::uint32_t p : s.by_priority) {
      if (active[p] && value[p] >= tau) {
        log(k, EventKind::clinch, p, tau, tau);
        return {static_cast<int>(p), tau, true};
      }
    }
  }
  return {kNone, tau, false};
}

int price(const Schedule& s, const int* value, const Config& c, const Alloc& a, PaymentVariant variant) {
  if (a.winner == kNone) throw std::logic_error("price of an unsold allocation");
  const int tau = a.tau;
  if (variant == PaymentVariant::no_rerun) return tau;
  if (tau == kInfinity || tau != c.pred) return tau;
  if (s.departure_index[static_cast<std::size_t>(a.winner)] <= c.m.i2_count) return tau;

  Config rc = c;
  rc.m = c.rerun_m;
  const Alloc r = alloc(s, value, rc, a.winner);
  bool lower = !r.active_winner;
  if (!lower && variant == PaymentVariant::standard)
    lower = s.priority[static_cast<std::size_t>(a.winner)] < s.priority[static_cast<std::size_t>(r.winner)];
  if (lower && r.tau != kInfinity) return r.tau;
  return tau;
}

RankTable::RankTable(std::vector<Rational> critical) : sorted_(std::move(critical)) {
  for (auto& v : sorted_) v.canonicalize();
  std::sort(sorted_.begin(), sorted_.end());
  sorted_.erase(std::unique(sorted_.begin(), sorted_.end()), sorted_.end());
}

int RankTable::rank(const Rational& raw) const {
  const Rational v = canonical(raw);
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), v);
  if (it == sorted_.end() || *it != v) throw std::logic_error("value missing from rank table: " + to_string(v));
  return static_cast<int>(it - sorted_.begin());
}

Threshold to_threshold(const RankTable& t, int rank) {
  return rank == kInfinity ? Threshold::infinity() : Threshold(t.value(rank));
}

}  // namespace kernel

namespace {

struct Prepared {
  kernel::Schedule schedule;
  kernel::RankTable table;
  std::vector<int> value_rank;
  kernel::Config config;
};

Prepared prepare(const Instance& inst, const AuctionParams& raw, const Prediction& prediction,
                 const EngineOptions& options) {
  const AuctionParams params{canonical(raw.alpha), canonical(raw.gamma), raw.strict_wn};
  params.validate(inst.size());
  const Rational pred = params.gamma * prediction.value;
  std::vector<Rational> critical = inst.values();
  critical.push_back(Rational(0));
  critical.push_back(pred);
  kernel::RankTable table(std::move(critical));
  std::vector<int> ranks;
  ranks.reserve(inst.size());
  for (const auto& b : inst.bidders()) ranks.push_back(table.rank(b.value));
  const std::size_t n = inst.size();
  const PhaseMilestones m = milestones(n, params.alpha);
  const PhaseMilestones rm = options.rerun_rescale ? milestones(n - 1, params.alpha) : m;
  kernel::Config config{m, rm, table.rank(pred), table.rank(Rational(0))};
  return {kernel::make_schedule(inst, options.record_trace), std::move(table), std::move(ranks), config};
}

EventTrace to_trace(const Prepared& p, const std::vector<kernel::TraceStep>& steps) {
  EventTrace out;
  out.reserve(steps.size());
  for (const auto& t : steps)
    out.push_back({p.schedule.step_time[t.step], t.kind, t.bidder, kernel::to_threshold(p.table, t.tau_before),
                   kernel::to_threshold(p.table, t.tau_after), p.table.value(t.v_max)});
  return out;
}

AllocationResult to_result(const Prepared& p, const kernel::Alloc& a, EventTrace trace) {
  AllocationResult r;
  if (a.winner != kernel::kNone) r.winner = static_cast<BidderId>(a.winner);
  r.threshold = kernel::to_threshold(p.table, a.tau);
  r.active_winner = a.active_winner;
  r.trace = std::move(trace);
  return r;
}

}  // namespace

AllocationResult alloc(const Instance& instance, const AuctionParams& params, const Prediction& prediction,
                       const EngineOptions& options) {
  const Prepared p = prepare(instance, params, prediction, options);
  std::vector<kernel::TraceStep> steps;
  const kernel::Alloc a =
      kernel::alloc(p.schedule, p.value_rank.data(), p.config, kernel::kNone, options.record_trace ? &steps : nullptr);
  return to_result(p, a, options.record_trace ? to_trace(p, steps) : EventTrace{});
}

Rational payment(const Instance& instance, const AuctionParams& params, const Prediction& prediction,
                 const AllocationResult& allocation, const EngineOptions& options) {
  if (!allocation.winner) throw std::logic_error("payment requested for an unsold allocation");
  EngineOptions quiet = options;
  quiet.record_trace = false;
  const Prepared p = prepare(instance, params, prediction, quiet);
  kernel::Alloc a;
  a.winner = static_cast<int>(*allocation.winner);
  a.tau = allocation.threshold.is_infinite() ? kernel::kInfinity : p.table.rank(allocation.threshold.value());
  a.active_winner = allocation.active_winner;
  return p.table.value(kernel::price(p.schedule, p.value_rank.data(), p.config, a, options.payment));
}

namespace {

Outcome make_outcome(const Instance& reported, const Instance& truth, std::optional<BidderId> winner,
                     const Rational& price) {
  Outcome o;
  if (!winner) return o;
  o.winner = winner;
  o.allocation_time = reported[*winner].departure;
  o.price = price;
  o.revenue = price;
  const BidderType& t = truth[*winner];
  if (*o.allocation_time >= t.arrival && *o.allocation_time <= t.departure) o.welfare = t.value;
  return o;
}

}  // namespace

Outcome run(const Instance& instance, const AuctionParams& params, const Prediction& prediction,
            const EngineOptions& options) {
  EngineOptions quiet = options;
  quiet.record_trace = false;
  const Prepared p = prepare(instance, params, prediction, quiet);
  const kernel::Alloc a = kernel::alloc(p.schedule, p.value_rank.data(), p.config);
  if (a.winner == kernel::kNone) return Outcome{};
  const int pr = kernel::price(p.schedule, p.value_rank.data(), p.config, a, options.payment);
  return make_outcome(instance, instance, static_cast<BidderId>(a.winner), p.table.value(pr));
}

ReportedRun run_with_reports(const Instance& truth, const std::vector<BidderType>& reports,
                             const AuctionParams& params, const Prediction& prediction,
                             const EngineOptions& options) {
  if (reports.size() != truth.size()) throw InputError("one report per bidder is required");
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].arrival < truth[i].arrival)
      throw InputError("bidder " + std::to_string(i + 1) + " reports arrival " + to_string(reports[i].arrival) +
                       " before the true arrival " + to_string(truth[i].arrival));
    if (reports[i].departure < reports[i].arrival)
      throw InputError("bidder " + std::to_string(i + 1) + " reports departure before arrival");
  }
  const Instance reported(reports, truth.tie_break());
  const Prepared p = prepare(reported, params, prediction, options);
  std::vector<kernel::TraceStep> steps;
  const kernel::Alloc a =
      kernel::alloc(p.schedule, p.value_rank.data(), p.config, kernel::kNone, options.record_trace ? &steps : nullptr);

  ReportedRun out;
  out.allocation = to_result(p, a, options.record_trace ? to_trace(p, steps) : EventTrace{});
  out.utilities.assign(truth.size(), Rational(0));
  if (a.winner == kernel::kNone) return out;
  const BidderId w = static_cast<BidderId>(a.winner);
  const Rational pr = p.table.value(kernel::price(p.schedule, p.value_rank.data(), p.config, a, options.payment));
  out.outcome = make_outcome(reported, truth, w, pr);
  const Rational& t = *out.outcome.allocation_time;
  const bool in_window = t >= truth[w].arrival && t <= truth[w].departure;
  out.utilities[w] = in_window ? Rational(truth[w].value - pr) : Rational(-pr);
  return out;
}

}  // namespace auctionlab
