// auctionlab command line: run, eval, sweep, audit, lp, family.
// Exit codes: 0 success, 1 property violation found, 2 input error.

#include "auctionlab/audit.hpp"
#include "auctionlab/core.hpp"
#include "auctionlab/engine.hpp"
#include "auctionlab/enumerate.hpp"
#include "auctionlab/eval.hpp"
#include "auctionlab/family.hpp"
#include "auctionlab/lpbound.hpp"
#include "auctionlab/serialize.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace auctionlab;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Global {
  std::size_t cap = 10;
  unsigned workers = 1;
};

Rational option_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const InputError& e) {
    throw InputError(flag + ": " + e.what());
  }
}

void check_cap(const Global& g, std::size_t n, const char* what) {
  if (n > g.cap)
    throw EnumerationTooLarge(std::string(what) + " with n=" + std::to_string(n) + " exceeds the enumeration cap " +
                     std::to_string(g.cap) + " (raise --cap or AUCTIONLAB_CAP)");
}

Json estimate_json(const Estimate& e) { return {{"mean", e.mean}, {"std_error", e.std_error}}; }

Json opt_rational(const std::optional<Rational>& r) { return r ? Json(to_string(*r)) : Json(nullptr); }

Json eval_report_json(const EvalReport& r) {
  Json j;
  j["mode"] = r.exact ? "exact" : "mc";
  j["n"] = r.n;
  if (r.exact) {
    j["expected_revenue"] = opt_rational(r.expected_revenue);
    j["expected_welfare"] = opt_rational(r.expected_welfare);
  } else {
    j["expected_revenue"] = estimate_json(*r.revenue_estimate);
    j["expected_welfare"] = estimate_json(*r.welfare_estimate);
  }
  j["benchmark_v1"] = to_string(r.benchmark_v1);
  j["benchmark_v2"] = to_string(r.benchmark_v2);
  if (r.exact) {
    j["ratio_v1"] = opt_rational(r.ratio_v1);
    j["ratio_v2"] = opt_rational(r.ratio_v2);
  } else {
    j["ratio_v1"] = sgn(r.benchmark_v1) > 0 ? Json(r.revenue_estimate->mean / to_double(r.benchmark_v1)) : Json(nullptr);
    j["ratio_v2"] = sgn(r.benchmark_v2) > 0 ? Json(r.revenue_estimate->mean / to_double(r.benchmark_v2)) : Json(nullptr);
  }
  j[r.exact ? "permutations" : "trials"] = r.runs;
  return j;
}

std::string family_string(const PMAuction& a) { return to_string(a); }

Json score_json(const FamilyScore& s) {
  Json r;
  for (Scenario sc : kScenarios) r[to_string(sc)] = s.r_counts[static_cast<std::size_t>(sc)];
  return {{"c_count", s.c_count},
          {"r_counts", r},
          {"n_factorial", s.n_factorial},
          {"consistency", to_string(s.consistency())},
          {"robustness", to_string(s.robustness())}};
}

// ---- run ----

struct RunArgs {
  std::string instance;
  std::string alpha;
  std::string gamma = "1";
  std::string prediction;
  bool trace = false;
  bool rerun_rescale = false;
  bool strict_wn = false;
};

int cmd_run(const RunArgs& a) {
  const Instance inst = load_instance(a.instance);
  AuctionParams params{option_rational("--alpha", a.alpha), option_rational("--gamma", a.gamma), a.strict_wn};
  const Prediction pred(option_rational("--prediction", a.prediction));
  EngineOptions opts;
  opts.rerun_rescale = a.rerun_rescale;
  opts.record_trace = a.trace;
  const AllocationResult allocation = alloc(inst, params, pred, opts);
  const Outcome out = run(inst, params, pred, opts);
  Json j = outcome_to_json(out);
  j["threshold"] = to_string(allocation.threshold);
  j["active_winner"] = allocation.active_winner;
  if (a.trace) {
    // everything on stdout is JSON lines: outcome first, then one event per line
    std::cout << j.dump() << '\n';
    write_trace_jsonl(std::cout, allocation.trace);
  } else {
    std::cout << j.dump(2) << '\n';
  }
  return kOk;
}

// ---- eval ----

struct EvalArgs {
  bool exact = false;
  bool mc = false;
  std::string instance;
  std::string family;
  std::size_t n = 10;
  std::string alpha;
  std::string gamma = "1";
  std::string prediction;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  bool rerun_rescale = false;
};

Json scenario_rows(const std::vector<Prediction>& scenarios, const std::vector<Rational>& ratios) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < scenarios.size(); ++k)
    rows.push_back({{"prediction", to_string(scenarios[k].value)}, {"ratio", to_string(ratios[k])}});
  return rows;
}

int cmd_eval(const Global& g, const EvalArgs& a) {
  if (a.exact && a.mc) throw InputError("choose one of --exact and --mc");
  const bool exact = !a.mc;
  if (a.instance.empty() == a.family.empty()) throw InputError("give exactly one of --instance and --family");
  const Rational alpha = option_rational("--alpha", a.alpha);
  const Rational gamma = option_rational("--gamma", a.gamma);
  AuctionParams params{alpha, gamma};
  EvalOptions opts;
  opts.cap = g.cap;
  opts.workers = g.workers;
  opts.engine.rerun_rescale = a.rerun_rescale;

  if (!a.instance.empty()) {
    const Instance inst = load_instance(a.instance);
    if (a.prediction.empty()) throw InputError("--prediction is required with --instance");
    const Prediction pred(option_rational("--prediction", a.prediction));
    opts.tie_break = inst.tie_break();
    const EvalReport r = exact ? exact_expected_revenue(inst.values(), inst.intervals(), params, pred, opts)
                               : mc_expected_revenue(inst.values(), inst.intervals(), params, pred, a.trials, a.seed, opts);
    Json j = eval_report_json(r);
    if (sgn(pred.value) > 0 && sgn(r.benchmark_v1) > 0)
      j["prediction_quality"] = to_string(prediction_quality(pred, r.benchmark_v1));
    std::cout << j.dump(2) << '\n';
    return kOk;
  }

  if (a.family != "disjoint-canonical") throw InputError("unknown --family '" + a.family + "' (expected disjoint-canonical)");
  if (a.n < 2) throw InputError("--n must be at least 2");
  if (exact) check_cap(g, a.n, "exact evaluation");
  const auto intervals = disjoint_intervals(a.n);
  const auto c = canonical_consistency_instance(a.n);
  const auto rob = canonical_robustness_instance(a.n, Rational(1, 2));
  const auto scenarios = default_scenarios(rob.values);
  Json j;
  j["mode"] = exact ? "exact" : "mc";
  j["family"] = a.family;
  j["n"] = a.n;
  j["alpha"] = to_string(canonical(alpha));
  j["gamma"] = to_string(canonical(gamma));
  if (exact) {
    const Rational cons = consistency_ratio(c.values, intervals, params, opts);
    const RobustnessReport rr = robustness_ratio(rob.values, intervals, params, scenarios, opts);
    j["consistency"] = to_string(cons);
    j["robustness"] = to_string(rr.ratio);
    j["scenarios"] = scenario_rows(rr.scenarios, rr.per_scenario);
  } else {
    const EvalReport cr = mc_expected_revenue(c.values, intervals, params, c.prediction, a.trials, a.seed, opts);
    j["consistency"] = estimate_json(*cr.revenue_estimate);
    Json rows = Json::array();
    double worst = 0;
    bool first = true;
    const double v2 = to_double(rob.values[1]);
    for (const auto& p : scenarios) {
      const EvalReport r = mc_expected_revenue(rob.values, intervals, params, p, a.trials, a.seed, opts);
      const double ratio = r.revenue_estimate->mean / v2;
      rows.push_back({{"prediction", to_string(p.value)}, {"ratio", ratio}, {"std_error", r.revenue_estimate->std_error / v2}});
      if (first || ratio < worst) worst = ratio;
      first = false;
    }
    j["robustness"] = worst;
    j["scenarios"] = rows;
    j["trials"] = a.trials;
  }
  j["floor"] = to_string(robustness_floor(a.n, alpha));
  j["asymptotic_floor"] = to_string(asymptotic_floor(alpha));
  std::cout << j.dump(2) << '\n';
  return kOk;
}

// ---- sweep ----

struct SweepArgs {
  std::size_t n = 10;
  std::vector<std::string> alphas;
  bool decimal = false;
};

int cmd_sweep(const Global& g, const SweepArgs& a) {
  check_cap(g, a.n, "sweep");
  std::vector<Rational> grid;
  if (a.alphas.empty()) {
    for (int k = 0; k <= 5; ++k) grid.push_back(canonical(Rational(k, 5)));
  } else {
    for (const auto& s : a.alphas) grid.push_back(option_rational("--alphas", s));
  }
  EvalOptions opts;
  opts.cap = g.cap;
  opts.workers = g.workers;
  const SweepResult res = tradeoff_sweep(a.n, grid, opts);
  for (const auto& s : res.skipped)
    std::cerr << "warning: alpha " << to_string(s) << " is not in W_" << a.n << ", skipped\n";
  if (res.rows.empty()) throw InputError("no alpha in the grid belongs to W_" + std::to_string(a.n));
  auto cell = [&](const Rational& r) { return a.decimal ? to_decimal_string(r) : to_string(r); };
  std::cout << "alpha,consistency,robustness,floor,n\n";
  for (const auto& row : res.rows)
    std::cout << cell(row.alpha) << ',' << cell(row.consistency) << ',' << cell(row.robustness) << ','
              << cell(row.floor) << ',' << row.n << '\n';
  return kOk;
}

// ---- audit ----

struct AuditArgs {
  std::string instance;
  std::string alpha;
  std::string gamma = "1";
  std::string prediction;
  std::uint64_t seeds = 0;
  std::uint64_t first_seed = 0;
  std::size_t n = 5;
  std::string restriction = "none";
  bool adversarial = false;
  std::size_t profiles = 16;
  std::string payment = "standard";
  bool rerun_rescale = false;
};

Json bidder_type_json(const BidderType& b) {
  return {{"arrival", to_string(b.arrival)}, {"departure", to_string(b.departure)}, {"value", to_string(b.value)}};
}

Json deviation_json(const DeviationReport& r) {
  Json trace = Json::array();
  for (const auto& e : r.witness_trace) trace.push_back(trace_event_to_json(e));
  Json others = Json::array();
  for (const auto& b : r.others_reports) others.push_back(bidder_type_json(b));
  return {{"bidder", r.bidder + 1},
          {"best_report", bidder_type_json(r.best_report)},
          {"truthful_utility", to_string(r.truthful_utility)},
          {"best_utility", to_string(r.best_utility)},
          {"gain", to_string(r.gain)},
          {"candidates", r.candidates},
          {"others_reports", others},
          {"witness_trace", trace}};
}

int cmd_audit(const Global& g, const AuditArgs& a) {
  AuditOptions opts;
  if (a.restriction == "none") opts.restriction = GridRestriction::none;
  else if (a.restriction == "value") opts.restriction = GridRestriction::value_only;
  else if (a.restriction == "time") opts.restriction = GridRestriction::time_only;
  else throw InputError("--restriction must be none, value or time");
  if (a.payment == "standard") opts.engine.payment = PaymentVariant::standard;
  else if (a.payment == "no-rerun") opts.engine.payment = PaymentVariant::no_rerun;
  else if (a.payment == "no-tiebreak-clause") opts.engine.payment = PaymentVariant::no_tiebreak_clause;
  else throw InputError("--payment must be standard, no-rerun or no-tiebreak-clause");
  opts.engine.rerun_rescale = a.rerun_rescale;
  opts.adversarial_others = a.adversarial;
  opts.profiles = a.profiles;

  std::vector<AuditCase> cases;
  std::vector<Json> labels;
  if (!a.instance.empty()) {
    if (a.seeds) throw InputError("give either --instance or --seeds");
    const Instance inst = load_instance(a.instance);
    AuctionParams params{option_rational("--alpha", a.alpha), option_rational("--gamma", a.gamma)};
    cases.push_back({inst, params, Prediction(option_rational("--prediction", a.prediction))});
    labels.push_back(a.instance);
  } else {
    if (a.seeds == 0) throw InputError("give --instance or a positive --seeds count");
    if (a.n < 2) throw InputError("--n must be at least 2");
    for (std::uint64_t s = a.first_seed; s < a.first_seed + a.seeds; ++s) {
      cases.push_back(random_audit_case(s, a.n));
      labels.push_back(s);
    }
  }

  std::vector<std::vector<DeviationReport>> reports(cases.size());
  parallel_tasks(cases.size(), g.workers, [&](std::size_t k) {
    AuditOptions o = opts;
    o.seed = k;
    reports[k] = audit_instance(cases[k].instance, cases[k].params, cases[k].prediction, o);
  });

  Json witnesses = Json::array();
  Rational max_gain = 0;
  std::size_t bidders = 0;
  for (std::size_t k = 0; k < cases.size(); ++k)
    for (const auto& r : reports[k]) {
      ++bidders;
      max_gain = std::max(max_gain, r.gain);
      if (sgn(r.gain) > 0) {
        Json w = deviation_json(r);
        w["case"] = labels[k];
        w["instance"] = instance_to_json(cases[k].instance);
        w["alpha"] = to_string(cases[k].params.alpha);
        w["gamma"] = to_string(cases[k].params.gamma);
        w["prediction"] = to_string(cases[k].prediction.value);
        witnesses.push_back(std::move(w));
      }
    }
  Json j;
  j["cases"] = cases.size();
  j["bidders"] = bidders;
  j["max_gain"] = to_string(max_gain);
  j["positive_gains"] = witnesses.size();
  j["witnesses"] = witnesses;
  if (cases.size() == 1) {
    Json per = Json::array();
    for (const auto& r : reports[0]) per.push_back(deviation_json(r));
    j["bidder_reports"] = per;
  }
  std::cout << j.dump(2) << '\n';
  return witnesses.empty() ? kOk : kViolation;
}

// ---- lp ----

struct LpArgs {
  std::size_t n = 0;
  bool unclamped = false;
  bool primal = false;
};

int cmd_lp(const LpArgs& a) {
  const DualCertificate c = explicit_dual(a.n, !a.unclamped);
  Json y = Json::array();
  for (const auto& v : c.y) y.push_back(to_string(v));
  Json j;
  j["n"] = c.n;
  j["y"] = y;
  j["objective"] = to_string(c.objective);
  j["bound"] = to_string(lp_bound(a.n));
  j["feasible"] = c.feasible;
  j["clamped"] = c.clamped;
  if (c.violated) j["violated_constraint"] = *c.violated;
  bool ok = c.feasible && c.objective <= lp_bound(a.n);
  if (a.primal) {
    const LPSolution s = solve_primal(a.n);
    Json x = Json::array();
    for (const auto& v : s.x) x.push_back(to_string(v));
    j["primal"] = {{"x", x},
                   {"objective", to_string(s.objective)},
                   {"threshold", s.threshold},
                   {"certified_optimal", s.certified_optimal},
                   {"below_certificate", s.objective <= c.objective}};
    ok = ok && s.certified_optimal && (!c.feasible || s.objective <= c.objective);
  }
  std::cout << j.dump(2) << '\n';
  return ok ? kOk : kViolation;
}

// ---- family ----

struct FamilyArgs {
  bool hardness = false;
  bool interchange = false;
  bool dominance = false;
  bool optimal = false;
  std::string score;
  std::size_t n = 0;
  std::string alpha = "0";
  bool csv = false;
};

int cmd_family(const Global& g, const FamilyArgs& a) {
  const int modes = int(a.hardness) + int(a.interchange) + int(a.dominance) + int(a.optimal) + int(!a.score.empty());
  if (modes != 1) throw InputError("choose exactly one of --hardness, --interchange, --dominance, --optimal, --score");
  if (!a.score.empty()) {
    const PMAuction auction = parse_pm_auction(a.score);
    check_cap(g, auction.rules.size(), "family scoring");
    Json j = score_json(score(auction));
    j["rules"] = family_string(auction);
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  if (a.n < 2) throw InputError("--n must be at least 2");
  check_cap(g, a.n, "family enumeration");
  const Rational alpha = option_rational("--alpha", a.alpha);

  if (a.optimal) {
    const OptimalThresholds o = optimal_thresholds(a.n, alpha);
    Json j{{"n", a.n},
           {"alpha", to_string(alpha)},
           {"i1", o.i1},
           {"i2", o.i2},
           {"robustness", to_string(o.robustness)},
           {"expected_i1", o.expected_i1},
           {"expected_i2", o.expected_i2},
           {"bound", to_string(o.expected_robustness)},
           {"robustness_at_expected", to_string(o.robustness_at_expected)},
           {"holds", o.holds}};
    std::cout << j.dump(2) << '\n';
    return o.holds ? kOk : kViolation;
  }

  if (a.interchange) {
    const InterchangeReport r = verify_interchange(a.n, g.workers);
    Json viol = Json::array();
    for (const auto& v : r.violations)
      viol.push_back({{"rules", family_string(v.auction)},
                      {"position", v.position},
                      {"before", score_json(v.before)},
                      {"after", score_json(v.after)}});
    Json flags = Json::array();
    for (const auto& f : r.scenario_flags)
      flags.push_back({{"rules", family_string(f.auction)}, {"position", f.position}, {"scenario", to_string(f.scenario)}});
    Json j{{"n", r.n}, {"auctions", r.auctions}, {"swaps_checked", r.swaps_checked},
           {"violations", viol}, {"scenario_flags", flags}, {"holds", r.holds()}};
    std::cout << j.dump(2) << '\n';
    return r.holds() ? kOk : kViolation;
  }

  if (a.dominance) {
    const DominanceReport r = verify_pa_dominance(a.n, g.workers);
    auto row = [](const DominanceViolation& v) {
      return Json{{"rules", to_string(v.auction)}, {"image", family_string(v.image)},
                  {"pa", score_json(v.pa_score)}, {"pm", score_json(v.pm_score)}};
    };
    Json viol = Json::array();
    for (const auto& v : r.violations) viol.push_back(row(v));
    Json flags = Json::array();
    for (const auto& v : r.scenario_flags) flags.push_back(row(v));
    Json j{{"n", r.n}, {"auctions", r.auctions}, {"violations", viol}, {"scenario_flags", flags}, {"holds", r.holds()}};
    std::cout << j.dump(2) << '\n';
    return r.holds() ? kOk : kViolation;
  }

  const HardnessCertificate h = hardness_scan(a.n, alpha, g.workers);
  if (a.csv) {
    std::cout << "consistency,max_robustness\n";
    for (const auto& p : h.frontier) std::cout << to_string(p.consistency) << ',' << to_string(p.max_robustness) << '\n';
    return h.holds() ? kOk : kViolation;
  }
  Json auctions = Json::array();
  for (const auto& e : h.auctions)
    auctions.push_back({{"rules", family_string(e.auction)},
                        {"consistency", to_string(e.score.consistency())},
                        {"robustness", to_string(e.score.robustness())}});
  Json frontier = Json::array();
  for (const auto& p : h.frontier)
    frontier.push_back({{"consistency", to_string(p.consistency)}, {"max_robustness", to_string(p.max_robustness)}});
  Json viol = Json::array();
  for (const auto& v : h.violations) viol.push_back(family_string(v));
  Json j{{"n", h.n},
         {"alpha", to_string(h.alpha)},
         {"bound", to_string(h.bound)},
         {"consistent_auctions", h.consistent},
         {"best_robustness", to_string(h.best_robustness)},
         {"violations", viol},
         {"holds", h.holds()},
         {"frontier", frontier},
         {"auctions", auctions}};
  std::cout << j.dump(2) << '\n';
  return h.holds() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"auctionlab: exact experiments for online posted-price auctions with predictions"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--cap", g.cap, "largest n for factorial or exponential enumeration")
      ->envname("AUCTIONLAB_CAP")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", g.workers, "worker threads; output does not depend on it")->check(CLI::PositiveNumber);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "run the auction on an instance file");
  run_cmd->add_option("--instance", run_args.instance, "instance JSON file")->required();
  run_cmd->add_option("--alpha", run_args.alpha, "consistency parameter in [0,1]")->required();
  run_cmd->add_option("--gamma", run_args.gamma, "error tolerance in (0,1]");
  run_cmd->add_option("--prediction", run_args.prediction, "predicted highest value")->required();
  run_cmd->add_flag("--trace", run_args.trace, "emit JSON lines: outcome, then one event per line");
  run_cmd->add_flag("--rerun-rescale", run_args.rerun_rescale, "payment rerun uses milestones for n-1 bidders");
  run_cmd->add_flag("--strict-wn", run_args.strict_wn, "reject alpha outside W_n");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "expected revenue over random matchings");
  eval_cmd->add_flag("--exact", eval_args.exact, "enumerate all matchings (default)");
  eval_cmd->add_flag("--mc", eval_args.mc, "Monte Carlo estimate");
  eval_cmd->add_option("--instance", eval_args.instance, "instance JSON file (values and intervals)");
  eval_cmd->add_option("--family", eval_args.family, "built-in instance family: disjoint-canonical");
  eval_cmd->add_option("--n", eval_args.n, "size for --family");
  eval_cmd->add_option("--alpha", eval_args.alpha, "consistency parameter")->required();
  eval_cmd->add_option("--gamma", eval_args.gamma, "error tolerance");
  eval_cmd->add_option("--prediction", eval_args.prediction, "prediction for --instance");
  eval_cmd->add_option("--trials", eval_args.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eval_args.seed, "Monte Carlo seed");
  eval_cmd->add_flag("--rerun-rescale", eval_args.rerun_rescale, "payment rerun uses milestones for n-1 bidders");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "consistency/robustness trade-off as CSV");
  sweep_cmd->add_option("--n", sweep_args.n, "number of bidders");
  sweep_cmd->add_option("--alphas", sweep_args.alphas, "alpha grid (default 0,1/5,...,1)")->delimiter(',');
  sweep_cmd->add_flag("--decimal", sweep_args.decimal, "decimal cells instead of p/q");

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit", "search for profitable misreports");
  audit_cmd->add_option("--instance", audit_args.instance, "instance JSON file");
  audit_cmd->add_option("--alpha", audit_args.alpha, "consistency parameter for --instance");
  audit_cmd->add_option("--gamma", audit_args.gamma, "error tolerance for --instance");
  audit_cmd->add_option("--prediction", audit_args.prediction, "prediction for --instance");
  audit_cmd->add_option("--seeds", audit_args.seeds, "number of random instances");
  audit_cmd->add_option("--first-seed", audit_args.first_seed, "seed of the first random instance");
  audit_cmd->add_option("--n", audit_args.n, "largest random instance size");
  audit_cmd->add_option("--restriction", audit_args.restriction, "none, value or time");
  audit_cmd->add_flag("--adversarial", audit_args.adversarial, "also sample misreports of the other bidders");
  audit_cmd->add_option("--profiles", audit_args.profiles, "sampled profiles per bidder with --adversarial");
  audit_cmd->add_option("--payment", audit_args.payment, "standard, no-rerun or no-tiebreak-clause");
  audit_cmd->add_flag("--rerun-rescale", audit_args.rerun_rescale, "payment rerun uses milestones for n-1 bidders");

  LpArgs lp_args;
  auto* lp_cmd = app.add_subcommand("lp", "dual certificate for the stopping LP");
  lp_cmd->add_option("--n", lp_args.n, "LP size")->required();
  lp_cmd->add_flag("--unclamped", lp_args.unclamped, "do not clamp negative entries to 0");
  lp_cmd->add_flag("--primal", lp_args.primal, "also solve the primal");

  FamilyArgs family_args;
  auto* family_cmd = app.add_subcommand("family", "brute force over per-step posted-price auctions");
  family_cmd->add_flag("--hardness", family_args.hardness, "hardness certificate over all PM auctions");
  family_cmd->add_flag("--interchange", family_args.interchange, "check every interchange");
  family_cmd->add_flag("--dominance", family_args.dominance, "check every PA auction against its PM image");
  family_cmd->add_flag("--optimal", family_args.optimal, "best three-phase thresholds");
  family_cmd->add_option("--score", family_args.score, "score one PM auction, e.g. N,P,P,M");
  family_cmd->add_option("--n", family_args.n, "number of steps");
  family_cmd->add_option("--alpha", family_args.alpha, "consistency requirement");
  family_cmd->add_flag("--csv", family_args.csv, "with --hardness: frontier as CSV");

  for (auto* sub : {run_cmd, eval_cmd, sweep_cmd, audit_cmd, lp_cmd, family_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*run_cmd) return cmd_run(run_args);
    if (*eval_cmd) return cmd_eval(g, eval_args);
    if (*sweep_cmd) return cmd_sweep(g, sweep_args);
    if (*audit_cmd) return cmd_audit(g, audit_args);
    if (*lp_cmd) return cmd_lp(lp_args);
    if (*family_cmd) return cmd_family(g, family_args);
  } catch (const EnumerationTooLarge& e) {
    std::cerr << "error: " << e.what() << (*eval_cmd ? "; use --mc for an estimate\n" : "\n");
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
