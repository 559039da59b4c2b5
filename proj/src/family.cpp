#include "auctionlab/family.hpp"

#include "auctionlab/core.hpp"
#include "auctionlab/enumerate.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace auctionlab {

namespace {

// One rule shape covers both families: a PM rule is the PA rule with j = 1, and the
// order statistic of an empty prefix is 0.
struct StepRule {
  PAKind kind;
  std::size_t j;
};

std::vector<StepRule> lower(const PMAuction& a) {
  std::vector<StepRule> out;
  for (PMRule r : a.rules) {
    switch (r) {
      case PMRule::never: out.push_back({PAKind::never, 0}); break;
      case PMRule::pred_or_max: out.push_back({PAKind::pred_or_jth, 1}); break;
      case PMRule::max_seen: out.push_back({PAKind::jth_seen, 1}); break;
    }
  }
  return out;
}

std::vector<StepRule> lower(const PAAuction& a) {
  a.validate();
  std::vector<StepRule> out;
  for (const auto& r : a.rules) out.push_back({r.kind, r.j});
  return out;
}

template <class T>
struct Sale {
  bool sold = false;
  std::size_t step = 0;
  T price{};
};

template <class T>
Sale<T> scan(const std::vector<StepRule>& rules, const std::vector<T>& ordering, const T& prediction) {
  std::vector<T> seen;  // descending
  seen.reserve(ordering.size());
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    const StepRule& r = rules[i];
    if (r.kind != PAKind::never) {
      T price = r.j <= seen.size() ? seen[r.j - 1] : T(0);
      if (r.kind == PAKind::pred_or_jth && prediction > price) price = prediction;
      if (ordering[i] >= price) return {true, i + 1, price};
    }
    seen.insert(std::upper_bound(seen.begin(), seen.end(), ordering[i], std::greater<T>()), ordering[i]);
  }
  return {};
}

Rational ratio(std::uint64_t num, std::uint64_t den) {
  Rational r{mpz_class(std::to_string(num)), mpz_class(std::to_string(den))};
  r.canonicalize();
  return r;
}

FamilySale to_public(const Sale<Rational>& s) { return {s.sold, s.step, s.price}; }

void check_length(std::size_t rules, std::size_t ordering) {
  if (rules != ordering)
    throw InputError("auction has " + std::to_string(rules) + " steps but ordering has " + std::to_string(ordering));
}

// Integer scaling of the scored instances: x4 makes 1/2, 1/4, 3/4 integral.
constexpr long kTop = 4;
constexpr long kSecond = 2;
long scaled_prediction(Scenario s) {
  switch (s) {
    case Scenario::over: return 8;
    case Scenario::under: return 1;
    case Scenario::intermediate: return 3;
  }
  return 0;
}

FamilyScore score_rules(const std::vector<StepRule>& rules) {
  const std::size_t n = rules.size();
  if (n < 2 || n > 20) throw InputError("family scoring needs 2 <= n <= 20, got n = " + std::to_string(n));
  FamilyScore sc;
  sc.n_factorial = 1;
  for (std::size_t k = 2; k <= n; ++k) sc.n_factorial *= k;
  const std::uint64_t w1 = sc.n_factorial / n;        // (n-1)!
  const std::uint64_t w2 = w1 / (n - 1);              // (n-2)!
  std::vector<long> ord(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    ord[p] = 1;
    auto s = scan<long>(rules, ord, 1L);
    if (s.sold && s.price >= 1) sc.c_count += w1;
    ord[p] = 0;
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      ord[p] = kTop;
      ord[q] = kSecond;
      for (std::size_t k = 0; k < kScenarios.size(); ++k) {
        auto s = scan<long>(rules, ord, scaled_prediction(kScenarios[k]));
        if (s.sold && s.price >= kSecond) sc.r_counts[k] += w2;
      }
      ord[p] = 0;
      ord[q] = 0;
    }
  return sc;
}

std::size_t pm_index(const PMAuction& a) {
  std::size_t idx = 0;
  for (PMRule r : a.rules) idx = idx * 3 + static_cast<std::size_t>(r);
  return idx;
}

void check_scan_size(std::size_t n) {
  if (n < 2 || n > 8) throw InputError("auction enumeration needs 2 <= n <= 8, got n = " + std::to_string(n));
}

void require_wn(const Rational& alpha, std::size_t n) {
  if (!in_wn(alpha, n)) throw InputError("alpha " + to_string(alpha) + " is not in W_" + std::to_string(n));
}

}  // namespace

void PAAuction::validate() const {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i];
    if (r.kind == PAKind::never) continue;
    if (r.j < 1 || r.j > i)
      throw InputError("step " + std::to_string(i + 1) + ": order statistic " + std::to_string(r.j) +
                       " outside [1, " + std::to_string(i) + "]");
  }
}

std::string to_string(PMRule r) {
  switch (r) {
    case PMRule::never: return "N";
    case PMRule::pred_or_max: return "P";
    case PMRule::max_seen: return "M";
  }
  return "?";
}

std::string to_string(const PARule& r) {
  switch (r.kind) {
    case PAKind::never: return "N";
    case PAKind::pred_or_jth: return "P" + std::to_string(r.j);
    case PAKind::jth_seen: return "M" + std::to_string(r.j);
  }
  return "?";
}

template <class A>
static std::string join_rules(const A& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    if (i) out += ',';
    out += to_string(a.rules[i]);
  }
  return out;
}

std::string to_string(const PMAuction& a) { return join_rules(a); }
std::string to_string(const PAAuction& a) { return join_rules(a); }

PMAuction parse_pm_auction(const std::string& text) {
  PMAuction a;
  for (char c : text) {
    switch (c) {
      case 'N': a.rules.push_back(PMRule::never); break;
      case 'P': a.rules.push_back(PMRule::pred_or_max); break;
      case 'M': a.rules.push_back(PMRule::max_seen); break;
      case ',': case ' ': break;
      default: throw InputError(std::string("unknown rule letter '") + c + "' (expected N, P or M)");
    }
  }
  if (a.rules.empty()) throw InputError("empty auction");
  return a;
}

FamilySale pm_run(const PMAuction& auction, const std::vector<Rational>& ordering, const Rational& prediction) {
  check_length(auction.rules.size(), ordering.size());
  std::vector<Rational> ord;
  for (const auto& v : ordering) ord.push_back(canonical(v));
  return to_public(scan<Rational>(lower(auction), ord, canonical(prediction)));
}

FamilySale pa_run(const PAAuction& auction, const std::vector<Rational>& ordering, const Rational& prediction) {
  check_length(auction.rules.size(), ordering.size());
  std::vector<Rational> ord;
  for (const auto& v : ordering) ord.push_back(canonical(v));
  return to_public(scan<Rational>(lower(auction), ord, canonical(prediction)));
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::over: return "over";
    case Scenario::under: return "under";
    case Scenario::intermediate: return "intermediate";
  }
  return "?";
}

Rational scenario_prediction(Scenario s) {
  Rational r(scaled_prediction(s), kTop);
  r.canonicalize();
  return r;
}

std::uint64_t FamilyScore::min_r() const { return *std::min_element(r_counts.begin(), r_counts.end()); }

Rational FamilyScore::consistency() const { return ratio(c_count, n_factorial); }
Rational FamilyScore::robustness() const { return ratio(min_r(), n_factorial); }
Rational FamilyScore::robustness(Scenario s) const {
  return ratio(r_counts[static_cast<std::size_t>(s)], n_factorial);
}

FamilyScore score(const PMAuction& auction) { return score_rules(lower(auction)); }
FamilyScore score(const PAAuction& auction) { return score_rules(lower(auction)); }

PMAuction pa_to_pm(const PAAuction& auction) {
  auction.validate();
  PMAuction out;
  for (const auto& r : auction.rules) {
    switch (r.kind) {
      case PAKind::never: out.rules.push_back(PMRule::never); break;
      case PAKind::pred_or_jth: out.rules.push_back(PMRule::pred_or_max); break;
      case PAKind::jth_seen: out.rules.push_back(PMRule::max_seen); break;
    }
  }
  return out;
}

bool is_inversion(PMRule first, PMRule second) { return first > second; }

PMAuction interchange(const PMAuction& auction, std::size_t i) {
  if (i < 1 || i + 1 > auction.rules.size())
    throw InputError("interchange position " + std::to_string(i) + " outside [1, " +
                     std::to_string(auction.rules.size()) + ")");
  if (!is_inversion(auction.rules[i - 1], auction.rules[i]))
    throw InputError("steps " + std::to_string(i) + "," + std::to_string(i + 1) + " (" +
                     to_string(auction.rules[i - 1]) + "," + to_string(auction.rules[i]) + ") are not an inversion");
  PMAuction out = auction;
  std::swap(out.rules[i - 1], out.rules[i]);
  return out;
}

PMAuction three_phase_pm(std::size_t n, std::size_t i1, std::size_t i2) {
  if (i1 > i2 || i2 > n) throw InputError("three-phase thresholds need 0 <= i1 <= i2 <= n");
  PMAuction a;
  for (std::size_t i = 1; i <= n; ++i)
    a.rules.push_back(i <= i1 ? PMRule::never : i <= i2 ? PMRule::pred_or_max : PMRule::max_seen);
  return a;
}

std::vector<PMAuction> all_pm_auctions(std::size_t n) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  std::vector<PMAuction> out(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    out[idx].rules.resize(n);
    std::size_t x = idx;
    for (std::size_t i = n; i-- > 0;) {
      out[idx].rules[i] = static_cast<PMRule>(x % 3);
      x /= 3;
    }
  }
  return out;
}

std::vector<PAAuction> all_pa_auctions(std::size_t n) {
  std::vector<PAAuction> out{PAAuction{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<PARule> options{{PAKind::never, 0}};
    for (std::size_t j = 1; j <= i; ++j) options.push_back({PAKind::pred_or_jth, j});
    for (std::size_t j = 1; j <= i; ++j) options.push_back({PAKind::jth_seen, j});
    std::vector<PAAuction> next;
    next.reserve(out.size() * options.size());
    for (const auto& a : out)
      for (const auto& r : options) {
        PAAuction b = a;
        b.rules.push_back(r);
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<FamilyScore> score_all(const std::vector<PMAuction>& auctions, unsigned workers) {
  std::vector<FamilyScore> out(auctions.size());
  parallel_tasks(auctions.size(), workers, [&](std::size_t k) { out[k] = score(auctions[k]); });
  return out;
}

InterchangeReport verify_interchange(std::size_t n, unsigned workers) {
  check_scan_size(n);
  const auto auctions = all_pm_auctions(n);
  const auto scores = score_all(auctions, workers);
  InterchangeReport rep;
  rep.n = n;
  rep.auctions = auctions.size();
  for (std::size_t k = 0; k < auctions.size(); ++k) {
    const auto& a = auctions[k];
    for (std::size_t i = 1; i < n; ++i) {
      if (!is_inversion(a.rules[i - 1], a.rules[i])) continue;
      ++rep.swaps_checked;
      const PMAuction b = interchange(a, i);
      const FamilyScore& before = scores[k];
      const FamilyScore& after = scores[pm_index(b)];
      if (after.c_count < before.c_count || after.min_r() < before.min_r())
        rep.violations.push_back({a, i, before, after});
      for (std::size_t s = 0; s < kScenarios.size(); ++s)
        if (after.r_counts[s] < before.r_counts[s]) rep.scenario_flags.push_back({a, i, kScenarios[s]});
    }
  }
  return rep;
}

DominanceReport verify_pa_dominance(std::size_t n, unsigned workers) {
  check_scan_size(n);
  const auto auctions = all_pa_auctions(n);
  std::vector<FamilyScore> pa_scores(auctions.size());
  parallel_tasks(auctions.size(), workers, [&](std::size_t k) { pa_scores[k] = score(auctions[k]); });
  const auto pm_scores = score_all(all_pm_auctions(n), workers);
  DominanceReport rep;
  rep.n = n;
  rep.auctions = auctions.size();
  for (std::size_t k = 0; k < auctions.size(); ++k) {
    const PMAuction image = pa_to_pm(auctions[k]);
    const FamilyScore& pa = pa_scores[k];
    const FamilyScore& pm = pm_scores[pm_index(image)];
    DominanceViolation row{auctions[k], image, pa, pm};
    if (pm.c_count < pa.c_count || pm.min_r() < pa.min_r()) rep.violations.push_back(row);
    for (std::size_t s = 0; s < kScenarios.size(); ++s)
      if (pm.r_counts[s] < pa.r_counts[s]) {
        rep.scenario_flags.push_back(row);
        break;
      }
  }
  return rep;
}

Rational hardness_bound(std::size_t n, const Rational& alpha) {
  if (n < 2) throw InputError("hardness bound needs n >= 2");
  const Rational a = canonical(alpha);
  Rational scale(static_cast<unsigned long>(n), static_cast<unsigned long>(n - 1));
  return canonical(scale * (1 - a * a) / 4);
}

OptimalThresholds optimal_thresholds(std::size_t n, const Rational& raw_alpha) {
  const Rational alpha = canonical(raw_alpha);
  require_wn(alpha, n);
  if (n < 2) throw InputError("optimal thresholds need n >= 2");
  OptimalThresholds out;
  bool found = false;
  for (std::size_t i1 = 0; i1 <= n; ++i1)
    for (std::size_t i2 = i1; i2 <= n; ++i2) {
      if (Rational(static_cast<unsigned long>(i2 - i1)) < alpha * n) continue;
      const Rational r = score(three_phase_pm(n, i1, i2)).robustness();
      if (!found || r > out.robustness) {
        found = true;
        out.i1 = i1;
        out.i2 = i2;
        out.robustness = r;
      }
    }
  const Rational e1 = canonical((1 - alpha) * n / 2);
  const Rational e2 = canonical((1 + alpha) * n / 2);
  out.expected_i1 = e1.get_num().get_ui();
  out.expected_i2 = e2.get_num().get_ui();
  out.expected_robustness = hardness_bound(n, alpha);
  out.robustness_at_expected = score(three_phase_pm(n, out.expected_i1, out.expected_i2)).robustness();
  out.holds = out.robustness == out.expected_robustness && out.robustness_at_expected == out.robustness;
  return out;
}

HardnessCertificate hardness_scan(std::size_t n, const Rational& raw_alpha, unsigned workers) {
  const Rational alpha = canonical(raw_alpha);
  check_scan_size(n);
  require_wn(alpha, n);
  HardnessCertificate cert;
  cert.n = n;
  cert.alpha = alpha;
  cert.bound = hardness_bound(n, alpha);
  const auto auctions = all_pm_auctions(n);
  const auto scores = score_all(auctions, workers);
  std::map<std::uint64_t, std::uint64_t> best_at;  // c_count -> max min_r at exactly that c_count
  for (std::size_t k = 0; k < auctions.size(); ++k) {
    const FamilyScore& s = scores[k];
    cert.auctions.push_back({auctions[k], s});
    auto [it, inserted] = best_at.emplace(s.c_count, s.min_r());
    if (!inserted) it->second = std::max(it->second, s.min_r());
    if (s.consistency() < alpha) continue;
    ++cert.consistent;
    cert.best_robustness = std::max(cert.best_robustness, s.robustness());
    if (s.robustness() > cert.bound) cert.violations.push_back(auctions[k]);
  }
  std::uint64_t running = 0;
  std::vector<FrontierPoint> rev;
  for (auto it = best_at.rbegin(); it != best_at.rend(); ++it) {
    running = std::max(running, it->second);
    const std::uint64_t nf = scores.front().n_factorial;
    rev.push_back({ratio(it->first, nf), ratio(running, nf)});
  }
  cert.frontier.assign(rev.rbegin(), rev.rend());
  return cert;
}

}  // namespace auctionlab
