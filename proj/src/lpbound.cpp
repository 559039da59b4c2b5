#include "auctionlab/lpbound.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace auctionlab {

StoppingRule::StoppingRule(std::vector<Rational> s) : probs(std::move(s)) {
  for (auto& p : probs) {
    p.canonicalize();
    if (sgn(p) < 0 || p > 1) throw InputError("stopping probabilities must lie in [0,1], got " + to_string(p));
  }
}

Rational lp_coefficient(std::size_t i, std::size_t n) {
  Rational c(static_cast<unsigned long>((i - 1) * i), static_cast<unsigned long>((n - 1) * n));
  c.canonicalize();
  return c;
}

Rational lp_bound(std::size_t n) { return Rational(1, 4) + Rational(2, static_cast<unsigned long>(n)); }

bool primal_feasible(const std::vector<Rational>& x) {
  Rational prefix(0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    const Rational& xi = x[i - 1];
    if (sgn(xi) < 0) return false;
    if (xi * static_cast<unsigned long>(i) + prefix > 1) return false;
    prefix += xi;
  }
  return true;
}

Rational primal_objective(const std::vector<Rational>& x) {
  Rational total(0);
  const std::size_t n = x.size();
  for (std::size_t i = 2; i <= n; ++i) total += lp_coefficient(i, n) * x[i - 1];
  return total;
}

std::optional<std::size_t> dual_violation(const std::vector<Rational>& y) {
  const std::size_t n = y.size();
  if (n < 2) return std::nullopt;
  // Scale to integers: Y_i = y_i * D with D a common denominator including n(n-1).
  mpz_class d(static_cast<unsigned long>(n * (n - 1)));
  for (const auto& v : y) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
  std::vector<mpz_class> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = y[i].get_num() * (d / y[i].get_den());
  const mpz_class unit = d / static_cast<unsigned long>(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(scaled[i]) < 0) return i + 1;
  mpz_class suffix(0);
  for (std::size_t i = n; i >= 1; --i) {
    const mpz_class lhs = scaled[i - 1] * static_cast<unsigned long>(i) + suffix;
    const mpz_class rhs = unit * static_cast<unsigned long>((i - 1) * i);
    if (lhs < rhs) return i;
    suffix += scaled[i - 1];
  }
  return std::nullopt;
}

DualCertificate explicit_dual(std::size_t n, bool clamped) {
  if (n < 2) throw InputError("the dual certificate needs n >= 2");
  DualCertificate c;
  c.n = n;
  c.clamped = clamped;
  c.y.assign(n, Rational(0));
  const std::size_t start = (n + 1) / 2;
  const long den = static_cast<long>(n * (n - 1));
  for (std::size_t i = start; i <= n; ++i) {
    long num = 2 * static_cast<long>(i) - static_cast<long>(n) - 1;
    if (clamped) num = std::max(num, 0L);
    Rational v(num, den);
    v.canonicalize();
    c.objective += v;
    c.y[i - 1] = std::move(v);
  }
  c.violated = dual_violation(c.y);
  c.feasible = !c.violated;
  if (clamped && !c.feasible)
    throw CertificateError("clamped dual certificate violates constraint " + std::to_string(*c.violated) +
                               " for n=" + std::to_string(n),
                           *c.violated);
  return c;
}

Rational threshold_objective(std::size_t n, std::size_t k) {
  if (k <= 1) return Rational(0);
  Rational r(static_cast<unsigned long>((n - k + 1) * (k - 1)), static_cast<unsigned long>(n * (n - 1)));
  r.canonicalize();
  return r;
}

namespace {

std::vector<Rational> threshold_rule_x(std::size_t n, std::size_t k) {
  std::vector<Rational> x(n, Rational(0));
  Rational remaining(1);
  for (std::size_t i = k; i <= n; ++i) {
    x[i - 1] = remaining / static_cast<unsigned long>(i);
    remaining -= x[i - 1];
  }
  return x;
}

// Dual tight on every step >= k and zero before it.
std::vector<Rational> slack_dual(std::size_t n, std::size_t k) {
  std::vector<Rational> y(n, Rational(0));
  Rational suffix(0);
  for (std::size_t i = n; i >= k && i >= 1; --i) {
    y[i - 1] = (lp_coefficient(i, n) - suffix) / static_cast<unsigned long>(i);
    suffix += y[i - 1];
  }
  return y;
}

}  // namespace

LPSolution solve_primal(std::size_t n) {
  if (n < 2) throw InputError("the LP needs n >= 2");
  std::size_t best = 1;
  Rational best_obj = threshold_objective(n, 1);
  for (std::size_t k = 2; k <= n; ++k) {
    Rational o = threshold_objective(n, k);
    if (o > best_obj) {
      best_obj = o;
      best = k;
    }
  }
  LPSolution s;
  s.threshold = best;
  s.x = threshold_rule_x(n, best);
  s.objective = primal_objective(s.x);
  if (s.objective != best_obj || !primal_feasible(s.x))
    throw std::logic_error("threshold rule disagrees with its closed form at n=" + std::to_string(n));
  s.dual = slack_dual(n, best);
  const Rational dual_obj = std::accumulate(s.dual.begin(), s.dual.end(), Rational(0));
  s.certified_optimal = !dual_violation(s.dual) && dual_obj == s.objective;
  return s;
}

RuleStats rule_stats(const StoppingRule& rule, std::size_t n) {
  if (rule.probs.size() != n) throw InputError("stopping rule length differs from n");
  RuleStats st;
  st.x.assign(n, Rational(0));
  Rational survive(1);  // P(not stopped before step i)
  for (std::size_t i = 1; i <= n; ++i) {
    const Rational stop_here = rule.probs[i - 1] / static_cast<unsigned long>(i);  // record w.p. 1/i
    st.x[i - 1] = survive * stop_here;
    survive *= 1 - stop_here;
    if (n >= 2) st.success += st.x[i - 1] * lp_coefficient(i, n);
  }
  return st;
}

ConditionalCheck rank_rule_conditional_check(const StoppingRule& rule, std::size_t n) {
  if (rule.probs.size() != n) throw InputError("stopping rule length differs from n");
  if (n > 8) throw InputError("conditional check enumerates n! orders; n must be at most 8");
  // Per step i: weight of {record at i}, of {stop at i, record at i}, and the same restricted to
  // {max at i, second max before i}.
  std::vector<Rational> rec(n + 1, Rational(0)), stop_rec(n + 1, Rational(0));
  std::vector<Rational> top(n + 1, Rational(0)), stop_top(n + 1, Rational(0));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);  // n is the maximum, n-1 the second
  do {
    Rational survive(1);
    int running = 0;
    std::size_t second_pos = 0;
    for (std::size_t i = 1; i <= n; ++i)
      if (order[i - 1] == static_cast<int>(n) - 1) second_pos = i;
    for (std::size_t i = 1; i <= n; ++i) {
      const bool record = order[i - 1] > running;
      running = std::max(running, order[i - 1]);
      if (!record) continue;
      const Rational stop = survive * rule.probs[i - 1];
      rec[i] += 1;
      stop_rec[i] += stop;
      if (order[i - 1] == static_cast<int>(n) && second_pos < i) {
        top[i] += 1;
        stop_top[i] += stop;
      }
      survive *= 1 - rule.probs[i - 1];
    }
  } while (std::next_permutation(order.begin(), order.end()));

  ConditionalCheck out;
  for (std::size_t i = 2; i <= n; ++i) {
    if (sgn(top[i]) == 0 || sgn(rec[i]) == 0) continue;
    ConditionalSide side{i, stop_top[i] / top[i], stop_rec[i] / rec[i]};
    if (side.given_record_top_two != side.given_record) out.holds = false;
    out.steps.push_back(std::move(side));
  }
  return out;
}

}  // namespace auctionlab
