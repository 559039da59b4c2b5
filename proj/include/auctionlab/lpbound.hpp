#pragma once

#include "auctionlab/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace auctionlab {

// s[i-1] = probability of stopping at step i when the i-th value is the running maximum.
struct StoppingRule {
  std::vector<Rational> probs;
  explicit StoppingRule(std::vector<Rational> s);
};

struct LPSolution {
  std::vector<Rational> x;
  Rational objective{0};
  std::size_t threshold = 0;        // first step with positive stopping mass
  std::vector<Rational> dual;       // complementary-slackness dual with the same objective
  bool certified_optimal = false;   // dual feasible and objectives equal
};

struct DualCertificate {
  std::size_t n = 0;
  std::vector<Rational> y;
  Rational objective{0};
  bool clamped = true;
  bool feasible = false;
  std::optional<std::size_t> violated;  // 1-based constraint index when infeasible
};

class CertificateError : public std::runtime_error {
 public:
  CertificateError(const std::string& what, std::size_t index) : std::runtime_error(what), index(index) {}
  std::size_t index;
};

// (i-1)i / ((n-1)n)
Rational lp_coefficient(std::size_t i, std::size_t n);
Rational lp_bound(std::size_t n);  // 1/4 + 2/n

// x >= 0 and i*x_i + sum_{j<i} x_j <= 1
bool primal_feasible(const std::vector<Rational>& x);
Rational primal_objective(const std::vector<Rational>& x);
// First violated dual constraint (1-based): y_i >= 0 and i*y_i + sum_{j>i} y_j >= coefficient_i.
std::optional<std::size_t> dual_violation(const std::vector<Rational>& y);

// y_i = max(0, (2i-n-1)/(n(n-1))) for i >= ceil(n/2), else 0. With clamped = false the negative entry
// at i = n/2 (even n) is kept and the result is reported infeasible instead of throwing.
DualCertificate explicit_dual(std::size_t n, bool clamped = true);

// Best threshold rule; its objective is max_k (n-k+1)(k-1)/(n(n-1)).
LPSolution solve_primal(std::size_t n);
Rational threshold_objective(std::size_t n, std::size_t k);

struct RuleStats {
  std::vector<Rational> x;  // P(stop at step i)
  Rational success{0};      // P(stop at the overall maximum with the second maximum already seen)
};

RuleStats rule_stats(const StoppingRule& rule, std::size_t n);

struct ConditionalSide {
  std::size_t step;
  Rational given_record_top_two;  // P(stop at i | record at i, max at i, second max before i)
  Rational given_record;          // P(stop at i | record at i)
};

struct ConditionalCheck {
  std::vector<ConditionalSide> steps;  // steps 2..n
  bool holds = true;
};

// Exact enumeration over all n! rank orders.
ConditionalCheck rank_rule_conditional_check(const StoppingRule& rule, std::size_t n);

}  // namespace auctionlab
