#include "seqelim/ruin.hpp"

#include <cmath>
#include <string>

#include "seqelim/errors.hpp"

namespace seqelim {

namespace {

void require_probability(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError(std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
}

void require_goal(int k) {
  if (k < 1) throw DomainError("goal k must be >= 1, got " + std::to_string(k));
}

double logistic(double t) {
  return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
}

double log_odds_ratio(double x, double y) {
  return std::log(y) + std::log1p(-x) - std::log(x) - std::log1p(-y);
}

void validate(const PwGameParams& g) {
  require_probability(g.p1, "p1");
  require_probability(g.p2, "p2");
  require_goal(g.k);
  if (g.p1 == g.p2) throw SingularityError("play-the-winner game is singular for p1 == p2");
}

}  // namespace

double ruin_odds_ratio(double x, double y) {
  require_probability(x, "x");
  require_probability(y, "y");
  return std::exp(log_odds_ratio(x, y));
}

double ruin_win_prob(const RuinGameParams& g) {
  require_probability(g.x, "x");
  require_probability(g.y, "y");
  require_goal(g.k);
  if (g.x == g.y) return 0.5;
  // 1 / (1 + r^k) = logistic(-k log r)
  return logistic(-g.k * log_odds_ratio(g.x, g.y));
}

double ruin_expected_plays(const RuinGameParams& g) {
  require_probability(g.x, "x");
  require_probability(g.y, "y");
  require_goal(g.k);
  if (g.x == g.y) throw SingularityError("ruin_expected_plays is 0/0 for x == y; simulate instead");
  if (g.x < g.y) throw DomainError("ruin_expected_plays requires x > y");
  // (1 - r^k) / (1 + r^k) = tanh(-k log r / 2)
  const double half_log = -0.5 * g.k * log_odds_ratio(g.x, g.y);
  return g.k * std::tanh(half_log) / (g.x - g.y);
}

double pw_win_prob(const PwGameParams& g) {
  validate(g);
  // With A = (p1/p2)^k (q2/q1) the closed form reduces to A / (1 + A).
  const double log_a = g.k * (std::log(g.p1) - std::log(g.p2)) + std::log1p(-g.p2) - std::log1p(-g.p1);
  return logistic(log_a);
}

double pw_expected_rounds(const PwGameParams& g) {
  validate(g);
  if (g.p1 < g.p2) throw DomainError("pw_expected_rounds requires p1 > p2");
  const double p = pw_win_prob(g);
  const double m1 = g.m1();
  const double m2 = g.m2();
  return (p * (m1 + m2 + 2.0 * g.k) - m2 - g.k) / (m1 - m2);
}

double pw_expected_total_plays(const PwGameParams& g) {
  return pw_expected_rounds(g) * (g.m1() + g.m2() + 2.0);
}

PwArmPlays pw_arm_plays(const PwGameParams& g) {
  const double rounds = pw_expected_rounds(g);
  const double b = pw_win_prob(g);
  return {(rounds - b) / g.q1(), (rounds - (1.0 - b)) / g.q2()};
}

double pw_choice_prob_B(double p1, double p2, int k) {
  const PwGameParams g{p1, p2, k};
  validate(g);
  if (p1 < p2) throw DomainError("B(p1, p2) requires p1 > p2");
  return pw_win_prob(g);
}

double pw_mean_plays_N(double p1, double p2, int k) {
  const PwGameParams g{p1, p2, k};
  const double b = pw_choice_prob_B(p1, p2, k);
  return pw_expected_total_plays(g) - b / g.q1() - (1.0 - b) / g.q2();
}

}  // namespace seqelim
