#pragma once

namespace seqelim {

// Pairwise gambler's-ruin game between two Bernoulli arms sampled once per
// round: the arm with mean x wins when it is k successes ahead of the arm
// with mean y. Per decisive round x wins with probability
// p = x(1-y) / (x(1-y) + y(1-x)); r = (1-p)/p = y(1-x) / (x(1-y)).
struct RuinGameParams {
  double x = 0.0;
  double y = 0.0;
  int k = 1;
};

// Odds ratio r of the per-round loss/win probabilities.
double ruin_odds_ratio(double x, double y);

// P(arm x wins) = 1 / (1 + r^k). Symmetric games (x == y) give exactly 1/2.
// Throws DomainError if x or y leave (0, 1) or k < 1.
double ruin_win_prob(const RuinGameParams& g);

// Mean number of rounds before the game ends, k(1 - r^k) / ((1 + r^k)(x - y)).
// Requires x > y; throws SingularityError for x == y.
double ruin_expected_plays(const RuinGameParams& g);

// Two-arm play-the-winner game: every round each arm is played until it
// fails, S_m is the difference in accumulated successes, and the game stops
// at the first round with |S_m| >= k.
struct PwGameParams {
  double p1 = 0.0;
  double p2 = 0.0;
  int k = 1;

  double q1() const noexcept { return 1.0 - p1; }
  double q2() const noexcept { return 1.0 - p2; }
  // Mean successes per round, p_i / q_i.
  double m1() const noexcept { return p1 / (1.0 - p1); }
  double m2() const noexcept { return p2 / (1.0 - p2); }
};

// P(S_tau >= k), from the mean-one martingale (p2/p1)^{S_m}:
//   (1 - (p1/p2)^k (q2/q1)) / ((p2/p1)^k (q1/q2) - (p1/p2)^k (q2/q1)),
// evaluated as a logistic in log space. Throws SingularityError if p1 == p2.
double pw_win_prob(const PwGameParams& g);

// E[tau] by Wald: (p (m1 + m2 + 2k) - m2 - k) / (m1 - m2). Requires p1 > p2.
double pw_expected_rounds(const PwGameParams& g);

// E[T], plays when both arms always finish their round: E[tau] (m1 + m2 + 2).
double pw_expected_total_plays(const PwGameParams& g);

// Expected plays of each arm when the winner stops as soon as it is k ahead.
// Arm i would play E[tau]/q_i times; stopping on reaching the lead saves the
// memoryless remainder 1/q_i of the winner.
struct PwArmPlays {
  double first = 0.0;
  double second = 0.0;
  double total() const noexcept { return first + second; }
};
PwArmPlays pw_arm_plays(const PwGameParams& g);

// B(p1, p2): probability the arm with p1 is chosen (equals pw_win_prob).
double pw_choice_prob_B(double p1, double p2, int k);

// N(p1, p2) = E[T] - B/q1 - (1 - B)/q2, mean plays of both arms together.
double pw_mean_plays_N(double p1, double p2, int k);

}  // namespace seqelim
