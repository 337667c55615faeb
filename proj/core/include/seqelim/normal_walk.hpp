#pragma once

namespace seqelim {

// Unit-variance Normal random walk S_m with per-step drift mu > 0, stopped at
// tau = min{m : |S_m| > b}.
struct NormalWalkParams {
  double drift = 0.0;
  double boundary = 0.0;
};

// Walk of differences between two arms with reward variance sigma^2: steps
// have mean mu and variance 2 sigma^2, the boundary is c. Dividing by
// sigma sqrt(2) maps it to the unit walk with b = c / (sigma sqrt 2) and
// drift mu / (sigma sqrt 2).
struct ScaledNormalWalk {
  double mu = 0.0;
  double c = 0.0;
  double sigma = 1.0;

  NormalWalkParams to_unit() const;
  // mu c / sigma^2, which equals 2 drift boundary of the unit walk.
  double exponent() const noexcept { return mu * c / (sigma * sigma); }
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

// Martingale bounds on P(S_tau > b):
//   lower = (e^{2 mu b} - 1) / (e^{2 mu b} - R(-mu) e^{-2 mu b})
//   upper = (e^{2 mu b} R(mu) - 1) / (e^{2 mu b} R(mu) - e^{-2 mu b})
Interval normal_crossing_prob_bounds(const NormalWalkParams& w);

// Wald bounds on E[tau]:
//   upper = P_up (2b/mu + phi(mu) / (mu Phi(mu)) + 1) - b/mu
//   lower = P_lo (2b/mu - Psi(mu)) - b/mu + Psi(mu),
//   Psi(mu) = 1 - phi(mu) / (mu (1 - Phi(mu)))
// The lower bound is floored at 1, the smallest possible stopping time.
Interval normal_expected_tau_bounds(const NormalWalkParams& w);

// "Neglecting the excess": S_tau is taken to be exactly +b or -b.
// p = (e^{2 mu b} - 1) / (e^{2 mu b} - e^{-2 mu b}) = 1 / (1 + e^{-2 mu b})
double normal_crossing_prob_approx(const NormalWalkParams& w);
// E[tau] = 2bp/mu - b/mu = (b/mu) tanh(mu b)
double normal_expected_tau_approx(const NormalWalkParams& w);

struct ScaledWalkQuantities {
  Interval crossing_prob;
  double crossing_prob_approx = 0.0;
  double tau_approx = 0.0;
  double exponent = 0.0;
};

// The unit-walk quantities at b = c/(sigma sqrt 2), drift mu/(sigma sqrt 2).
ScaledWalkQuantities normal_scaled_quantities(double mu, double c, double sigma);

// Approximate plays of an arm with mean gap mu to the best arm under the
// Normal VT rule with threshold c:
//   M(mu) = 2c (e^{mu c/sigma^2} - 1) / (mu (e^{mu c/sigma^2} - e^{-mu c/sigma^2})) - c/mu
// Throws DomainError for mu <= 0.
double vt_normal_M(double mu, double c, double sigma);

// Lower and upper crossing-probability bounds of the scaled walk, the LB/UB
// integrands of the Normal VT correct-choice bounds.
double normal_game_lower_bound(double mu, double c, double sigma);
double normal_game_upper_bound(double mu, double c, double sigma);

}  // namespace seqelim
