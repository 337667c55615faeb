#include "seqelim/normal_walk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqelim/errors.hpp"
#include "seqelim/special_functions.hpp"

namespace seqelim {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

void validate(const NormalWalkParams& w) {
  if (!(w.drift > 0.0) || !std::isfinite(w.drift))
    throw DomainError("normal walk drift must be positive, got " + std::to_string(w.drift));
  if (!(w.boundary > 0.0) || !std::isfinite(w.boundary))
    throw DomainError("normal walk boundary must be positive, got " + std::to_string(w.boundary));
}

void validate_scaled(double mu, double c, double sigma) {
  if (!(mu > 0.0)) throw DomainError("mean gap mu must be positive, got " + std::to_string(mu));
  if (!(c > 0.0)) throw DomainError("threshold c must be positive, got " + std::to_string(c));
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive, got " + std::to_string(sigma));
}

double log_pdf(double a) { return -0.5 * a * a - kLogSqrt2Pi; }

// (1 - e^{-s}) / (1 - e^{-t}) for 0 < s < t, without cancellation.
double expm1_ratio(double s, double t) { return std::expm1(-s) / std::expm1(-t); }

double crossing_lower(double mu, double b) {
  const double z = 2.0 * mu * b;
  // divide through by e^z: (1 - e^{-z}) / (1 - R(-mu) e^{-2z})
  const double log_r = log_failure_rate_ratio(-mu);
  return expm1_ratio(z, 2.0 * z - log_r);
}

double crossing_upper(double mu, double b) {
  const double z = 2.0 * mu * b;
  const double log_r = log_failure_rate_ratio(mu);
  return expm1_ratio(z + log_r, 2.0 * z + log_r);
}

}  // namespace

NormalWalkParams ScaledNormalWalk::to_unit() const {
  validate_scaled(mu, c, sigma);
  const double scale = sigma * kSqrt2;
  return {mu / scale, c / scale};
}

Interval normal_crossing_prob_bounds(const NormalWalkParams& w) {
  validate(w);
  return {crossing_lower(w.drift, w.boundary), crossing_upper(w.drift, w.boundary)};
}

Interval normal_expected_tau_bounds(const NormalWalkParams& w) {
  validate(w);
  const double mu = w.drift;
  const double b = w.boundary;
  const double p_lo = crossing_lower(mu, b);
  const double p_up = crossing_upper(mu, b);
  // phi(mu)/Phi(mu) and phi(mu)/(1 - Phi(mu)) through logs to survive large mu.
  const double up_hazard = std::exp(log_pdf(mu) - log_std_normal_cdf(mu));
  const double down_hazard = std::exp(log_pdf(mu) - log_std_normal_cdf(-mu));
  const double psi = 1.0 - down_hazard / mu;
  const double upper = p_up * (2.0 * b / mu + up_hazard / mu + 1.0) - b / mu;
  // The Wald expression goes negative when mu b is small; tau >= 1 always.
  const double lower = std::max(1.0, p_lo * (2.0 * b / mu - psi) - b / mu + psi);
  return {lower, upper};
}

double normal_crossing_prob_approx(const NormalWalkParams& w) {
  validate(w);
  return 1.0 / (1.0 + std::exp(-2.0 * w.drift * w.boundary));
}

double normal_expected_tau_approx(const NormalWalkParams& w) {
  validate(w);
  return w.boundary / w.drift * std::tanh(w.drift * w.boundary);
}

ScaledWalkQuantities normal_scaled_quantities(double mu, double c, double sigma) {
  const ScaledNormalWalk scaled{mu, c, sigma};
  const NormalWalkParams unit = scaled.to_unit();
  ScaledWalkQuantities q;
  q.crossing_prob = normal_crossing_prob_bounds(unit);
  q.crossing_prob_approx = normal_crossing_prob_approx(unit);
  q.tau_approx = normal_expected_tau_approx(unit);
  q.exponent = scaled.exponent();
  return q;
}

double vt_normal_M(double mu, double c, double sigma) {
  validate_scaled(mu, c, sigma);
  // 2c(e^a - 1)/(mu(e^a - e^{-a})) - c/mu = (c/mu) tanh(a/2), a = mu c / sigma^2
  const double a = mu * c / (sigma * sigma);
  return c / mu * std::tanh(0.5 * a);
}

double normal_game_lower_bound(double mu, double c, double sigma) {
  const NormalWalkParams unit = ScaledNormalWalk{mu, c, sigma}.to_unit();
  return crossing_lower(unit.drift, unit.boundary);
}

double normal_game_upper_bound(double mu, double c, double sigma) {
  const NormalWalkParams unit = ScaledNormalWalk{mu, c, sigma}.to_unit();
  return crossing_upper(unit.drift, unit.boundary);
}

}  // namespace seqelim
