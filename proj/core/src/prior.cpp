#include "seqelim/prior.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "seqelim/errors.hpp"
#include "seqelim/special_functions.hpp"

namespace seqelim {

namespace {

constexpr double kLogHalf = -0.69314718055994530942;

// log(1 - exp(l)) for l < 0.
double log1m_exp(double l) { return std::log(-std::expm1(l)); }

// Odds ratio y(1-x)/(x(1-y)) of two uniform-prior means given their logs.
double odds_ratio_from_logs(double log_weaker, double log_stronger) {
  return std::exp(log_weaker + log1m_exp(log_stronger) - log_stronger - log1m_exp(log_weaker));
}

}  // namespace

std::string_view to_string(PriorKind kind) {
  switch (kind) {
    case PriorKind::Uniform01: return "uniform01";
    case PriorKind::StdNormal: return "std_normal";
  }
  return "unknown";
}

PriorKind parse_prior_kind(std::string_view text) {
  if (text == "uniform01" || text == "uniform") return PriorKind::Uniform01;
  if (text == "std_normal" || text == "normal") return PriorKind::StdNormal;
  throw DomainError("unknown prior '" + std::string(text) + "'");
}

double prior_inverse_cdf(PriorSpec prior, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("prior_inverse_cdf: u must lie in (0, 1), got " + std::to_string(u));
  switch (prior.kind) {
    case PriorKind::Uniform01: return u;
    case PriorKind::StdNormal: return std_normal_quantile(u);
  }
  return u;
}

double prior_quantile_from_log(PriorSpec prior, double log_u) {
  switch (prior.kind) {
    case PriorKind::Uniform01:
      return std::exp(log_u);
    case PriorKind::StdNormal: {
      if (log_u >= 0.0) return std::numeric_limits<double>::infinity();
      if (log_u < kLogHalf) return std_normal_quantile(std::exp(log_u));
      // 1 - u computed without cancellation, then reflected.
      return -std_normal_quantile(-std::expm1(log_u));
    }
  }
  return std::exp(log_u);
}

CoupledTriplet coupled_triplet_from_uniforms(PriorSpec prior, int n, double u, double v, RewardKind reward) {
  if (n < 2) throw DomainError("coupled triplet needs n >= 2");
  if (reward == RewardKind::Bernoulli && prior.kind != PriorKind::Uniform01)
    throw DomainError("Bernoulli rewards need a prior supported on (0, 1)");
  const double log_top = std::log(u) / n;
  const double log_v = std::log(v);
  CoupledTriplet t;
  t.best = prior_quantile_from_log(prior, log_top);
  t.other = prior_quantile_from_log(prior, log_top + log_v);
  t.runner_up = prior_quantile_from_log(prior, log_top + log_v / (n - 1));
  if (reward == RewardKind::Bernoulli) {
    const double log_runner_up = log_top + log_v / (n - 1);
    t.odds_other = odds_ratio_from_logs(log_top + log_v, log_top);
    t.odds_runner_up = odds_ratio_from_logs(log_runner_up, log_top);
  } else {
    t.odds_other = std::numeric_limits<double>::quiet_NaN();
    t.odds_runner_up = std::numeric_limits<double>::quiet_NaN();
  }
  return t;
}

CoupledTriplet sample_coupled_triplet(PriorSpec prior, int n, RngStream& stream, RewardKind reward) {
  const double u = stream.uniform();
  const double v = stream.uniform();
  return coupled_triplet_from_uniforms(prior, n, u, v, reward);
}

std::vector<double> sample_bandit_means(PriorSpec prior, int n, RngStream& stream) {
  if (n < 2) throw DomainError("sample_bandit_means needs n >= 2");
  std::vector<double> means(static_cast<std::size_t>(n));
  for (auto& m : means) m = prior_inverse_cdf(prior, stream.uniform());
  return means;
}

}  // namespace seqelim
