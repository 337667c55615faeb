#pragma once

#include <string_view>
#include <vector>

#include "seqelim/rng.hpp"

namespace seqelim {

enum class PriorKind { Uniform01, StdNormal };

// Prior F from which the unknown arm means are drawn i.i.d.
struct PriorSpec {
  PriorKind kind = PriorKind::Uniform01;

  static constexpr PriorSpec uniform01() { return {PriorKind::Uniform01}; }
  static constexpr PriorSpec std_normal() { return {PriorKind::StdNormal}; }
  friend bool operator==(const PriorSpec&, const PriorSpec&) = default;
};

enum class RewardKind { Bernoulli, Normal };

std::string_view to_string(PriorKind kind);
PriorKind parse_prior_kind(std::string_view text);

// F^{-1}(u). Throws DomainError unless 0 < u < 1.
double prior_inverse_cdf(PriorSpec prior, double u);

// F^{-1}(exp(log_u)) for log_u <= 0, keeping full precision when exp(log_u) is
// within rounding of 1 (the upper-tail quantiles of a maximum of n draws).
double prior_quantile_from_log(PriorSpec prior, double log_u);

// Order-statistic sample of one Bayesian bandit built from two uniforms U, V:
//   best      = F^{-1}(U^{1/n})                 mean of the best arm
//   runner_up = F^{-1}(U^{1/n} V^{1/(n-1)})     best of the other n-1 means
//   other     = F^{-1}(U^{1/n} V)               a uniformly chosen non-best mean
// and, for Bernoulli rewards, the odds ratios of the pairwise games against
// the best arm:
//   odds_other     = other (1 - best) / (best (1 - other))
//   odds_runner_up = runner_up (1 - best) / (best (1 - runner_up))
// For Normal rewards the odds fields are NaN.
struct CoupledTriplet {
  double best = 0.0;
  double runner_up = 0.0;
  double other = 0.0;
  double odds_other = 0.0;
  double odds_runner_up = 0.0;
};

// Deterministic construction from given uniforms; u may be exactly 1.
CoupledTriplet coupled_triplet_from_uniforms(PriorSpec prior, int n, double u, double v, RewardKind reward);

// Draws U then V from the stream.
CoupledTriplet sample_coupled_triplet(PriorSpec prior, int n, RngStream& stream, RewardKind reward);

// n i.i.d. means F^{-1}(U_i), consuming one uniform per arm in index order.
std::vector<double> sample_bandit_means(PriorSpec prior, int n, RngStream& stream);

}  // namespace seqelim
