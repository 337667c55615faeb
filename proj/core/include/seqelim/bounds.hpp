#pragma once

#include <cstdint>
#include <optional>

#include "seqelim/control_variate.hpp"
#include "seqelim/early_elimination.hpp"
#include "seqelim/prior.hpp"

namespace seqelim {

// Monte-Carlo estimates built from coupled triplets (X best mean, W runner-up,
// Y a random non-best mean); replication i draws its U, V from
// plan.family.stream(i), so two calls with the same plan share uniforms.
//
// lower      (mean of the pairwise win probability against Y)^{n-1}, with
//            delta-method standard error (n-1) m^{n-2} se(m)
// upper      mean of the pairwise win probability against W
// expected_n (n-1) * plays of a non-best arm against the best
//            + plays of the best arm against the runner-up
struct BoundsEstimate {
  EstimateWithError lower;
  EstimateWithError upper;
  EstimateWithError expected_n;
  // Mean of the un-exponentiated lower term.
  EstimateWithError lower_inner;
  // Replications dropped from expected_n because the two means coincided.
  std::int64_t skipped_ties = 0;
  // VT only, when requested: expected_n with the control Y = 1/(X (1 - W)).
  std::optional<ControlVariateResult> expected_n_cv;
};

// Bernoulli rewards with pairwise odds ratios R = odds(Y), S = odds(W):
// lower from 1/(1+R^k), upper from 1/(1+S^k), plays from the ruin game.
// Requires the uniform(0,1) prior when control_variate is set.
BoundsEstimate estimate_vt_bounds(PriorSpec prior, int n, int k, const McPlan& plan, bool control_variate = false);

// Play the winner: lower from B(X, Y), upper from B(X, W); expected_n adds
// the non-best arm's share of the (X, Y) game and the best arm's share of
// the (X, W) game.
BoundsEstimate estimate_pw_bounds(PriorSpec prior, int n, int k, const McPlan& plan);

// Normal rewards: gaps X - Y and X - W under the standard Normal prior;
// lower from the crossing-probability lower bound, upper from the upper
// bound, expected_n from M(gap, c, sigma).
BoundsEstimate estimate_normal_bounds(int n, double c, double sigma, const McPlan& plan);

// Smallest replication count accepted by the estimators.
inline constexpr std::int64_t kMinEstimatorReplications = 1000;

}  // namespace seqelim
