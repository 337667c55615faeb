#include "seqelim/bounds.hpp"

#include <cmath>
#include <string>

#include "seqelim/errors.hpp"
#include "seqelim/normal_walk.hpp"
#include "seqelim/parallel.hpp"
#include "seqelim/ruin.hpp"

namespace seqelim {

namespace {

struct BoundsAccumulator {
  RunningMoments lower;
  RunningMoments upper;
  RunningCoMoments plays;  // x = plays, y = control value
  std::int64_t ties = 0;

  void merge(const BoundsAccumulator& o) {
    lower.merge(o.lower);
    upper.merge(o.upper);
    plays.merge(o.plays);
    ties += o.ties;
  }
};

void validate(int n, const McPlan& plan) {
  if (n < 2) throw DomainError("estimator needs n >= 2, got " + std::to_string(n));
  if (plan.replications < kMinEstimatorReplications)
    throw DomainError("estimator needs at least " + std::to_string(kMinEstimatorReplications) + " replications");
}

void require_goal(int k) {
  if (k < 1) throw DomainError("goal k must be >= 1, got " + std::to_string(k));
}

BoundsEstimate summarize(const BoundsAccumulator& acc, int n) {
  BoundsEstimate out;
  out.lower_inner = acc.lower.estimate();
  const double m = out.lower_inner.value;
  const double e = static_cast<double>(n - 1);
  out.lower = {std::pow(m, e), e * std::pow(m, e - 1.0) * out.lower_inner.std_error, acc.lower.count};
  out.upper = acc.upper.estimate();
  const double count = static_cast<double>(acc.plays.count);
  out.expected_n = {acc.plays.mean_x, acc.plays.count > 1 ? std::sqrt(acc.plays.variance_x() / count) : 0.0,
                    acc.plays.count};
  out.skipped_ties = acc.ties;
  return out;
}

}  // namespace

BoundsEstimate estimate_vt_bounds(PriorSpec prior, int n, int k, const McPlan& plan, bool control_variate) {
  validate(n, plan);
  require_goal(k);
  if (control_variate && prior.kind != PriorKind::Uniform01)
    throw DomainError("the control variate is only available for the uniform(0,1) prior");
  const double nonbest = n - 1;
  const auto acc = reduce_replications<BoundsAccumulator>(
      plan.replications, plan.threads, [&](std::int64_t i, BoundsAccumulator& a) {
        RngStream stream = plan.family.stream(static_cast<std::uint64_t>(i));
        const CoupledTriplet t = sample_coupled_triplet(prior, n, stream, RewardKind::Bernoulli);
        a.lower.add(1.0 / (1.0 + std::pow(t.odds_other, k)));
        a.upper.add(1.0 / (1.0 + std::pow(t.odds_runner_up, k)));
        if (t.other >= t.best || t.runner_up >= t.best || t.best >= 1.0) {
          ++a.ties;
          return;
        }
        const double plays = nonbest * ruin_expected_plays({t.best, t.other, k}) +
                             ruin_expected_plays({t.best, t.runner_up, k});
        a.plays.add(plays, 1.0 / (t.best * (1.0 - t.runner_up)));
      });
  BoundsEstimate out = summarize(acc, n);
  if (control_variate) out.expected_n_cv = apply_control_variate(acc.plays, control_variate_mean(n));
  return out;
}

BoundsEstimate estimate_pw_bounds(PriorSpec prior, int n, int k, const McPlan& plan) {
  validate(n, plan);
  require_goal(k);
  const double nonbest = n - 1;
  const auto acc = reduce_replications<BoundsAccumulator>(
      plan.replications, plan.threads, [&](std::int64_t i, BoundsAccumulator& a) {
        RngStream stream = plan.family.stream(static_cast<std::uint64_t>(i));
        const CoupledTriplet t = sample_coupled_triplet(prior, n, stream, RewardKind::Bernoulli);
        const bool saturated = t.best >= 1.0;
        const bool tie_other = saturated || t.other >= t.best;
        const bool tie_runner = saturated || t.runner_up >= t.best;
        a.lower.add(saturated ? 1.0 : tie_other ? 0.5 : pw_win_prob({t.best, t.other, k}));
        a.upper.add(saturated ? 1.0 : tie_runner ? 0.5 : pw_win_prob({t.best, t.runner_up, k}));
        if (tie_other || tie_runner) {
          ++a.ties;
          return;
        }
        const double plays = nonbest * pw_arm_plays({t.best, t.other, k}).second +
                             pw_arm_plays({t.best, t.runner_up, k}).first;
        a.plays.add(plays, 0.0);
      });
  return summarize(acc, n);
}

BoundsEstimate estimate_normal_bounds(int n, double c, double sigma, const McPlan& plan) {
  validate(n, plan);
  if (!(c > 0.0)) throw DomainError("threshold c must be positive");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const double nonbest = n - 1;
  const auto acc = reduce_replications<BoundsAccumulator>(
      plan.replications, plan.threads, [&](std::int64_t i, BoundsAccumulator& a) {
        RngStream stream = plan.family.stream(static_cast<std::uint64_t>(i));
        const CoupledTriplet t = sample_coupled_triplet(PriorSpec::std_normal(), n, stream, RewardKind::Normal);
        const double gap_other = t.best - t.other;
        const double gap_runner = t.best - t.runner_up;
        a.lower.add(gap_other > 0.0 ? normal_game_lower_bound(gap_other, c, sigma) : 0.5);
        a.upper.add(gap_runner > 0.0 ? normal_game_upper_bound(gap_runner, c, sigma) : 0.5);
        if (!(gap_other > 0.0 && gap_runner > 0.0)) {
          ++a.ties;
          return;
        }
        a.plays.add(nonbest * vt_normal_M(gap_other, c, sigma) + vt_normal_M(gap_runner, c, sigma), 0.0);
      });
  return summarize(acc, n);
}

}  // namespace seqelim
