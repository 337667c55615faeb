#include "seqelim/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "seqelim/errors.hpp"

namespace seqelim {

namespace {

struct Probe {
  BoundsEstimate bounds;
  double score = 0.0;
  bool pass = false;
};

using Estimator = std::function<BoundsEstimate(int index, const McPlan& plan)>;

Probe make_probe(const BoundsEstimate& b, SelectionPolicy policy, double alpha) {
  Probe p{b};
  switch (policy) {
    case SelectionPolicy::LowerBound:
      p.score = b.lower.value;
      p.pass = b.lower.value >= alpha;
      break;
    case SelectionPolicy::LowerBoundSlack:
      p.score = b.lower.value;
      p.pass = b.lower.value + 3.0 * b.lower.std_error >= alpha;
      break;
    case SelectionPolicy::Interval:
      p.score = 0.5 * (b.lower.value + b.upper.value);
      p.pass = b.upper.value >= alpha;
      break;
  }
  return p;
}

struct GridResult {
  int index = 0;
  CalibrationResult result;
};

GridResult search(const Estimator& estimate, int max_index, double alpha, const CalibrationOptions& opt) {
  if (!(alpha > 0.5 && alpha < 1.0)) throw DomainError("alpha must lie in (0.5, 1), got " + std::to_string(alpha));
  if (opt.scan_replications < kMinEstimatorReplications || opt.final_replications < kMinEstimatorReplications)
    throw DomainError("calibration replications must be at least " + std::to_string(kMinEstimatorReplications));

  int probes = 0;
  auto probe = [&](int index, std::int64_t reps) {
    ++probes;
    const McPlan plan{reps, StreamFamily{opt.master_seed, 0}, opt.threads};
    return make_probe(estimate(index, plan), opt.policy, alpha);
  };
  auto unreachable = [&] {
    return UnreachableTargetError("target confidence " + std::to_string(alpha) +
                                  " is not reached within the threshold search range");
  };

  // Doubling scan, then bisection on (lo, hi] with lo failing and hi passing.
  int lo = 0;
  int hi = 1;
  while (!probe(hi, opt.scan_replications).pass) {
    if (hi >= max_index) throw unreachable();
    lo = hi;
    hi = static_cast<int>(std::min<std::int64_t>(2LL * hi, max_index));
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (probe(mid, opt.scan_replications).pass) hi = mid;
    else lo = mid;
  }

  // Confirm at the final budget, moving up or down one step at a time.
  int index = hi;
  Probe at = probe(index, opt.final_replications);
  while (!at.pass) {
    if (index >= max_index) throw unreachable();
    at = probe(++index, opt.final_replications);
  }
  std::optional<Probe> below;
  while (index > 1) {
    Probe b = probe(index - 1, opt.final_replications);
    if (!b.pass) {
      below = std::move(b);
      break;
    }
    --index;
    at = std::move(b);
  }

  GridResult g;
  g.index = index;
  g.result.bounds_at_k = at.bounds;
  g.result.score_at_k = at.score;
  if (below) {
    g.result.bounds_at_k_minus_1 = below->bounds;
    g.result.score_below = below->score;
    g.result.mix_prob = at.score > below->score
                            ? std::clamp((alpha - below->score) / (at.score - below->score), 0.0, 1.0)
                            : 1.0;
  }
  g.result.probes = probes;
  return g;
}

}  // namespace

std::string_view to_string(SelectionPolicy policy) {
  switch (policy) {
    case SelectionPolicy::LowerBound: return "lower";
    case SelectionPolicy::LowerBoundSlack: return "lower_slack";
    case SelectionPolicy::Interval: return "interval";
  }
  return "unknown";
}

SelectionPolicy parse_selection_policy(std::string_view text) {
  for (auto p : {SelectionPolicy::LowerBound, SelectionPolicy::LowerBoundSlack, SelectionPolicy::Interval})
    if (text == to_string(p)) return p;
  throw ValidationError({"policy: unknown value '" + std::string(text) + "'"});
}

CalibrationResult calibrate_k(PriorSpec prior, int n, double alpha, Algorithm algorithm,
                              const CalibrationOptions& options) {
  Estimator estimate;
  if (algorithm == Algorithm::VT) {
    estimate = [&](int k, const McPlan& plan) { return estimate_vt_bounds(prior, n, k, plan); };
  } else if (algorithm == Algorithm::PW) {
    estimate = [&](int k, const McPlan& plan) { return estimate_pw_bounds(prior, n, k, plan); };
  } else {
    throw DomainError("calibrate_k supports VT and PW only");
  }
  if (options.max_k < 1) throw DomainError("max_k must be >= 1");
  GridResult g = search(estimate, options.max_k, alpha, options);
  g.result.k_selected = g.index;
  return g.result;
}

CalibrationResult calibrate_c_normal(int n, double alpha, double sigma, const CalibrationOptions& options) {
  if (!(options.c_resolution > 0.0)) throw DomainError("c_resolution must be positive");
  const double step = options.c_resolution;
  const auto max_index = static_cast<int>(std::ceil(options.max_c / step - 1e-9));
  if (max_index < 1) throw DomainError("max_c must be at least c_resolution");
  const Estimator estimate = [&](int m, const McPlan& plan) {
    return estimate_normal_bounds(n, m * step, sigma, plan);
  };
  GridResult g = search(estimate, max_index, alpha, options);
  g.result.c_selected = g.index * step;
  return g.result;
}

double randomized_policy(double p_lo, double p_hi, double alpha) {
  if (!(p_lo < p_hi)) throw DomainError("randomized rule needs p_lo < p_hi");
  if (alpha < p_lo || alpha > p_hi) throw DomainError("alpha must lie in [p_lo, p_hi]");
  return (alpha - p_lo) / (p_hi - p_lo);
}

}  // namespace seqelim
