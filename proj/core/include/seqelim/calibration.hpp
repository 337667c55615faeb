#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "seqelim/bounds.hpp"
#include "seqelim/simulators.hpp"

namespace seqelim {

// When a threshold is accepted, given its BoundsEstimate:
//   LowerBound       lower >= alpha               (guarantees P(C) >= alpha)
//   LowerBoundSlack  lower + 3 se(lower) >= alpha
//   Interval         upper >= alpha               ([lower, upper] reaches alpha)
enum class SelectionPolicy { LowerBound, LowerBoundSlack, Interval };

std::string_view to_string(SelectionPolicy policy);
SelectionPolicy parse_selection_policy(std::string_view text);

struct CalibrationOptions {
  SelectionPolicy policy = SelectionPolicy::LowerBound;
  // Threshold scan (doubling, then bisection) runs at scan_replications;
  // the selected threshold and its neighbour are confirmed at
  // final_replications. Both use streams 0.. of master_seed, so every probe
  // shares uniforms and the lower bound is monotone in the threshold.
  std::int64_t scan_replications = 100'000;
  std::int64_t final_replications = 1'000'000;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;
  int max_k = 10'000;
  double max_c = 10'000.0;
  double c_resolution = 0.1;
};

struct CalibrationResult {
  int k_selected = 0;      // Bernoulli calibration
  double c_selected = 0.0;  // Normal calibration
  BoundsEstimate bounds_at_k;
  // Absent when the selected threshold is the smallest one on the grid.
  std::optional<BoundsEstimate> bounds_at_k_minus_1;
  // Policy scores: lower for the lower-bound policies, (lower + upper) / 2
  // for Interval.
  double score_at_k = 0.0;
  double score_below = 0.0;
  // Weight on the selected threshold in the randomized rule that mixes it
  // with the next smaller one; clamped to [0, 1].
  double mix_prob = 1.0;
  int probes = 0;
};

// Smallest k in [1, max_k] accepted by the policy, for VT or PW.
// Throws DomainError for alpha outside (0.5, 1) or another algorithm, and
// UnreachableTargetError when max_k is not enough.
CalibrationResult calibrate_k(PriorSpec prior, int n, double alpha, Algorithm algorithm,
                              const CalibrationOptions& options = {});

// Smallest c on the c_resolution grid accepted by the policy against
// estimate_normal_bounds (standard Normal prior).
CalibrationResult calibrate_c_normal(int n, double alpha, double sigma, const CalibrationOptions& options = {});

// Weight p on the higher-confidence threshold so that
// p * p_hi + (1 - p) * p_lo = alpha. Requires p_lo < p_hi and
// p_lo <= alpha <= p_hi, else DomainError.
double randomized_policy(double p_lo, double p_hi, double alpha);

// Mean sample count of the randomized rule.
inline double mixture_expected(double mix_prob, double value_lo, double value_hi) {
  return mix_prob * value_hi + (1.0 - mix_prob) * value_lo;
}

}  // namespace seqelim
