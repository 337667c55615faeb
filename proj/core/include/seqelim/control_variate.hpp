#pragma once

#include <span>

#include "seqelim/statistics.hpp"

namespace seqelim {

// Control-variate adjusted mean of T: mean(T + beta (Y - E[Y])) with
// beta = -Cov(T, Y) / Var(Y) fitted in-sample. The adjusted variance is
// Var(T) - Cov(T, Y)^2 / Var(Y), never above Var(T).
struct ControlVariateResult {
  EstimateWithError estimate;
  EstimateWithError raw;
  double coefficient = 0.0;
  // 1 - adjusted variance / raw variance.
  double variance_reduction = 0.0;
  // Var(Y) == 0: the raw estimate is returned unchanged.
  bool degenerate = false;
};

// x = raw values T, y = control values Y.
ControlVariateResult apply_control_variate(const RunningCoMoments& moments, double cv_mean);

// Throws DomainError for mismatched lengths or fewer than two values.
ControlVariateResult apply_control_variate(std::span<const double> raw_values, std::span<const double> cv_values,
                                           double cv_mean);

}  // namespace seqelim
