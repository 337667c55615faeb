#pragma once

#include <cstdint>

#include "seqelim/rng.hpp"
#include "seqelim/statistics.hpp"

namespace seqelim {

// Monte-Carlo plan: replication i draws from family.stream(i); blocks of
// replications run on `threads` workers (0 = hardware concurrency).
struct McPlan {
  std::int64_t replications = 100'000;
  StreamFamily family{};
  unsigned threads = 0;
};

// VT with early elimination (an arm with no success in the first j rounds is
// dropped when another arm succeeded in all j rounds), uniform(0,1) prior.

// P(L | U = u) = (1 - u^{1/n})^j (1 - (1 - u^{j/n}/(j+1))^{n-1}),
// L = the best arm is eliminated early.
double vt_ee_best_elim_integrand(int n, int j, double u);

// D integrand at W = u^{1/n}:
// (1 - (1-W)^{j+1}) / ((j+1) W) * (1 - (1 - W^j)(1 - W^j/(j+1))^{n-2})
double vt_ee_nonbest_integrand(int n, int j, double u);

// P(L) as the mean of the integrand over U ~ uniform(0,1).
EstimateWithError vt_ee_best_elim_prob(int n, int j, const McPlan& plan);

// E[N*] = (n - 1) D, N* = number of non-best arms eliminated early.
EstimateWithError vt_ee_nonbest_mean(int n, int j, const McPlan& plan);

// PW with early elimination of an arm whose first j draws all fail,
// uniform(0,1) prior. Exact: P(B_e) = n! j! / (n+j)!, via log-gamma.
double pw_ee_best_elim_prob(int n, int j);

// E[N_nb] = n/(j+1) - n! j! / (n+j)!
double pw_ee_nonbest_mean(int n, int j);

// E[1 / (P1 (1 - P2))] for the top two of n uniform(0,1) means, by the
// midpoint rule: n(n-1)/r * sum_i h((i - 0.5)/r), h(x) = -x^{n-2} ln(x)/(1-x).
inline constexpr std::int64_t kDefaultQuadraturePoints = 1'000'000;
double control_variate_mean(int n, std::int64_t quadrature_points = kDefaultQuadraturePoints);

}  // namespace seqelim
