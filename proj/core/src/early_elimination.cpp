#include "seqelim/early_elimination.hpp"

#include <cmath>
#include <string>

#include "seqelim/errors.hpp"
#include "seqelim/parallel.hpp"

namespace seqelim {

namespace {

void validate_nj(int n, int j, int min_n) {
  if (n < min_n) throw DomainError("n must be >= " + std::to_string(min_n) + ", got " + std::to_string(n));
  if (j < 1) throw DomainError("j must be >= 1, got " + std::to_string(j));
}

template <class Integrand>
EstimateWithError integrate_over_uniform(const McPlan& plan, Integrand f) {
  if (plan.replications < 2) throw DomainError("Monte-Carlo integration needs at least 2 samples");
  const RunningMoments m = reduce_replications<RunningMoments>(
      plan.replications, plan.threads, [&](std::int64_t i, RunningMoments& acc) {
        RngStream stream = plan.family.stream(static_cast<std::uint64_t>(i));
        acc.add(f(stream.uniform()));
      });
  return m.estimate();
}

}  // namespace

double vt_ee_best_elim_integrand(int n, int j, double u) {
  validate_nj(n, j, 2);
  const double log_w = std::log(u) / n;
  const double one_minus_w = -std::expm1(log_w);
  const double all_success = std::exp(j * log_w) / (j + 1);
  // 1 - (1 - a)^{n-1} = -expm1((n-1) log1p(-a))
  const double some_arm_all_success = -std::expm1((n - 1) * std::log1p(-all_success));
  return std::pow(one_minus_w, j) * some_arm_all_success;
}

double vt_ee_nonbest_integrand(int n, int j, double u) {
  validate_nj(n, j, 2);
  const double log_w = std::log(u) / n;
  const double w = std::exp(log_w);
  // P(no success in j rounds | W) = (1 - (1-W)^{j+1}) / ((j+1) W); -> 1 as W -> 0
  const double no_success = w > 0.0 ? -std::expm1((j + 1) * std::log1p(-w)) / ((j + 1) * w) : 1.0;
  const double wj = std::exp(j * log_w);
  const double nobody_perfect = (1.0 - wj) * std::exp((n - 2) * std::log1p(-wj / (j + 1)));
  return no_success * (1.0 - nobody_perfect);
}

EstimateWithError vt_ee_best_elim_prob(int n, int j, const McPlan& plan) {
  validate_nj(n, j, 2);
  return integrate_over_uniform(plan, [n, j](double u) { return vt_ee_best_elim_integrand(n, j, u); });
}

EstimateWithError vt_ee_nonbest_mean(int n, int j, const McPlan& plan) {
  validate_nj(n, j, 2);
  EstimateWithError d =
      integrate_over_uniform(plan, [n, j](double u) { return vt_ee_nonbest_integrand(n, j, u); });
  d.value *= (n - 1);
  d.std_error *= (n - 1);
  return d;
}

double pw_ee_best_elim_prob(int n, int j) {
  validate_nj(n, j, 1);
  return std::exp(std::lgamma(n + 1.0) + std::lgamma(j + 1.0) - std::lgamma(n + j + 1.0));
}

double pw_ee_nonbest_mean(int n, int j) {
  return static_cast<double>(n) / (j + 1) - pw_ee_best_elim_prob(n, j);
}

double control_variate_mean(int n, std::int64_t quadrature_points) {
  if (n < 2) throw DomainError("control_variate_mean needs n >= 2");
  if (quadrature_points < 1000) throw DomainError("control_variate_mean needs at least 1000 quadrature points");
  const double r = static_cast<double>(quadrature_points);
  double sum = 0.0;
  for (std::int64_t i = 1; i <= quadrature_points; ++i) {
    const double x = (static_cast<double>(i) - 0.5) / r;
    const double one_minus_x = (r - static_cast<double>(i) + 0.5) / r;
    // -ln(x)/(1-x) written with log1p near x = 1
    const double log_ratio = x > 0.5 ? -std::log1p(-one_minus_x) / one_minus_x : -std::log(x) / one_minus_x;
    sum += std::pow(x, n - 2) * log_ratio;
  }
  return static_cast<double>(n) * (n - 1) * sum / r;
}

}  // namespace seqelim
