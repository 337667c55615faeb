#pragma once

namespace seqelim {

// Standard Normal distribution function.
double std_normal_cdf(double a);

// log Phi(a), accurate far into the lower tail.
double log_std_normal_cdf(double a);

// Standard Normal density.
double std_normal_pdf(double a);

// Inverse of Phi on (0, 1), Wichura's AS 241 (PPND16). Relative accuracy is
// about 1e-16 across the whole domain. Throws DomainError outside (0, 1).
double std_normal_quantile(double p);

// Failure-rate ratio R(a) = Phi(a) / (1 - Phi(a)).
// Throws SaturationError for |a| > 38, where the ratio leaves double range.
double failure_rate_ratio(double a);

// log R(a); finite for every finite a.
double log_failure_rate_ratio(double a);

}  // namespace seqelim
