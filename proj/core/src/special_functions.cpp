#include "seqelim/special_functions.hpp"

#include <cmath>
#include <string>

#include "seqelim/errors.hpp"

namespace seqelim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kSaturationLimit = 38.0;

// Horner evaluation, coefficients in ascending order.
template <std::size_t N>
double poly(const double (&c)[N], double x) {
  double acc = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

constexpr double kA[] = {3.3871328727963666080e0, 1.3314166789178437745e+2, 1.9715909503065514427e+3,
                         1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
                         3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kB[] = {1.0,
                         4.2313330701600911252e+1, 6.8718700749205790830e+2, 5.3941960214247511077e+3,
                         2.1213794301586595867e+4, 3.9307895800092710610e+4, 2.8729085735721942674e+4,
                         5.2264952788528545610e+3};
constexpr double kC[] = {1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
                         3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
                         2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kD[] = {1.0,
                         2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
                         1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
                         1.05075007164441684324e-9};
constexpr double kE[] = {6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
                         2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
                         2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kF[] = {1.0,
                         5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
                         7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
                         2.04426310338993978564e-15};

}  // namespace

double std_normal_cdf(double a) { return 0.5 * std::erfc(-a * kInvSqrt2); }

double std_normal_pdf(double a) { return std::exp(-0.5 * a * a - kLogSqrt2Pi); }

double log_std_normal_cdf(double a) {
  if (a > -30.0) return std::log(0.5 * std::erfc(-a * kInvSqrt2));
  // Mills-ratio series: Phi(a) = phi(a)/|a| * (1 - 1/a^2 + 3/a^4 - 15/a^6 + ...)
  const double inv2 = 1.0 / (a * a);
  const double series = 1.0 - inv2 * (1.0 - 3.0 * inv2 * (1.0 - 5.0 * inv2 * (1.0 - 7.0 * inv2)));
  return -0.5 * a * a - kLogSqrt2Pi - std::log(-a) + std::log(series);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("std_normal_quantile: p must lie in (0, 1), got " + std::to_string(p));
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * poly(kA, r) / poly(kB, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = poly(kC, r) / poly(kD, r);
  } else {
    r -= 5.0;
    x = poly(kE, r) / poly(kF, r);
  }
  return q < 0.0 ? -x : x;
}

double failure_rate_ratio(double a) {
  if (!std::isfinite(a)) throw DomainError("failure_rate_ratio: argument must be finite");
  if (std::fabs(a) > kSaturationLimit)
    throw SaturationError("failure_rate_ratio: |a| > 38 leaves double range, got " + std::to_string(a));
  return std::erfc(-a * kInvSqrt2) / std::erfc(a * kInvSqrt2);
}

double log_failure_rate_ratio(double a) {
  if (!std::isfinite(a)) throw DomainError("log_failure_rate_ratio: argument must be finite");
  return log_std_normal_cdf(a) - log_std_normal_cdf(-a);
}

}  // namespace seqelim
