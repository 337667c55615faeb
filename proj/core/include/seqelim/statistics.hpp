#pragma once

#include <cstdint>
#include <span>

namespace seqelim {

// Monte-Carlo point estimate with its standard error
// (sample standard deviation / sqrt(replications)).
struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t replications = 0;

  friend bool operator==(const EstimateWithError&, const EstimateWithError&) = default;
};

// Welford accumulator; merge() uses the Chan et al. pairwise update so block
// partials can be combined in a fixed order.
struct RunningMoments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  void merge(const RunningMoments& other) noexcept;

  // Unbiased sample variance; 0 for fewer than two observations.
  double variance() const noexcept { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double std_error() const noexcept;
  EstimateWithError estimate() const noexcept;
};

// Joint moments of (x, y) for covariance and control-variate regression.
struct RunningCoMoments {
  std::int64_t count = 0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  double m2_x = 0.0;
  double m2_y = 0.0;
  double c_xy = 0.0;

  void add(double x, double y) noexcept {
    ++count;
    const double n = static_cast<double>(count);
    const double dx = x - mean_x;
    mean_x += dx / n;
    const double dy = y - mean_y;
    mean_y += dy / n;
    m2_x += dx * (x - mean_x);
    m2_y += dy * (y - mean_y);
    c_xy += dx * (y - mean_y);
  }
  void merge(const RunningCoMoments& other) noexcept;

  double variance_x() const noexcept { return count > 1 ? m2_x / static_cast<double>(count - 1) : 0.0; }
  double variance_y() const noexcept { return count > 1 ? m2_y / static_cast<double>(count - 1) : 0.0; }
  double covariance() const noexcept { return count > 1 ? c_xy / static_cast<double>(count - 1) : 0.0; }
};

RunningMoments moments_of(std::span<const double> values) noexcept;

}  // namespace seqelim
