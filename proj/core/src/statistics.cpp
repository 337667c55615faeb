#include "seqelim/statistics.hpp"

#include <cmath>

namespace seqelim {

void RunningMoments::merge(const RunningMoments& other) noexcept {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double n = na + nb;
  const double delta = other.mean - mean;
  mean += delta * nb / n;
  m2 += other.m2 + delta * delta * na * nb / n;
  count += other.count;
}

double RunningMoments::std_error() const noexcept {
  return count > 1 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
}

EstimateWithError RunningMoments::estimate() const noexcept { return {mean, std_error(), count}; }

void RunningCoMoments::merge(const RunningCoMoments& other) noexcept {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double n = na + nb;
  const double dx = other.mean_x - mean_x;
  const double dy = other.mean_y - mean_y;
  mean_x += dx * nb / n;
  mean_y += dy * nb / n;
  m2_x += other.m2_x + dx * dx * na * nb / n;
  m2_y += other.m2_y + dy * dy * na * nb / n;
  c_xy += other.c_xy + dx * dy * na * nb / n;
  count += other.count;
}

RunningMoments moments_of(std::span<const double> values) noexcept {
  RunningMoments m;
  for (double v : values) m.add(v);
  return m;
}

}  // namespace seqelim
