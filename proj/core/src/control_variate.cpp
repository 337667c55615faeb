#include "seqelim/control_variate.hpp"

#include <algorithm>
#include <cmath>

#include "seqelim/errors.hpp"

namespace seqelim {

ControlVariateResult apply_control_variate(const RunningCoMoments& m, double cv_mean) {
  const double count = static_cast<double>(m.count);
  ControlVariateResult r;
  r.raw = {m.mean_x, m.count > 1 ? std::sqrt(m.variance_x() / count) : 0.0, m.count};
  const double var_y = m.variance_y();
  if (!(var_y > 0.0)) {
    r.estimate = r.raw;
    r.degenerate = true;
    return r;
  }
  const double cov = m.covariance();
  r.coefficient = -cov / var_y;
  const double adjusted = std::max(0.0, m.variance_x() - cov * cov / var_y);
  r.estimate = {m.mean_x + r.coefficient * (m.mean_y - cv_mean), std::sqrt(adjusted / count), m.count};
  const double var_x = m.variance_x();
  r.variance_reduction = var_x > 0.0 ? 1.0 - adjusted / var_x : 0.0;
  return r;
}

ControlVariateResult apply_control_variate(std::span<const double> raw_values, std::span<const double> cv_values,
                                           double cv_mean) {
  if (raw_values.size() != cv_values.size())
    throw DomainError("control variate: raw and control samples differ in length");
  if (raw_values.size() < 2) throw DomainError("control variate: need at least two samples");
  RunningCoMoments m;
  for (std::size_t i = 0; i < raw_values.size(); ++i) m.add(raw_values[i], cv_values[i]);
  return apply_control_variate(m, cv_mean);
}

}  // namespace seqelim
