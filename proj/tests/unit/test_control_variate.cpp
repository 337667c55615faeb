#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "seqelim/bounds.hpp"
#include "seqelim/control_variate.hpp"
#include "seqelim/errors.hpp"

using namespace seqelim;

TEST_SUITE("control_variate") {

TEST_CASE("constant control changes nothing") {
  const std::vector<double> t{1, 4, 2, 8, 5};
  const std::vector<double> y(5, 3.0);
  const auto r = apply_control_variate(t, y, 3.0);
  CHECK(r.degenerate);
  CHECK(r.estimate == r.raw);
  CHECK(r.coefficient == 0.0);
}

TEST_CASE("a perfect control removes all variance") {
  std::vector<double> t, y;
  std::mt19937_64 rng(1);
  std::exponential_distribution<double> e(2.0);
  for (int i = 0; i < 1000; ++i) {
    y.push_back(e(rng));
    t.push_back(3 * y.back() + 1);
  }
  const auto r = apply_control_variate(t, y, 0.5);
  CHECK(r.estimate.value == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(r.estimate.std_error < 1e-9);
  CHECK(r.variance_reduction == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.coefficient == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("the control itself as the target") {
  std::vector<double> y;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u;
  for (int i = 0; i < 500; ++i) y.push_back(u(rng));
  const auto r = apply_control_variate(y, y, 0.5);
  CHECK(r.estimate.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.estimate.std_error < 1e-12);
}

TEST_CASE("variance never increases and matches the regression formula") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> z;
  for (double rho : {0.0, 0.3, -0.8, 0.95}) {
    std::vector<double> t, y;
    RunningCoMoments m;
    for (int i = 0; i < 5000; ++i) {
      const double a = z(rng), b = z(rng);
      y.push_back(a);
      t.push_back(rho * a + std::sqrt(1 - rho * rho) * b + 10);
      m.add(t.back(), y.back());
    }
    const auto r = apply_control_variate(t, y, 0.0);
    CHECK(r.estimate.std_error <= r.raw.std_error + 1e-15);
    CHECK(r.variance_reduction >= 0.0);
    const double beta = -m.covariance() / m.variance_y();
    CHECK(r.coefficient == doctest::Approx(beta).epsilon(1e-10));
    CHECK(r.estimate.value == doctest::Approx(m.mean_x + beta * (m.mean_y - 0.0)).epsilon(1e-12));
    const auto again = apply_control_variate(m, 0.0);
    CHECK(again.estimate.value == doctest::Approx(r.estimate.value).epsilon(1e-12));
    CHECK(again.estimate.std_error == doctest::Approx(r.estimate.std_error).epsilon(1e-10));
  }
}

TEST_CASE("input checks") {
  const std::vector<double> a{1, 2, 3}, b{1, 2};
  CHECK_THROWS_AS(apply_control_variate(a, b, 0.0), DomainError);
  CHECK_THROWS_AS(apply_control_variate(std::vector<double>{1}, std::vector<double>{1}, 0.0), DomainError);
}

TEST_CASE("control variate on the vector-at-a-time sample count") {
  const McPlan plan{100'000, {9, 0}, 1};
  const auto b = estimate_vt_bounds(PriorSpec::uniform01(), 5, 10, plan, true);
  REQUIRE(b.expected_n_cv);
  CHECK(b.expected_n_cv->variance_reduction > 0.2);
  CHECK(b.expected_n_cv->raw == b.expected_n);
  CHECK(std::abs(b.expected_n_cv->estimate.value - b.expected_n.value) < 4 * b.expected_n.std_error);
  CHECK(!estimate_vt_bounds(PriorSpec::uniform01(), 5, 10, plan).expected_n_cv);
}

}
