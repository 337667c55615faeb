#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "oracles.hpp"
#include "seqelim/errors.hpp"
#include "seqelim/prior.hpp"
#include "seqelim/rng.hpp"
#include "seqelim/special_functions.hpp"

using namespace seqelim;

TEST_SUITE("sampling") {

TEST_CASE("philox known-answer vectors") {
  const auto zero = philox4x32_10({0, 0, 0, 0}, {0, 0});
  CHECK(zero == PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  const auto ones = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  CHECK(ones == PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  const auto pi = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  CHECK(pi == PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 1000; ++i) {
    const auto va = a(), vb = b(), vc = c(), vd = d();
    CHECK(va == vb);
    differs_c |= va != vc;
    differs_d |= va != vd;
  }
  CHECK(differs_c);
  CHECK(differs_d);
  CHECK(a.draws() == 1000);
  CHECK(a.master_seed() == 42);
  CHECK(a.stream_id() == 7);
}

TEST_CASE("uniforms stay inside the open unit interval") {
  RngStream s(1, 0);
  double lo = 1, hi = 0, sum = 0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(sum / count == doctest::Approx(0.5).epsilon(0.005));
  CHECK(lo < 1e-4);
  CHECK(hi > 1 - 1e-4);
}

TEST_CASE("stream family maps replication index to stream id") {
  const StreamFamily fam{9, 100};
  RngStream x = fam.stream(5);
  RngStream y(9, 105);
  CHECK(x() == y());
}

TEST_CASE("normal cdf values") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std::abs(std_normal_cdf(1.959964) - 0.975) < 1e-7);
  const double tail = std_normal_cdf(-10.0);
  CHECK(tail > 0.0);
  CHECK(tail < 1e-20);
  CHECK(tail <= std_normal_pdf(10.0) / 10.0);
  for (double a = -8; a <= 8; a += 0.125) {
    CHECK(std::abs(std_normal_cdf(a) + std_normal_cdf(-a) - 1.0) < 1e-12);
    CHECK(std_normal_cdf(a) == doctest::Approx(oracle::phi_cdf(a)).epsilon(1e-12));
  }
}

TEST_CASE("log normal cdf far in the lower tail") {
  for (double a : {-5.0, -20.0, -35.0, -100.0}) {
    const double ref = a > -37 ? std::log(oracle::phi_cdf(a)) : -0.5 * a * a - std::log(-a) - 0.5 * std::log(2 * M_PI);
    CHECK(log_std_normal_cdf(a) == doctest::Approx(ref).epsilon(a > -37 ? 1e-10 : 1e-3));
  }
  CHECK(log_std_normal_cdf(40.0) == 0.0);
}

TEST_CASE("normal quantile against a bisection reference") {
  double lo = 0, hi = 3;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle::phi_cdf(mid) < 0.975 ? lo : hi) = mid;
  }
  CHECK(std::abs(std_normal_quantile(0.975) - lo) < 1e-9);
  CHECK(std::abs(std_normal_quantile(0.975) - 1.959964) < 1e-6);
}

TEST_CASE("normal quantile accuracy across the range") {
  for (double e = -15; e <= -1; e += 0.25) {
    const double p = std::pow(10.0, e);
    CHECK(std::abs(std_normal_quantile(p) - oracle::phi_quantile(p)) < 1e-9);
    CHECK(std::abs(std_normal_quantile(1 - p) - oracle::phi_quantile(1 - p)) < 1e-9);
  }
  for (double p = 0.01; p < 1; p += 0.01) CHECK(std::abs(std_normal_quantile(p) - oracle::phi_quantile(p)) < 1e-9);
  for (double a = -6; a <= 6; a += 0.05) CHECK(std::abs(std_normal_quantile(std_normal_cdf(a)) - a) < 1e-7);
}

TEST_CASE("normal quantile domain") {
  CHECK_THROWS_AS(std_normal_quantile(0.0), DomainError);
  CHECK_THROWS_AS(std_normal_quantile(1.0), DomainError);
  CHECK_THROWS_AS(std_normal_quantile(-0.2), DomainError);
  CHECK_THROWS_AS(std_normal_quantile(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("failure rate ratio") {
  CHECK(failure_rate_ratio(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  const double ref = oracle::phi_cdf(1.0) / (1 - oracle::phi_cdf(1.0));
  CHECK(failure_rate_ratio(1.0) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(std::abs(failure_rate_ratio(1.0) - 0.841345 / 0.158655) < 1e-3);
  for (double a = -8; a <= 8; a += 0.1) {
    CHECK(std::abs(failure_rate_ratio(a) * failure_rate_ratio(-a) - 1.0) < 1e-10);
  }
  CHECK(std::isfinite(failure_rate_ratio(37.5)));
  CHECK_THROWS_AS(failure_rate_ratio(38.5), SaturationError);
  CHECK_THROWS_AS(failure_rate_ratio(-38.5), SaturationError);
  CHECK(log_failure_rate_ratio(30.0) == doctest::Approx(-log_std_normal_cdf(-30.0)).epsilon(1e-12));
  CHECK(log_failure_rate_ratio(-30.0) == doctest::Approx(log_std_normal_cdf(-30.0)).epsilon(1e-12));
}

TEST_CASE("prior inverse cdf") {
  CHECK(prior_inverse_cdf(PriorSpec::uniform01(), 0.3) == 0.3);
  CHECK(std::abs(prior_inverse_cdf(PriorSpec::std_normal(), 0.5)) < 1e-15);
  CHECK(std::abs(prior_inverse_cdf(PriorSpec::std_normal(), 0.975) - 1.959964) < 1e-6);
  for (auto prior : {PriorSpec::uniform01(), PriorSpec::std_normal()}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double u = 0.001; u < 1; u += 0.001) {
      const double x = prior_inverse_cdf(prior, u);
      CHECK(x >= prev);
      prev = x;
    }
    CHECK_THROWS_AS(prior_inverse_cdf(prior, 0.0), DomainError);
    CHECK_THROWS_AS(prior_inverse_cdf(prior, 1.0), DomainError);
    CHECK_THROWS_AS(prior_inverse_cdf(prior, 1.5), DomainError);
  }
}

TEST_CASE("prior names") {
  CHECK(parse_prior_kind("uniform01") == PriorKind::Uniform01);
  CHECK(parse_prior_kind("std_normal") == PriorKind::StdNormal);
  CHECK(to_string(PriorKind::StdNormal) == "std_normal");
  CHECK_THROWS(parse_prior_kind("beta"));
}

TEST_CASE("coupled triplet from fixed uniforms") {
  const auto t = coupled_triplet_from_uniforms(PriorSpec::uniform01(), 2, 1.0, 0.5, RewardKind::Bernoulli);
  CHECK(t.best == 1.0);
  CHECK(t.runner_up == doctest::Approx(0.5));
  CHECK(t.other == doctest::Approx(0.5));

  const auto s = coupled_triplet_from_uniforms(PriorSpec::uniform01(), 5, 0.5, 0.5, RewardKind::Bernoulli);
  CHECK(s.best == doctest::Approx(std::pow(0.5, 0.2)).epsilon(1e-14));
  CHECK(std::abs(s.best - 0.87055) < 1e-5);
  CHECK(std::abs(s.runner_up - 0.73204) < 1e-5);
  CHECK(std::abs(s.other - 0.43528) < 1e-5);
  CHECK(s.odds_other == doctest::Approx(s.other * (1 - s.best) / (s.best * (1 - s.other))).epsilon(1e-13));
  CHECK(s.odds_runner_up ==
        doctest::Approx(s.runner_up * (1 - s.best) / (s.best * (1 - s.runner_up))).epsilon(1e-13));

  const auto nrm = coupled_triplet_from_uniforms(PriorSpec::std_normal(), 5, 0.5, 0.5, RewardKind::Normal);
  CHECK(nrm.best == doctest::Approx(oracle::phi_quantile(std::pow(0.5, 0.2))).epsilon(1e-12));
  CHECK(std::isnan(nrm.odds_other));
  CHECK_THROWS_AS(coupled_triplet_from_uniforms(PriorSpec::std_normal(), 5, 0.5, 0.5, RewardKind::Bernoulli),
                  DomainError);
}

TEST_CASE("coupled triplet ordering invariants") {
  for (auto prior : {PriorSpec::uniform01(), PriorSpec::std_normal()}) {
    const auto reward = prior == PriorSpec::uniform01() ? RewardKind::Bernoulli : RewardKind::Normal;
    for (int n : {2, 3, 5, 10, 50}) {
      for (std::uint64_t i = 0; i < 2000; ++i) {
        RngStream s(11, i);
        const auto t = sample_coupled_triplet(prior, n, s, reward);
        REQUIRE(t.best >= t.runner_up);
        REQUIRE(t.runner_up >= t.other);
        if (reward == RewardKind::Bernoulli) {
          REQUIRE(t.odds_other > 0.0);
          REQUIRE(t.odds_other <= t.odds_runner_up);
          REQUIRE(t.odds_runner_up <= 1.0);
          for (int k : {1, 5, 20}) {
            REQUIRE(1 / (1 + std::pow(t.odds_runner_up, k)) <= 1 / (1 + std::pow(t.odds_other, k)));
          }
        }
      }
    }
  }
}

TEST_CASE("coupled sampler matches brute-force order statistics") {
  const int draws = 100000;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (auto prior : {PriorSpec::uniform01(), PriorSpec::std_normal()}) {
    const auto reward = prior == PriorSpec::uniform01() ? RewardKind::Bernoulli : RewardKind::Normal;
    const int n = 5;
    std::vector<double> x, w, y, bx, bw, by;
    for (int i = 0; i < draws; ++i) {
      RngStream s(5, static_cast<std::uint64_t>(i));
      const auto t = sample_coupled_triplet(prior, n, s, reward);
      x.push_back(t.best);
      w.push_back(t.runner_up);
      y.push_back(t.other);
      std::vector<double> means(n);
      for (auto& m : means) {
        const double u = unif(rng);
        m = prior == PriorSpec::uniform01() ? u : oracle::phi_quantile(u);
      }
      std::sort(means.begin(), means.end());
      bx.push_back(means[n - 1]);
      bw.push_back(means[n - 2]);
      std::uniform_int_distribution<int> pick(0, n - 2);
      by.push_back(means[static_cast<std::size_t>(pick(rng))]);
    }
    CHECK(oracle::ks_two_sample_p(x, bx) > 0.01);
    CHECK(oracle::ks_two_sample_p(w, bw) > 0.01);
    CHECK(oracle::ks_two_sample_p(y, by) > 0.01);
  }
}

TEST_CASE("bandit means") {
  RngStream a(3, 1), b(3, 1);
  const auto m1 = sample_bandit_means(PriorSpec::uniform01(), 3, a);
  const auto m2 = sample_bandit_means(PriorSpec::uniform01(), 3, b);
  CHECK(m1 == m2);
  CHECK(m1.size() == 3);
  for (double m : m1) CHECK((m > 0 && m < 1));
  CHECK(a.draws() == 3);

  double sum = 0, sq = 0;
  const int total = 100000;
  RngStream s(8, 0);
  for (int i = 0; i < total / 10; ++i) {
    for (double m : sample_bandit_means(PriorSpec::std_normal(), 10, s)) {
      sum += m;
      sq += m * m;
    }
  }
  const double mean = sum / total;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(sq / total - mean * mean - 1.0) < 0.02);
}

}
