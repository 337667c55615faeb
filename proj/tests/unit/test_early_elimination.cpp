#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "seqelim/early_elimination.hpp"

using namespace seqelim;

namespace {

double best_elim_formula(int n, int j, double u) {
  return std::pow(1 - std::pow(u, 1.0 / n), j) * (1 - std::pow(1 - std::pow(u, double(j) / n) / (j + 1), n - 1));
}

double nonbest_formula(int n, int j, double u) {
  const double w = std::pow(u, 1.0 / n);
  const double wj = std::pow(w, j);
  return (1 - std::pow(1 - w, j + 1)) / ((j + 1) * w) * (1 - (1 - wj) * std::pow(1 - wj / (j + 1), n - 2));
}

// Direct simulation of the first j rounds of vector-at-a-time sampling:
// after round j, if some arm succeeded every time, arms with no success
// are dropped.
struct EeFrequencies {
  double best_rate, best_se, nonbest_mean, nonbest_se;
};

EeFrequencies simulate_vt_ee(int n, int j, int runs, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> best(runs), nonbest(runs);
  std::vector<double> means(n);
  std::vector<int> succ(n);
  for (int r = 0; r < runs; ++r) {
    int top = 0;
    for (int i = 0; i < n; ++i) {
      means[i] = u(rng);
      if (means[i] > means[top]) top = i;
      succ[i] = 0;
      for (int t = 0; t < j; ++t) succ[i] += u(rng) < means[i];
    }
    const bool fires = *std::max_element(succ.begin(), succ.end()) == j;
    int dropped = 0;
    for (int i = 0; i < n; ++i) dropped += fires && i != top && succ[i] == 0;
    best[r] = fires && succ[top] == 0;
    nonbest[r] = dropped;
  }
  const auto b = oracle::summarize(best);
  const auto d = oracle::summarize(nonbest);
  return {b.mean, b.se, d.mean, d.se};
}

}  // namespace

TEST_SUITE("early_elimination") {

TEST_CASE("integrands") {
  for (int n : {2, 5, 20}) {
    for (int j : {1, 2, 5}) {
      CHECK(vt_ee_best_elim_integrand(n, j, 1.0) == 0.0);
      CHECK(std::isfinite(vt_ee_nonbest_integrand(n, j, 1e-300)));
      for (double u = 0.01; u < 1; u += 0.07) {
        CHECK(vt_ee_best_elim_integrand(n, j, u) == doctest::Approx(best_elim_formula(n, j, u)).epsilon(1e-12));
        CHECK(vt_ee_nonbest_integrand(n, j, u) == doctest::Approx(nonbest_formula(n, j, u)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("quadrature of the library integrands") {
  for (auto [n, j] : {std::pair{5, 2}, std::pair{10, 5}, std::pair{20, 3}}) {
    const double lib = oracle::integrate01([n = n, j = j](double u) { return vt_ee_best_elim_integrand(n, j, u); });
    const double ref = oracle::integrate01([n = n, j = j](double u) { return best_elim_formula(n, j, u); });
    CHECK(std::abs(lib - ref) < 1e-10);
    const double dlib = oracle::integrate01([n = n, j = j](double u) { return vt_ee_nonbest_integrand(n, j, u); });
    const double dref = oracle::integrate01([n = n, j = j](double u) { return nonbest_formula(n, j, u); });
    CHECK(std::abs(dlib - dref) < 1e-10);
  }
}

TEST_CASE("Monte-Carlo integration against quadrature and published values") {
  struct Row {
    int n, j;
    double best, nonbest;
  };
  const McPlan plan{1'000'000, {1, 0}, 1};
  for (const auto& r : {Row{5, 2, 0.02053, 1.317}, Row{10, 5, 0.00006, 1.343}, Row{20, 5, 0.00001, 3.229},
                        Row{20, 3, 0.00053, 4.978}}) {
    CAPTURE(r.n);
    CAPTURE(r.j);
    const auto p = vt_ee_best_elim_prob(r.n, r.j, plan);
    const auto d = vt_ee_nonbest_mean(r.n, r.j, plan);
    const double pq = oracle::integrate01([&](double u) { return best_elim_formula(r.n, r.j, u); });
    const double dq = (r.n - 1) * oracle::integrate01([&](double u) { return nonbest_formula(r.n, r.j, u); });
    CHECK(std::abs(p.value - pq) <= 3 * p.std_error + 1e-12);
    CHECK(std::abs(d.value - dq) <= 3 * d.std_error);
    // The published values are Monte-Carlo estimates rounded to the digits shown.
    CHECK(std::abs(pq - r.best) <= 5e-6 + 3 * p.std_error);
    CHECK(std::abs(dq - r.nonbest) <= 5e-4 + 3 * d.std_error);
    MESSAGE("n=" << r.n << " j=" << r.j << " P(L) quad " << pq << " mc " << p.value << " se " << p.std_error
                 << "  E[N*] quad " << dq << " mc " << d.value << " se " << d.std_error);
    CHECK(p.replications == plan.replications);
  }
}

TEST_CASE("formulas against a direct simulation of the first rounds") {
  for (auto [n, j] : {std::pair{5, 2}, std::pair{4, 1}, std::pair{8, 3}}) {
    const auto sim = simulate_vt_ee(n, j, 400'000, 77u + n);
    const double pq = oracle::integrate01([n = n, j = j](double u) { return best_elim_formula(n, j, u); });
    const double dq = (n - 1) * oracle::integrate01([n = n, j = j](double u) { return nonbest_formula(n, j, u); });
    CHECK(std::abs(sim.best_rate - pq) <= 3 * sim.best_se);
    CHECK(std::abs(sim.nonbest_mean - dq) <= 3 * sim.nonbest_se);
  }
}

TEST_CASE("play-the-winner closed forms") {
  CHECK(pw_ee_best_elim_prob(10, 5) == doctest::Approx(0.000333).epsilon(1e-3));
  CHECK(std::abs(pw_ee_nonbest_mean(10, 5) - 1.666) < 5e-4);
  for (int j : {1, 3, 8}) {
    CHECK(pw_ee_best_elim_prob(1, j) == doctest::Approx(1.0 / (j + 1)).epsilon(1e-13));
    CHECK(std::abs(pw_ee_nonbest_mean(1, j)) < 1e-13);
  }
  for (auto [n, j] : {std::pair{2, 1}, std::pair{5, 6}, std::pair{10, 5}, std::pair{30, 2}}) {
    const double q = oracle::integrate01([n = n, j = j](double p) { return n * std::pow(p, n - 1) * std::pow(1 - p, j); });
    CHECK(std::abs(pw_ee_best_elim_prob(n, j) - q) < 1e-10);
    CHECK(std::abs(pw_ee_nonbest_mean(n, j) - (double(n) / (j + 1) - q)) < 1e-10);
  }
  CHECK(std::isfinite(pw_ee_best_elim_prob(500, 300)));
  CHECK(pw_ee_best_elim_prob(500, 300) > 0.0);
  CHECK(std::isfinite(pw_ee_nonbest_mean(500, 300)));
}

TEST_CASE("control-variate mean") {
  CHECK(std::abs(control_variate_mean(2) - M_PI * M_PI / 3) < 1e-4);
  for (int n : {2, 3, 5, 10, 20}) {
    const double q = n * (n - 1) *
                     oracle::integrate01([n](double x) { return -std::pow(x, n - 2) * std::log(x) / (1 - x); });
    CHECK(std::abs(control_variate_mean(n) - q) < 1e-6 * std::max(1.0, q));
    CHECK(std::abs(control_variate_mean(n, 2'000'000) - control_variate_mean(n)) < 1e-6 * std::max(1.0, q));
  }
}

}
