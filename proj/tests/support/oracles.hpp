#pragma once

// Reference implementations used only by the tests. None of them call the
// library's closed forms; random oracles use std::mt19937_64 and <random>
// distributions rather than the library's Philox streams.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

// Lazy random walk on -k..k started at 0: +1 with probability x(1-y),
// -1 with probability y(1-x), else stay. Solves the absorption equations
// with the Thomas algorithm in long double.
struct Absorption {
  long double win = 0;
  long double rounds = 0;
};

inline Absorption ruin_absorption(double x, double y, int k) {
  const long double up = static_cast<long double>(x) * (1 - static_cast<long double>(y));
  const long double down = static_cast<long double>(y) * (1 - static_cast<long double>(x));
  const long double stay = 1 - up - down;
  const int m = 2 * k - 1;  // interior states -k+1..k-1
  auto solve = [&](std::vector<long double> rhs) {
    // (1 - stay) v_i - up v_{i+1} - down v_{i-1} = rhs_i
    std::vector<long double> c(m), d(m);
    const long double diag = 1 - stay;
    for (int i = 0; i < m; ++i) {
      const long double a = i > 0 ? -down : 0;
      const long double denom = diag - (i > 0 ? a * c[i - 1] : 0);
      c[i] = -up / denom;
      d[i] = (rhs[i] - (i > 0 ? a * d[i - 1] : 0)) / denom;
    }
    std::vector<long double> v(m);
    for (int i = m - 1; i >= 0; --i) v[i] = d[i] - (i + 1 < m ? c[i] * v[i + 1] : 0);
    return v;
  };
  std::vector<long double> rhs_win(m, 0), rhs_time(m, 1);
  rhs_win[m - 1] = up;  // step into +k
  const auto win = solve(rhs_win);
  const auto time = solve(rhs_time);
  return {win[k - 1], time[k - 1]};
}

// Two-arm play-the-winner game built from geometric run lengths
// P(X = j) = q p^j. The leader's plays in the last round stop as soon as it
// is k ahead; the other arm plays through its failure.
struct PwGameSample {
  bool first_wins = false;
  long rounds = 0;
  long plays = 0;
  long walk_end = 0;  // S at stopping
};

inline PwGameSample pw_game(double p1, double p2, int k, std::mt19937_64& rng) {
  std::geometric_distribution<long> g1(1.0 - p1), g2(1.0 - p2);
  PwGameSample s;
  long walk = 0;
  for (;;) {
    ++s.rounds;
    const long x1 = g1(rng);
    const long x2 = g2(rng);
    if (walk + x1 - x2 >= k) {
      s.first_wins = true;
      s.plays += (x2 + 1) + (k - walk + x2);
      s.walk_end = walk + x1 - x2;
      return s;
    }
    if (walk + x1 - x2 <= -k) {
      s.plays += (x1 + 1) + (k + walk + x1);
      s.walk_end = walk + x1 - x2;
      return s;
    }
    s.plays += x1 + x2 + 2;
    walk += x1 - x2;
  }
}

// Gaussian random walk with N(mu, 1) increments until |S| >= b.
struct WalkSample {
  bool up = false;
  long steps = 0;
};

inline WalkSample normal_walk(double mu, double b, std::mt19937_64& rng, double sd = 1.0) {
  std::normal_distribution<double> step(mu, sd);
  WalkSample w;
  double s = 0;
  while (std::abs(s) < b) {
    s += step(rng);
    ++w.steps;
  }
  w.up = s >= b;
  return w;
}

// Two-sample Kolmogorov-Smirnov p-value (asymptotic distribution).
inline double ks_two_sample_p(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d;
  if (lambda < 0.2) return 1.0;  // series converges too slowly; p is 1 to double precision
  double sum = 0;
  for (int k = 1; k <= 100; ++k) sum += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(sum, 0.0, 1.0);
}

template <class F>
double integrate01(F f, double tol = 1e-13) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, 0.0, 1.0, tol);
}

template <class F>
double integrate(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

// Non-adaptive composite 30-point Gauss-Legendre rule on equal panels.
template <class F>
double integrate_panels(F f, double a, double b, int panels = 12) {
  double sum = 0;
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i)
    sum += boost::math::quadrature::gauss<double, 30>::integrate(f, a + i * h, a + (i + 1) * h);
  return sum;
}

// Product rule over the unit square.
template <class F>
double integrate_unit_square(F f, int panels = 12) {
  return integrate_panels([&](double u) { return integrate_panels([&](double v) { return f(u, v); }, 0.0, 1.0, panels); },
                          0.0, 1.0, panels);
}

inline double phi_cdf(double x) { return boost::math::cdf(boost::math::normal_distribution<double>(), x); }
inline double phi_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

// Mean and standard error of a sample.
struct Summary {
  double mean = 0;
  double se = 0;
};

inline Summary summarize(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
}

}  // namespace oracle
