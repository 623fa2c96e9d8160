#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "puzzlemix/special.hpp"

using namespace puzzlemix;

namespace {

constexpr double kPi = 3.14159265358979323846;

// independent oracle: direct lattice sum over |k1|,|k2| <= K
double theta_oracle(double t, double x, double y, int K) {
  double acc = 0;
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2)
      acc += std::exp(-2.0 * kPi * kPi * t * (k1 * k1 + k2 * k2)) *
             std::cos(2.0 * kPi * (k1 * x + k2 * y));
  return acc;
}

double dirichlet_cosine_sum(int N, double x) {
  double acc = 1.0;
  for (int j = 1; j <= N; ++j) acc += 2.0 * std::cos(2.0 * kPi * j * x);
  return acc / (2 * N + 1);
}

}  // namespace

TEST_CASE("Dirichlet kernel normalization and closed form") {
  for (int N : {1, 4, 16, 64}) CHECK(dirichlet_kernel(N, 0.0) == 1.0);
  // D_1(1/2) = (1/3)(1 + 2 cos pi) = -1/3
  CHECK(dirichlet_kernel(1, 0.5) == doctest::Approx(-1.0 / 3).epsilon(1e-12));
  // matches the cosine sum everywhere
  for (int N : {2, 5, 9})
    for (double x = -0.5; x <= 0.5; x += 0.01)
      CHECK(dirichlet_kernel(N, x) ==
            doctest::Approx(dirichlet_cosine_sum(N, x)).epsilon(1e-10));
  // x is reduced mod 1
  CHECK(dirichlet_kernel(3, 1.25) ==
        doctest::Approx(dirichlet_kernel(3, 0.25)).epsilon(1e-12));
}

TEST_CASE("Dirichlet kernel quadratic bound near zero") {
  // |D_N(x)| <= 1 - c N^2 x^2 for |x| <= 1/(2N), with one fitted c > 0
  double c_fit = 1e18;
  for (int N : {4, 16, 64}) {
    for (int i = 1; i <= 50; ++i) {
      const double x = i / 50.0 / (2.0 * N);
      const double d = std::abs(dirichlet_kernel(N, x));
      c_fit = std::min(c_fit, (1.0 - d) / (N * N * x * x));
    }
  }
  CHECK(c_fit > 0.5);
  CHECK(c_fit < 10.0);
}

TEST_CASE("Dirichlet kernel bounded away from 1 off zero") {
  // for eps/N <= |x| <= 1/2 a uniform gap c(eps) > 0 exists
  const double eps = 0.5;
  double gap = 1e18;
  for (int N : {4, 16, 64}) {
    for (int i = 0; i <= 400; ++i) {
      const double x = eps / N + (0.5 - eps / N) * i / 400.0;
      gap = std::min(gap, 1.0 - std::abs(dirichlet_kernel(N, x)));
    }
  }
  CHECK(gap > 0.01);
}

TEST_CASE("theta evaluator against the direct lattice sum") {
  for (double t : {0.1, 0.5, 1.0}) {
    ThetaEvaluator theta(t);
    CHECK(theta.tail_bound() < 1e-12);
    for (double x : {0.0, 0.1, 0.37, 0.5})
      for (double y : {0.0, 0.2, 0.5})
        CHECK(theta(x, y) ==
              doctest::Approx(theta_oracle(t, x, y, 6)).epsilon(1e-10));
  }
  // frozen oracle value (K = 6, tail-certified)
  CHECK(theta_oracle(0.1, 0, 0, 6) == doctest::Approx(1.6347337).epsilon(1e-6));
  CHECK(theta(0.1, 0.0, 0.0) == doctest::Approx(1.6347337).epsilon(1e-6));
}

TEST_CASE("theta symmetry, maximum at zero, unit mass") {
  ThetaEvaluator theta(0.1);
  const int n = 24;
  double mean = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = theta(double(i) / n, double(j) / n);
      CHECK(v >= 0.0);
      CHECK(v <= theta.at_zero() + 1e-12);
      CHECK(v == doctest::Approx(theta(-double(i) / n, -double(j) / n))
                     .epsilon(1e-12));
      mean += v;
    }
  // grid average of the density is the zero Fourier mode
  CHECK(mean / (n * n) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("theta flattens to 1 for large t and rejects t <= 0") {
  ThetaEvaluator theta(5.0);
  for (double x : {0.0, 0.3, 0.5})
    CHECK(theta(x, 0.5 - x) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(ThetaEvaluator(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ThetaEvaluator(-1.0), std::invalid_argument);
}
