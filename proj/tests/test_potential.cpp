#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "puzzlemix/potential.hpp"
#include "puzzlemix/rng.hpp"

using namespace puzzlemix;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Richardson extrapolation assuming value(n) = a + b/n^2
double extrapolate(double v1, int n1, double v2, int n2) {
  const double w1 = 1.0 / (n1 * n1), w2 = 1.0 / (n2 * n2);
  return (v2 * w1 - v1 * w2) / (w1 - w2);
}
}  // namespace

TEST_CASE("normalization and dihedral symmetry") {
  for (int n : {3, 9, 16}) {
    PotentialTable g(n);
    CHECK(g.at(0, 0) == 0.0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const double v = g.at(x, y);
        CHECK(g.at(y, x) == doctest::Approx(v).epsilon(1e-9));
        CHECK(g.at(-x, y) == doctest::Approx(v).epsilon(1e-9));
        CHECK(g.at(x, -y) == doctest::Approx(v).epsilon(1e-9));
      }
  }
  CHECK_THROWS_AS(PotentialTable(2), std::invalid_argument);
}

TEST_CASE("defining equation of the table") {
  const int n = 12;
  PotentialTable g(n);
  const Torus t(n);
  for (int cell = 0; cell < n * n; ++cell) {
    const TorusPoint p = t.cell(cell);
    double lap = -g.at(p.x, p.y);
    for (int dir = 0; dir < 4; ++dir) {
      const TorusPoint q = t.neighbor(p, dir);
      lap += 0.25 * g.at(q.x, q.y);
    }
    const double want = (cell == 0 ? 1.0 : 0.0) - 1.0 / (n * n);
    CHECK(lap == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("return probability ratios at n=64") {
  PotentialTable g(64);
  const auto p = return_probabilities(g);
  const auto lim = limit_return_probabilities();
  CHECK(std::abs(p.right - lim.right) < 0.005);
  CHECK(std::abs(p.vertical - lim.vertical) < 0.005);
  CHECK(std::abs(p.left - lim.left) < 0.005);
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("large-n limits of the kernel values") {
  PotentialTable g32(32), g64(64), g128(128);
  const double g10 = extrapolate(g64.at(1, 0), 64, g128.at(1, 0), 128);
  const double g11 = extrapolate(g64.at(1, 1), 64, g128.at(1, 1), 128);
  const double g20 = extrapolate(g64.at(2, 0), 64, g128.at(2, 0), 128);
  CHECK(g10 == doctest::Approx(1.0).epsilon(2e-4));
  CHECK(g11 == doctest::Approx(4.0 / kPi).epsilon(2e-4));
  CHECK(g20 == doctest::Approx(4.0 - 8.0 / kPi).epsilon(2e-4));

  // deviations of the ratios from the limits at least halve per doubling
  const auto lim = limit_return_probabilities();
  const double d32 = std::abs(return_probabilities(g32).left - lim.left);
  const double d64 = std::abs(return_probabilities(g64).left - lim.left);
  const double d128 = std::abs(return_probabilities(g128).left - lim.left);
  CHECK(d64 < 0.6 * d32);
  CHECK(d128 < 0.6 * d64);
}

TEST_CASE("Monte-Carlo first-return directions match the formulas") {
  // lighter version of the acceptance run: n=50, 2e4 trials
  const int n = 50;
  const std::int64_t trials = 20000;
  Rng rng(0xFEED);
  std::int64_t dir_counts[4] = {0, 0, 0, 0};
  for (std::int64_t k = 0; k < trials; ++k) {
    int x = 1, y = 0;
    for (;;) {
      const std::uint32_t u = rng.below(5);
      if (u == 4) continue;
      int tx = x, ty = y;
      switch (u) {
        case 0: tx = tx + 1 == n ? 0 : tx + 1; break;
        case 1: tx = tx == 0 ? n - 1 : tx - 1; break;
        case 2: ty = ty + 1 == n ? 0 : ty + 1; break;
        default: ty = ty == 0 ? n - 1 : ty - 1; break;
      }
      if (tx == 0 && ty == 0) {
        if (x == 1 && y == 0) ++dir_counts[0];
        else if (x == n - 1 && y == 0) ++dir_counts[1];
        else if (x == 0 && y == 1) ++dir_counts[2];
        else ++dir_counts[3];
        break;
      }
      x = tx;
      y = ty;
    }
  }
  const auto lim = limit_return_probabilities();
  CHECK(std::abs((double)dir_counts[0] / trials - lim.right) < 0.02);
  CHECK(std::abs((double)dir_counts[1] / trials - lim.left) < 0.02);
  CHECK(std::abs((double)dir_counts[2] / trials - lim.vertical) < 0.02);
  CHECK(std::abs((double)dir_counts[3] / trials - lim.vertical) < 0.02);
}

TEST_CASE("csv export") {
  PotentialTable g(3);
  std::ostringstream os;
  g.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "x,y,G");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 9);
}
