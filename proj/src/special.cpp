#include "puzzlemix/special.hpp"

#include <cmath>
#include <stdexcept>

namespace puzzlemix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double dirichlet_kernel(int N, double x) {
  if (N < 1) throw std::invalid_argument("dirichlet_kernel: N must be >= 1");
  // reduce x to (-1/2, 1/2]
  x -= std::floor(x);
  if (x > 0.5) x -= 1.0;
  if (x == 0.0) return 1.0;
  const double s = std::sin(kPi * x);
  if (std::abs(s) > 1e-9)
    return std::sin((2 * N + 1) * kPi * x) / ((2 * N + 1) * s);
  // near the removable singularity fall back to the cosine sum
  double acc = 1.0;
  for (int j = 1; j <= N; ++j) acc += 2.0 * std::cos(2.0 * kPi * j * x);
  return acc / (2 * N + 1);
}

ThetaEvaluator::ThetaEvaluator(double t, double tol) : t_(t) {
  if (!(t > 0)) throw std::invalid_argument("theta: t must be positive");
  const double a = 2.0 * kPi * kPi * t;
  // 1-d partial sum and a geometric bound on its tail
  double s1 = 1.0;
  int K = 0;
  for (;;) {
    ++K;
    const double c = std::exp(-a * K * K);
    coef_.push_back(c);
    s1 += 2.0 * c;
    const double ratio = std::exp(-a * (2.0 * K + 3.0));
    const double tail1 = 2.0 * std::exp(-a * (K + 1.0) * (K + 1.0)) /
                         (1.0 - ratio);
    // dropped 2-d mass: (s1 + tail1)^2 - s1^2
    const double tail2 = tail1 * (2.0 * s1 + tail1);
    if (tail2 < tol && K >= 2) {
      K_ = K;
      tail_ = tail2;
      break;
    }
    if (K > 10000)
      throw std::runtime_error("theta: truncation did not certify");
  }
}

double ThetaEvaluator::line(double u) const {
  double acc = 1.0;
  for (int k = 1; k <= K_; ++k)
    acc += 2.0 * coef_[k - 1] * std::cos(2.0 * kPi * k * u);
  return acc;
}

double ThetaEvaluator::operator()(double x, double y) const {
  const double v = line(x) * line(y);
  if (v < 0.0 && v > -tail_) return 0.0;
  return v;
}

}  // namespace puzzlemix
