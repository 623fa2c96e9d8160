#pragma once

#include <vector>

namespace puzzlemix {

// Dirichlet kernel D_N on R/Z, normalized so that D_N(0) = 1 and
// \hat{D}_N(k) = 1(|k| <= N)/(2N+1). For x != 0,
//   D_N(x) = sin((2N+1) pi x) / ((2N+1) sin(pi x)).
// x is reduced to (-1/2, 1/2] internally.
double dirichlet_kernel(int N, double x);

// Theta function on the unit torus,
//   theta_t(x) = sum_{k in Z^2} exp(-2 pi^2 t |k|^2) e(k.x),
// the distribution of Brownian motion on (R/Z)^2 at time t (B(1) has
// identity covariance). Evaluated by a truncated Gaussian series whose
// dropped mass is certified below `tol`; the 2-d sum factors into two 1-d
// series.
class ThetaEvaluator {
 public:
  explicit ThetaEvaluator(double t, double tol = 1e-12);

  double operator()(double x, double y) const;
  double at_zero() const { return (*this)(0.0, 0.0); }

  double t() const { return t_; }
  int truncation() const { return K_; }
  double tail_bound() const { return tail_; }

 private:
  double line(double u) const;  // 1 + 2 sum_k coef_[k] cos(2 pi k u)

  double t_;
  int K_;
  double tail_;
  std::vector<double> coef_;  // exp(-2 pi^2 t k^2), k = 1..K
};

inline double theta(double t, double x, double y) {
  return ThetaEvaluator(t)(x, y);
}

}  // namespace puzzlemix
