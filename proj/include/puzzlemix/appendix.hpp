#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <vector>

#include "puzzlemix/rng.hpp"

namespace puzzlemix {

// Normalized smooth bump supported in [1,2]: exp(-1/(1-u^2)) with
// u = 2s-3, scaled to unit mass.
double bump_phi(double s);

// Laplace-transform weights omega_t(k) = int phi(s) e^{-st}(st)^k/Gamma(k+1) ds
// expressing Phi_t = sum_k omega_t(k) P^k.
struct WeightTable {
  double t = 0;
  int kmin = 0, kmax = 0;
  std::vector<double> omega;  // k = kmin..kmax

  double at(std::int64_t k) const {
    return (k < kmin || k > kmax) ? 0.0 : omega[k - kmin];
  }
  double sum() const;
  double sup() const;
  double derivative_sup() const;  // sup_k |omega(k+1) - omega(k)|
  // mass of k in [(1-eps)t, (2+eps)t]
  double window_mass(double eps) const;
};

// Quadrature evaluation over the given k range (t >= 10); with one
// argument the range [0, ceil(4t)] captures all but a certified-negligible
// tail.
WeightTable omega_weights(double t, int kmin, int kmax);
WeightTable omega_weights(double t);

// Poisson point mass vs the Stirling window approximation
// e^{-(t-k)^2/(2k)} / sqrt(2 pi k); requires |t-k| < k^(2/3).
struct PoissonWindow {
  double exact;
  double stirling;
  double rel_err;
};
PoissonWindow poisson_window_check(double t, std::int64_t k);

// P(Pois(t) <= m), evaluated by the regularized incomplete gamma.
double poisson_lower_tail(double t, double m);
// f(eps) = (1+eps) log(1+eps) - eps, the heat-kernel tail exponent.
double heat_kernel_rate(double eps);

// Numerical validators of the concentration inequalities: reflection
// maximal identity/bounds for the +-1 walk, the Chernoff variant for
// geometric sums, and the Bernoulli tail bound. Emits a JSON report keyed
// by lemma name; every `holds` flag must be true (the statements are
// theorems).
nlohmann::json concentration_validators(std::uint64_t seed);

}  // namespace puzzlemix
