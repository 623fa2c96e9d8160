#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "puzzlemix/appendix.hpp"
#include "puzzlemix/stats.hpp"

using namespace puzzlemix;

TEST_CASE("bump function: support and unit mass") {
  CHECK(bump_phi(1.0) == 0.0);
  CHECK(bump_phi(2.0) == 0.0);
  CHECK(bump_phi(0.9) == 0.0);
  CHECK(bump_phi(1.5) > 0.0);
  // Simpson on a fine grid as an independent mass check
  const int steps = 4000;
  double acc = 0;
  for (int i = 0; i <= steps; ++i) {
    const double s = 1.0 + (double)i / steps;
    const double w = (i == 0 || i == steps) ? 1 : (i % 2 ? 4 : 2);
    acc += w * bump_phi(s);
  }
  acc /= 3.0 * steps;
  CHECK(acc == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("omega weights: mass, sup decay, derivative decay, window") {
  std::vector<double> sup_c, dsup_c, eps_t, neg_log_mass;
  for (double t : {50.0, 100.0, 200.0}) {
    const auto wt = omega_weights(t);
    CHECK(std::abs(wt.sum() - 1.0) < 1e-8);
    for (double w : wt.omega) CHECK(w >= 0.0);
    sup_c.push_back(wt.sup() * t);
    dsup_c.push_back(wt.derivative_sup() * t * t);
    const double outside = 1.0 - wt.window_mass(0.1);
    CHECK(outside < 1.0);
    CHECK(outside > 0.0);
    eps_t.push_back(0.1 * t);
    neg_log_mass.push_back(-std::log(outside));
  }
  // sup omega_t <= C/t with C stable across t
  CHECK(*std::max_element(sup_c.begin(), sup_c.end()) /
            *std::min_element(sup_c.begin(), sup_c.end()) <
        2.0);
  // |D omega_t| <= C'/t^2 with C' stable
  CHECK(*std::max_element(dsup_c.begin(), dsup_c.end()) /
            *std::min_element(dsup_c.begin(), dsup_c.end()) <
        4.0);
  // mass outside [(1-eps)t, (2+eps)t] <= e^{-c eps t}: the regression of
  // -log(mass) on eps*t fits a positive rate, and the mass decreases in t
  CHECK(fit_line(eps_t, neg_log_mass).slope > 0.05);
  CHECK(neg_log_mass[0] < neg_log_mass[1]);
  CHECK(neg_log_mass[1] < neg_log_mass[2]);
  CHECK_THROWS_AS(omega_weights(5.0), std::invalid_argument);
}

TEST_CASE("poisson window approximation") {
  // k = t: the Gaussian factor is exactly 1/sqrt(2 pi k)
  const auto eq = poisson_window_check(1000.0, 1000);
  CHECK(eq.stirling ==
        doctest::Approx(1.0 / std::sqrt(2 * M_PI * 1000)).epsilon(1e-12));
  // large k on the diagonal: relative error below 1e-3
  const auto big = poisson_window_check(10000.0, 10000);
  CHECK(std::abs(big.rel_err) < 1e-3);
  // error consistent with O(1/k + |t-k|^3/k^2) across the window
  for (std::int64_t k : {100, 1000, 10000}) {
    for (double off : {0.0, 0.5, 1.0}) {
      const double t = (double)k + off * std::pow((double)k, 0.6);
      const auto pw = poisson_window_check(t, k);
      const double scale =
          1.0 / k + std::pow(std::abs(t - k), 3.0) / ((double)k * k);
      CHECK(std::abs(pw.rel_err) <= 5.0 * scale);
    }
  }
  CHECK_THROWS_AS(poisson_window_check(2000.0, 1000), std::invalid_argument);
}

TEST_CASE("heat kernel concentration bounds") {
  for (double t : {100.0, 1000.0})
    for (double eps : {0.1, 0.3}) {
      const double lower = poisson_lower_tail(t, (1.0 - eps) * t);
      CHECK(lower <= std::exp(-heat_kernel_rate(-eps) * t));
      const double upper =
          1.0 - poisson_lower_tail(t, std::ceil((1.0 + eps) * t) - 1.0);
      CHECK(upper <= std::exp(-heat_kernel_rate(eps) * t));
    }
  // f(eps) = (1+eps)log(1+eps) - eps behaves like eps^2/2 near zero
  CHECK(heat_kernel_rate(0.0) == 0.0);
  CHECK(heat_kernel_rate(1e-3) ==
        doctest::Approx(0.5e-6).epsilon(1e-2));
}

TEST_CASE("concentration validators all hold") {
  const auto rep = concentration_validators(0xA11CE);
  CHECK(rep["reflection_maximal"]["holds"].get<bool>());
  CHECK(rep["reflection_maximal"]["identity_exact_at_odd_levels"].get<bool>());
  CHECK(rep["reflection_maximal"]["max_tail_dominated"].get<bool>());
  CHECK(rep["chernoff_variant_geometric"]["holds"].get<bool>());
  CHECK(rep["bernoulli_tail"]["holds"].get<bool>());
  CHECK(rep["heat_kernel_concentration"]["holds"].get<bool>());
  // enumeration rows carry the exactness pattern at half-integer levels
  bool any_exact = false, all_dominated = true;
  for (const auto& row : rep["reflection_maximal"]["enumeration_n10"]) {
    any_exact = any_exact || row["exact"].get<bool>();
    all_dominated =
        all_dominated && row["p_max"].get<double>() <=
                             row["two_p_end"].get<double>() + 1e-15;
  }
  CHECK(any_exact);
  CHECK(all_dominated);
  // lambda -> 0 trivial satisfaction: the Bernoulli bound exceeds 1
  const auto& bern = rep["bernoulli_tail"]["rows"][0];
  CHECK(bern["lambda"].get<double>() == 0.0);
  CHECK(bern["bound"].get<double>() >= 1.0);
}
