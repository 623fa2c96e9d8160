#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "puzzlemix/chains.hpp"

namespace puzzlemix {

// Eigenvalues (descending) of a symmetric chain together with the overlap
// coefficients c_i = <v_i, e_ref> for a reference state.
struct SpectrumSummary {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd overlaps;
};

// ---------------------------------------------------------------------------
// Resolvent numerics for the 1/5-lazy walk on (Z/nZ)^2 with the origin
// removed: P' is P without the origin's row and column, indexed by cell
// order (x + n*y) with the origin skipped, and R(z) = (I - zP')^{-1}.
//
// hitting_char_fun evaluates the hitting-time transform from (1,0) to the
// origin,
//   chi(z) = (z/5) e_{(1,0)}^t R(z) (e_{(1,0)}+e_{(-1,0)}+e_{(0,1)}+e_{(0,-1)}),
// and joint_char_fun the two-variable transform
//   chi(xi1, xi2) = w(z1,z2)^t (I - R(z2) M(z1,z2))^{-1} R(z2) v
// of (H_1, r_1), with z1 = e(xi1/n), z2 = e(xi2).
// ---------------------------------------------------------------------------
class ResolventModel {
 public:
  explicit ResolventModel(int n);

  int n() const { return n_; }
  int dim() const { return (int)pp_.rows(); }
  // deleted-state index of a nonzero cell
  int index(int x, int y) const;
  const Eigen::MatrixXd& p_prime() const { return pp_; }

  std::complex<double> hitting_char_fun(double xi) const;
  std::complex<double> chi_at(std::complex<double> z) const;

  // chi'(1) = 1 + (1/5) e^t R(1) P' R(1) v via two real solves.
  double expected_hitting_time() const;
  // One-sided Richardson differentiation of chi along real z; agrees with
  // the resolvent-derivative formula to ~1e-6 relative.
  double expected_hitting_time_numeric() const;

  std::complex<double> joint_char_fun(int xi1, double xi2) const;

 private:
  int n_;
  Eigen::MatrixXd pp_;
  std::vector<int> cell_to_idx_;
};

// Full spectrum of P' with overlaps at (1,0).
SpectrumSummary p_prime_spectrum(int n);

struct EigenSums {
  double s1;  // sum c^2 / (1 - lambda)
  double s2;  // sum c^2 / (1 - lambda)^2
  double completeness;  // sum c^2
};
EigenSums eigen_sums(int n);

// ---------------------------------------------------------------------------
// d2 spectral identity. The uniform-start average of the squared d2
// distance ||e_y^t P^N - U||^2_{d2} equals sum_{i>=1} lambda_i^{2N}
// (Plancherel); lhs is that average computed from matrix powers and the
// d2 definition, rhs comes from an eigensolve. For a fixed single start
// the two sides differ on quotient chains such as P_d (the diagonal of
// P^{2N} is not constant across states), so per-start values are exposed
// separately.
// ---------------------------------------------------------------------------
struct D2Identity {
  double lhs;
  double rhs;
};
// start-averaged identity (exact for any symmetric chain)
D2Identity d2_identity_check(const ChainMatrix& chain, int N);
// squared d2 distance from one start after N steps
double d2_from_start(const ChainMatrix& chain, int start, int N);

// ---------------------------------------------------------------------------
// P_{d,M} spectrum: analytic eigenvalue multiset
//   lambda_a = 1/2 + (1/2) 1(a_{d+1}=0) prod_j D_M(a_{j,1}/n) D_M(a_{j,2}/n)
// and the spectral sum  sum_{lambda != 1} lambda^{c (n/M)^2}.
// ---------------------------------------------------------------------------
std::vector<double> pdm_spectrum(int n, int d, int M);
double pdm_spectral_sum(int n, int d, int M, double c);

// ---------------------------------------------------------------------------
// Dirichlet form E(f,f) = <(I-P)f, f>_pi = (1/2) sum (f(x)-f(y))^2 pi(x)P(x,y)
// for a symmetric chain with uniform stationary measure. Both expressions
// are evaluated; they must agree to 1e-10.
// ---------------------------------------------------------------------------
double dirichlet_form(const Eigen::MatrixXd& P, const Eigen::VectorXd& f);

// A nonnegatively weighted quadratic edge form
//   E(f,f) = (1/2) sum_{x,y} w(x,y) (f(x)-f(y))^2,  w symmetric.
struct EdgeForm {
  int size = 0;
  std::map<std::pair<int, int>, double> weight;  // directed, symmetric

  void add(int x, int y, double w);  // adds w to both directions
  double operator()(const Eigen::VectorXd& f) const;
};

EdgeForm edge_form_of_chain(const Eigen::MatrixXd& P);  // w = pi(x)P(x,y)

// Comparison constant of Theorem 2.1:
//   A = max_{(z,w): P(z,w)>0} (1/(pi(z)P(z,w)))
//         sum_{(x,y) paths through (z,w)} |gamma_xy| w_tilde(x,y).
// `paths` must provide, for every weighted pair (x,y) with x < y, a state
// path x = s_0, s_1, ..., s_k = y along edges of P. Throws (naming the
// edge) if one is missing.
double comparison_constant(
    const EdgeForm& tilde, const Eigen::MatrixXd& P,
    const std::map<std::pair<int, int>, std::vector<int>>& paths);

// ---------------------------------------------------------------------------
// P_{d,s} vs P_d comparison at d = 1. Functions on the marginal space are
// extended to the symmetrized space by averaging over piece moves at
// blank-overlap states; the restricted form E'(f,f) = E_{d,s}(ext f, ext f)
// is dominated (Cauchy-Schwarz) by a nonnegative edge form on the marginal
// space, which Theorem 2.1 with constructed paths compares to E_d.
// ---------------------------------------------------------------------------
struct SymmetrizedComparison {
  double A = 0;            // path-comparison constant for the edge form
  double B = 0;            // max_i (1 - lambda_{i,s}) / (1 - lambda_i)
  double worst_ratio = 0;  // max over sampled f of E'(f,f) / (A E_d(f,f))
  int samples = 0;
};
SymmetrizedComparison symmetrized_comparison(int n, std::uint64_t seed,
                                             int samples);

// ---------------------------------------------------------------------------
// Partial-trace fixed-point moment E_d on the d-piece marginal chain:
// exact expectation, from the start with pieces at x_1..x_d and the blank
// at its home, of the product indicator that all d pieces are back at
// x_1..x_d after N steps, summed over ordered starts and divided by d!.
// ---------------------------------------------------------------------------
double partial_trace_moment(int n, int d, int N);
double partial_trace_moment_limit(int n, int d);  // N -> infinity value

}  // namespace puzzlemix
