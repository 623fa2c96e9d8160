#include "puzzlemix/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "puzzlemix/special.hpp"

namespace puzzlemix {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

// ---------------------------------------------------------------------------
// ResolventModel
// ---------------------------------------------------------------------------

ResolventModel::ResolventModel(int n) : n_(n), cell_to_idx_(n * n, -1) {
  const Torus t(n);
  const int m = n * n - 1;
  // lex cell order minus the origin
  int next = 0;
  for (int cell = 1; cell < n * n; ++cell) cell_to_idx_[cell] = next++;
  pp_ = Eigen::MatrixXd::Zero(m, m);
  for (int cell = 1; cell < n * n; ++cell) {
    const int row = cell_to_idx_[cell];
    pp_(row, row) += 0.2;
    for (int dir = 0; dir < 4; ++dir) {
      const int nb = t.index(t.neighbor(t.cell(cell), dir));
      if (nb == 0) continue;  // transitions into the origin are deleted
      pp_(row, cell_to_idx_[nb]) += 0.2;
    }
  }
}

int ResolventModel::index(int x, int y) const {
  const Torus t(n_);
  const int cell = t.index(t.wrap(TorusPoint{x, y}));
  const int idx = cell_to_idx_[cell];
  if (idx < 0) throw std::invalid_argument("ResolventModel: origin deleted");
  return idx;
}

std::complex<double> ResolventModel::chi_at(std::complex<double> z) const {
  const int m = dim();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(m);
  rhs[index(1, 0)] += 1.0;
  rhs[index(-1, 0)] += 1.0;
  rhs[index(0, 1)] += 1.0;
  rhs[index(0, -1)] += 1.0;
  Eigen::MatrixXcd A =
      Eigen::MatrixXcd::Identity(m, m) - z * pp_.cast<std::complex<double>>();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const Eigen::VectorXcd x = lu.solve(rhs);
  const double err = (A * x - rhs).norm();
  if (!(err < 1e-6 * (1.0 + rhs.norm())))
    throw std::runtime_error("hitting_char_fun: near-singular solve");
  return z / 5.0 * x[index(1, 0)];
}

std::complex<double> ResolventModel::hitting_char_fun(double xi) const {
  return chi_at(std::polar(1.0, kTwoPi * xi));
}

double ResolventModel::expected_hitting_time() const {
  const int m = dim();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
  v[index(1, 0)] += 1.0;
  v[index(-1, 0)] += 1.0;
  v[index(0, 1)] += 1.0;
  v[index(0, -1)] += 1.0;
  const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m) - pp_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::VectorXd r1v = lu.solve(v);            // R(1) v
  const Eigen::VectorXd rpr = lu.solve(pp_ * r1v);    // R(1) P' R(1) v
  return 1.0 + 0.2 * rpr[index(1, 0)];
}

double ResolventModel::expected_hitting_time_numeric() const {
  // chi is rational in z, so the complex-step derivative
  // Im chi(1 + ih)/h evaluates chi'(1) without subtractive cancellation
  const double h = 1e-8;
  return chi_at(std::complex<double>(1.0, h)).imag() / h;
}

std::complex<double> ResolventModel::joint_char_fun(int xi1, double xi2) const {
  using C = std::complex<double>;
  const int m = dim();
  const C z1 = std::polar(1.0, kTwoPi * xi1 / double(n_));
  const C z2 = std::polar(1.0, kTwoPi * xi2);

  Eigen::MatrixXcd A =
      Eigen::MatrixXcd::Identity(m, m) - z2 * pp_.cast<C>();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);

  const int i10 = index(1, 0);
  const int i_10 = index(-1, 0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m);
  v[index(0, 1)] = 0.2;
  v[index(0, -1)] = 0.2;

  const Eigen::VectorXcd u = lu.solve(v);            // R v
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
  e[i10] = 1.0;
  const Eigen::VectorXcd c1 = lu.solve(e);           // R e_{(1,0)}
  e[i10] = 0.0;
  e[i_10] = 1.0;
  const Eigen::VectorXcd c2 = lu.solve(e);           // R e_{(-1,0)}

  // M has entries m1 = z1 z2/5 at ((1,0) -> (-1,0)) and m2 = z2/(5 z1) at
  // ((-1,0) -> (1,0)), so R M has two nonzero columns and
  // x = (I - R M)^{-1} u reduces to a 2x2 system for x[(1,0)], x[(-1,0)]:
  //   x = u + m1 x[(-1,0)] c1 + m2 x[(1,0)] c2.
  const C m1 = z1 * z2 / 5.0;
  const C m2 = z2 / (5.0 * z1);
  // unknowns a = x[i10], b = x[i_10]
  //   a = u[i10]  + m1 b c1[i10]  + m2 a c2[i10]
  //   b = u[i_10] + m1 b c1[i_10] + m2 a c2[i_10]
  const C A11 = 1.0 - m2 * c2[i10];
  const C A12 = -m1 * c1[i10];
  const C A21 = -m2 * c2[i_10];
  const C A22 = 1.0 - m1 * c1[i_10];
  const C det = A11 * A22 - A12 * A21;
  if (std::abs(det) < 1e-12)
    throw std::runtime_error("joint_char_fun: near-singular 2x2 solve");
  const C a = (u[i10] * A22 - u[i_10] * A12) / det;
  const C b = (A11 * u[i_10] - A21 * u[i10]) / det;

  // w has z1 z2/2 at (-1,0) and z2/(2 z1) at (1,0)
  return z2 / (2.0 * z1) * a + z1 * z2 / 2.0 * b;
}

// ---------------------------------------------------------------------------
// Spectrum helpers
// ---------------------------------------------------------------------------

SpectrumSummary p_prime_spectrum(int n) {
  const ResolventModel rm(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rm.p_prime());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("p_prime_spectrum: eigensolve failed");
  const int m = rm.dim();
  SpectrumSummary out;
  out.eigenvalues.resize(m);
  out.overlaps.resize(m);
  const int ref = rm.index(1, 0);
  // Eigen returns ascending order; flip to descending.
  for (int i = 0; i < m; ++i) {
    out.eigenvalues[i] = es.eigenvalues()[m - 1 - i];
    out.overlaps[i] = es.eigenvectors()(ref, m - 1 - i);
  }
  return out;
}

EigenSums eigen_sums(int n) {
  const SpectrumSummary s = p_prime_spectrum(n);
  EigenSums out{0, 0, 0};
  for (int i = 0; i < s.eigenvalues.size(); ++i) {
    const double c2 = s.overlaps[i] * s.overlaps[i];
    const double gap = 1.0 - s.eigenvalues[i];
    out.s1 += c2 / gap;
    out.s2 += c2 / (gap * gap);
    out.completeness += c2;
  }
  return out;
}

// ---------------------------------------------------------------------------
// d2 identity
// ---------------------------------------------------------------------------

double d2_from_start(const ChainMatrix& chain, int start, int N) {
  const int size = (int)chain.size();
  Eigen::VectorXd row = Eigen::VectorXd::Zero(size);
  row[start] = 1.0;
  for (int i = 0; i < N; ++i) row = chain.P.transpose() * row;
  const double u = 1.0 / size;
  double acc = 0;
  for (int i = 0; i < size; ++i) acc += (row[i] - u) * (row[i] - u);
  return acc * size;
}

D2Identity d2_identity_check(const ChainMatrix& chain, int N) {
  const int size = (int)chain.size();
  // lhs: average over starts of the squared d2 distance, via matrix powers
  Eigen::MatrixXd PN = Eigen::MatrixXd::Identity(size, size);
  for (int i = 0; i < N; ++i) PN = PN * chain.P;
  const double u = 1.0 / size;
  double lhs = 0;
  for (int y = 0; y < size; ++y)
    for (int x = 0; x < size; ++x)
      lhs += (PN(y, x) - u) * (PN(y, x) - u);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(chain.P);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("d2_identity_check: eigensolve failed");
  double rhs = 0;
  for (int i = 0; i < size - 1; ++i)  // skip the top eigenvalue 1
    rhs += std::pow(es.eigenvalues()[i], 2 * N);
  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// P_{d,M}
// ---------------------------------------------------------------------------

std::vector<double> pdm_spectrum(int n, int d, int M) {
  if (M < 1 || 2 * M >= n)
    throw std::invalid_argument("pdm_spectrum: need 1 <= M < n/2");
  // 1-d multipliers D_M(k/n), k = 0..n-1
  std::vector<double> dm(n);
  for (int k = 0; k < n; ++k) dm[k] = dirichlet_kernel(M, double(k) / n);

  std::vector<double> lambda;
  lambda.reserve((std::size_t)std::pow((double)n * n, d + 1));
  // a_{d+1} != 0: eigenvalue 1/2, multiplicity n^{2d} (n^2 - 1)
  double count_pieces = std::pow((double)n * n, d);
  (void)count_pieces;
  std::vector<int> digits(2 * d, 0);
  const std::size_t piece_states = (std::size_t)std::pow((double)n, 2 * d);
  for (std::size_t it = 0; it < piece_states; ++it) {
    double prod = 1.0;
    for (int j = 0; j < 2 * d; ++j) prod *= dm[digits[j]];
    // a_{d+1} = 0 term
    lambda.push_back(0.5 + 0.5 * prod);
    // a_{d+1} != 0 terms
    for (int k = 0; k < n * n - 1; ++k) lambda.push_back(0.5);
    int c = 0;
    while (c < 2 * d && digits[c] == n - 1) digits[c++] = 0;
    if (c == 2 * d) break;
    ++digits[c];
  }
  return lambda;
}

double pdm_spectral_sum(int n, int d, int M, double c) {
  const auto lambda = pdm_spectrum(n, d, M);
  const double expo = c * double(n) * double(n) / (double(M) * double(M));
  double sum = 0;
  for (double l : lambda) {
    if (l >= 1.0 - 1e-14) continue;  // trivial character
    sum += std::pow(l, expo);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Dirichlet forms and comparison
// ---------------------------------------------------------------------------

double dirichlet_form(const Eigen::MatrixXd& P, const Eigen::VectorXd& f) {
  const int size = (int)P.rows();
  if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("dirichlet_form: chain is not reversible");
  const double pi = 1.0 / size;
  const double inner = pi * f.dot(f - P * f);
  double edges = 0;
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y) {
      if (P(x, y) == 0.0) continue;
      const double diff = f[x] - f[y];
      edges += diff * diff * pi * P(x, y);
    }
  edges *= 0.5;
  if (std::abs(inner - edges) > 1e-10 * (1.0 + std::abs(inner)))
    throw std::runtime_error("dirichlet_form: formulas disagree");
  return edges;
}

void EdgeForm::add(int x, int y, double w) {
  if (x == y || w == 0.0) return;
  weight[{x, y}] += w;
  weight[{y, x}] += w;
}

double EdgeForm::operator()(const Eigen::VectorXd& f) const {
  double acc = 0;
  for (const auto& [edge, w] : weight) {
    const double diff = f[edge.first] - f[edge.second];
    acc += w * diff * diff;
  }
  return 0.5 * acc;
}

EdgeForm edge_form_of_chain(const Eigen::MatrixXd& P) {
  EdgeForm form;
  form.size = (int)P.rows();
  const double pi = 1.0 / form.size;
  for (int x = 0; x < form.size; ++x)
    for (int y = x + 1; y < form.size; ++y)
      if (P(x, y) != 0.0) form.add(x, y, pi * P(x, y));
  return form;
}

double comparison_constant(
    const EdgeForm& tilde, const Eigen::MatrixXd& P,
    const std::map<std::pair<int, int>, std::vector<int>>& paths) {
  const int size = (int)P.rows();
  const double pi = 1.0 / size;
  // congestion per directed P-edge
  std::map<std::pair<int, int>, double> load;
  for (const auto& [edge, w] : tilde.weight) {
    if (edge.first > edge.second) continue;  // one orientation per pair
    auto it = paths.find(edge);
    if (it == paths.end())
      throw std::invalid_argument("comparison_constant: no path for edge (" +
                                  std::to_string(edge.first) + "," +
                                  std::to_string(edge.second) + ")");
    const auto& path = it->second;
    if (path.front() != edge.first || path.back() != edge.second)
      throw std::invalid_argument("comparison_constant: path endpoints wrong");
    const double len = double(path.size() - 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const int a = path[i], b = path[i + 1];
      if (P(a, b) == 0.0)
        throw std::invalid_argument(
            "comparison_constant: path uses a non-edge of P");
      // both orientations of the tilde-edge traverse the path; account
      // for the full symmetric weight on each P-edge orientation
      load[{a, b}] += len * w;
      load[{b, a}] += len * w;
    }
  }
  double A = 0;
  for (const auto& [edge, congestion] : load) {
    const double cap = pi * P(edge.first, edge.second);
    A = std::max(A, congestion / cap);
  }
  return A;
}

// ---------------------------------------------------------------------------
// Partial trace
// ---------------------------------------------------------------------------

namespace {

std::uint64_t piece_code(const Torus& t, std::uint64_t code, int d) {
  std::uint64_t base = (std::uint64_t)t.cells(), mult = 1, out = 0;
  for (int i = 0; i < d; ++i) {
    out += (code % base) * mult;
    code /= base;
    mult *= base;
  }
  return out;
}

}  // namespace

double partial_trace_moment(int n, int d, int N) {
  const ChainMatrix cm = build_matrix(ChainKind::Marginal, n, d);
  const Torus t(n);
  const int size = (int)cm.size();
  const int home = t.index(home_cell(n));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cm.P);
  Eigen::VectorXd powed(size);
  for (int i = 0; i < size; ++i)
    powed[i] = std::pow(es.eigenvalues()[i], N);
  const Eigen::MatrixXd PN =
      es.eigenvectors() * powed.asDiagonal() * es.eigenvectors().transpose();

  // group states by their piece tuple
  std::vector<std::uint64_t> pc(size);
  for (int i = 0; i < size; ++i) pc[i] = piece_code(t, cm.codes[i], d);

  double fact = 1;
  for (int i = 2; i <= d; ++i) fact *= i;

  double total = 0;
  const std::uint64_t base = (std::uint64_t)t.cells();
  std::uint64_t home_mult = 1;
  for (int i = 0; i < d; ++i) home_mult *= base;
  for (int s = 0; s < size; ++s) {
    // starts have the blank at home
    if (cm.codes[s] / home_mult != (std::uint64_t)home) continue;
    for (int y = 0; y < size; ++y)
      if (pc[y] == pc[s]) total += PN(s, y);
  }
  return total / fact;
}

double partial_trace_moment_limit(int n, int d) {
  double fact = 1;
  for (int i = 2; i <= d; ++i) fact *= i;
  return (n * n - d) / (fact * n * n);
}

}  // namespace puzzlemix
