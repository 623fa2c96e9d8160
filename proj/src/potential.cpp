#include "puzzlemix/potential.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace puzzlemix {

PotentialTable::PotentialTable(int n) : n_(n), g_(n * n) {
  if (n < 3) throw std::invalid_argument("PotentialTable: n must be >= 3");
  const Torus t(n);
  const int m = n * n;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(5 * m);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      trip.emplace_back(0, 0, 1.0);  // normalization G(0,0) = 0
      continue;
    }
    trip.emplace_back(i, i, -1.0);
    const TorusPoint p = t.cell(i);
    for (int d = 0; d < 4; ++d)
      trip.emplace_back(i, t.index(t.neighbor(p, d)), 0.25);
    b[i] = -1.0 / m;
  }
  Eigen::SparseMatrix<double> A(m, m);
  A.setFromTriplets(trip.begin(), trip.end());

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("PotentialTable: singular system");
  Eigen::VectorXd g = lu.solve(b);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("PotentialTable: solve failed");
  for (int i = 0; i < m; ++i) g_[i] = g[i];
  g_[0] = 0.0;
}

void PotentialTable::write_csv(std::ostream& os) const {
  os << "x,y,G\n";
  for (int y = 0; y < n_; ++y)
    for (int x = 0; x < n_; ++x) os << x << ',' << y << ',' << at(x, y) << '\n';
}

ReturnProbabilities return_probabilities(const PotentialTable& table) {
  const double g10 = table.at(1, 0);
  const double g11 = table.at(1, 1);
  const double g20 = table.at(2, 0);
  const double den = 8 * g10 - 2 * g11 - g20;
  return {2 * g10 / den, (2 * g10 - g11) / den, (2 * g10 - g20) / den};
}

ReturnProbabilities limit_return_probabilities() {
  const double pi = 3.14159265358979323846;
  return {0.5, 0.5 - 1.0 / pi, 2.0 / pi - 0.5};
}

}  // namespace puzzlemix
