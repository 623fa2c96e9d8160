#pragma once

#include <iosfwd>
#include <vector>

#include "puzzlemix/torus.hpp"

namespace puzzlemix {

// Potential kernel (Green's function) of simple random walk on (Z/nZ)^2,
// normalized by G(0,0) = 0 and the Laplacian equation
//   (1/4) sum_{y ~ x} G(y) - G(x) = 1(x = 0) - 1/n^2.
// With this scaling G(1,0) -> 1, G(1,1) -> 4/pi, G(2,0) -> 4 - 8/pi as
// n -> infinity, and the first-return probability ratios below reproduce
// 1/2, 1/2 - 1/pi, 2/pi - 1/2. Built by a sparse solve of the n^2 x n^2
// linear system (the origin row is replaced by the normalization).
class PotentialTable {
 public:
  explicit PotentialTable(int n);  // n >= 3

  int n() const { return n_; }
  double at(int x, int y) const {
    Torus t(n_);
    return g_[t.wrap(x) + n_ * t.wrap(y)];
  }

  // CSV export with columns x,y,G.
  void write_csv(std::ostream& os) const;

 private:
  int n_;
  std::vector<double> g_;
};

// First-return direction probabilities of the 1/5-lazy walk started at
// (1,0): p_right = prob. of re-entering the origin from (1,0), p_vertical
// from (0,1) (equal to (0,-1)), p_left from (-1,0).
struct ReturnProbabilities {
  double right;
  double vertical;  // each of (0,1) and (0,-1)
  double left;
  double sum() const { return right + 2 * vertical + left; }
};

ReturnProbabilities return_probabilities(const PotentialTable& table);

// n -> infinity limits: 1/2, 1/2 - 1/pi, 2/pi - 1/2.
ReturnProbabilities limit_return_probabilities();

}  // namespace puzzlemix
