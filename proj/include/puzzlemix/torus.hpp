#pragma once

#include <array>
#include <stdexcept>

#include "puzzlemix/rng.hpp"

namespace puzzlemix {

struct TorusPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(TorusPoint a, TorusPoint b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(TorusPoint a, TorusPoint b) { return !(a == b); }
};

// Move directions. "R" moves +x; x increases rightward, y increases upward.
inline constexpr int kDirX[4] = {1, -1, 0, 0};  // R, L, U, D
inline constexpr int kDirY[4] = {0, 0, 1, -1};
inline constexpr char kDirName[4] = {'R', 'L', 'U', 'D'};

// Geometry of (Z/nZ)^2.
class Torus {
 public:
  explicit Torus(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("Torus: side length must be >= 2");
  }

  int n() const { return n_; }
  int cells() const { return n_ * n_; }

  int wrap(int v) const {
    v %= n_;
    return v < 0 ? v + n_ : v;
  }

  TorusPoint wrap(TorusPoint p) const { return {wrap(p.x), wrap(p.y)}; }

  TorusPoint shift(TorusPoint p, int dx, int dy) const {
    return {wrap(p.x + dx), wrap(p.y + dy)};
  }

  TorusPoint neighbor(TorusPoint p, int dir) const {
    return shift(p, kDirX[dir], kDirY[dir]);
  }

  int index(TorusPoint p) const { return p.x + n_ * p.y; }
  TorusPoint cell(int idx) const { return {idx % n_, idx / n_}; }

  // Distance on the circle Z/nZ.
  int circle_dist(int a, int b) const {
    int d = wrap(a - b);
    return d <= n_ - d ? d : n_ - d;
  }

  int linf(TorusPoint a, TorusPoint b) const {
    int dx = circle_dist(a.x, b.x), dy = circle_dist(a.y, b.y);
    return dx > dy ? dx : dy;
  }

  // Signed representative of a-b in (-n/2, n/2].
  int signed_diff(int a, int b) const {
    int d = wrap(a - b);
    return 2 * d > n_ ? d - n_ : d;
  }

 private:
  int n_;
};

// One step of 1/5-lazy simple random walk: hold or move R/L/U/D, each 1/5.
template <class R>
TorusPoint srw_step(const Torus& t, TorusPoint p, R& rng) {
  const std::uint32_t m = rng.below(5);
  return m == 4 ? p : t.neighbor(p, (int)m);
}

}  // namespace puzzlemix
