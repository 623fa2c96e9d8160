#include "puzzlemix/rng.hpp"

#include <cmath>

namespace puzzlemix {

double Rng::gauss() {
  // u1 in (0,1], u2 in [0,1)
  const double u1 = 1.0 - unit();
  const double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.28318530717958647692 * u2);
}

}  // namespace puzzlemix
