#include "puzzlemix/parallel.hpp"

#include <cstdlib>

namespace puzzlemix {

int default_workers() {
  if (const char* env = std::getenv("PUZZLEMIX_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : (int)hc;
}

}  // namespace puzzlemix
