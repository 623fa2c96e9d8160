#include <doctest.h>

#include <cmath>
#include <map>

#include "puzzlemix/rng.hpp"
#include "puzzlemix/stats.hpp"
#include "puzzlemix/torus.hpp"

using namespace puzzlemix;

namespace {

// scripted draws, for exhausting a sampler's randomness
struct Forced {
  std::vector<std::uint32_t> values;
  std::size_t next = 0;
  std::uint32_t below(std::uint32_t m) {
    REQUIRE(next < values.size());
    REQUIRE(values[next] < m);
    return values[next++];
  }
};

}  // namespace

TEST_CASE("one-step law of the lazy walk, exact") {
  const Torus t(5);
  std::map<std::pair<int, int>, int> hits;
  for (std::uint32_t u = 0; u < 5; ++u) {
    Forced rng{{u}};
    const TorusPoint q = srw_step(t, {0, 0}, rng);
    ++hits[{q.x, q.y}];
  }
  CHECK(hits.size() == 5);
  CHECK(hits[{0, 0}] == 1);  // hold
  CHECK(hits[{1, 0}] == 1);
  CHECK(hits[{4, 0}] == 1);
  CHECK(hits[{0, 1}] == 1);
  CHECK(hits[{0, 4}] == 1);
}

TEST_CASE("n=2 wrap-around doubles the horizontal mass") {
  const Torus t(2);
  std::map<std::pair<int, int>, int> hits;
  for (std::uint32_t u = 0; u < 5; ++u) {
    Forced rng{{u}};
    const TorusPoint q = srw_step(t, {0, 0}, rng);
    ++hits[{q.x, q.y}];
  }
  CHECK(hits[{1, 0}] == 2);  // R and L coincide: mass 2/5
  CHECK(hits[{0, 1}] == 2);
  CHECK(hits[{0, 0}] == 1);
}

TEST_CASE("empirical one-step frequencies within 3-sigma bands") {
  const std::int64_t steps = 1000000;
  for (int n : {3, 5, 8}) {
    const Torus t(n);
    Rng rng(0xBEEF + n);
    std::uint64_t counts[5] = {0, 0, 0, 0, 0};
    const TorusPoint origin{0, 0};
    for (std::int64_t i = 0; i < steps; ++i) {
      const TorusPoint q = srw_step(t, origin, rng);
      if (q == origin) ++counts[4];
      else
        for (int dir = 0; dir < 4; ++dir)
          if (q == t.neighbor(origin, dir)) ++counts[dir];
    }
    const double band = 3.0 * std::sqrt(0.2 * 0.8 / (double)steps);
    for (int k = 0; k < 5; ++k)
      CHECK(std::abs((double)counts[k] / steps - 0.2) <= band);
    // hold frequency also within the stated 0.200 +- 0.002
    CHECK(std::abs((double)counts[4] / steps - 0.2) <= 0.002);
  }
}

TEST_CASE("torus geometry helpers") {
  const Torus t(7);
  CHECK(t.wrap(-1) == 6);
  CHECK(t.circle_dist(0, 6) == 1);
  CHECK(t.circle_dist(1, 4) == 3);
  CHECK(t.signed_diff(0, 6) == 1);
  CHECK(t.signed_diff(6, 0) == -1);
  CHECK(t.linf({0, 0}, {6, 3}) == 3);
  CHECK(t.index(t.cell(13)) == 13);
  CHECK_THROWS_AS(Torus(1), std::invalid_argument);
}

TEST_CASE("rng streams are worker-split independent") {
  // stream(seed, i) must not depend on any other stream's consumption
  Rng a = Rng::stream(123, 7);
  Rng b = Rng::stream(123, 8);
  (void)b.next_u64();
  Rng a2 = Rng::stream(123, 7);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == a2.next_u64());
}
