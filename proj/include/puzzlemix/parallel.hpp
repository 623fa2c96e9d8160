#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "puzzlemix/rng.hpp"

namespace puzzlemix {

int default_workers();  // PUZZLEMIX_WORKERS env var, else hardware threads

// Runs `body(trial, rng, tally)` for trial = 0..trials-1 across workers.
// Trial i always uses Rng::stream(seed, i) and tallies must merge through
// commutative integer accumulation, so aggregates are independent of the
// worker count and of scheduling.
template <typename Tally, typename Body>
Tally run_trials(std::uint64_t trials, std::uint64_t seed, int workers,
                 Body body) {
  if (workers < 1) workers = 1;
  if ((std::uint64_t)workers > trials && trials > 0)
    workers = (int)trials;
  if (workers == 1) {
    Tally tally;
    for (std::uint64_t i = 0; i < trials; ++i) {
      Rng rng = Rng::stream(seed, i);
      body(i, rng, tally);
    }
    return tally;
  }
  std::vector<Tally> parts(workers);
  std::atomic<std::uint64_t> counter{0};
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (;;) {
        const std::uint64_t i = counter.fetch_add(1);
        if (i >= trials) break;
        Rng rng = Rng::stream(seed, i);
        body(i, rng, parts[w]);
      }
    });
  }
  for (auto& th : threads) th.join();
  Tally total;
  for (const auto& part : parts) total.merge(part);
  return total;
}

}  // namespace puzzlemix
