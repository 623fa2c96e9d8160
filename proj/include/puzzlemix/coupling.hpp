#pragma once

#include <cstdint>

#include "puzzlemix/chains.hpp"
#include "puzzlemix/rng.hpp"
#include "puzzlemix/stats.hpp"

namespace puzzlemix {

// Step caps standing in for the "O(1) moves" of stages 3 and 4; exceeding
// either skips back to the repeat step.
struct CouplingCaps {
  int stage3 = 64;
  int stage4 = 64;
};

// A coupled pair of d-piece marginal chains.
struct CoupledState {
  MarginalState a;
  MarginalState b;

  bool blanks_equal() const { return a.blank == b.blank; }
  bool coalesced() const;
  int coincident_pieces() const;
};

// One step of the standard blank coupling: copy a moves by its own law,
// copy b mirrors coordinates that already agree and opposes the others.
// Requires distinct blanks; each copy's marginal is one chain step.
void standard_blank_coupling_step(CoupledState& cs, Rng& rng);

// One joint step with both blanks making the same move (used once the
// blanks coincide; coincident pieces can never separate here).
void joint_step(CoupledState& cs, Rng& rng);

// One joint step with fully opposite moves (stage 4; preserves the blank
// center of mass).
void opposed_step(CoupledState& cs, Rng& rng);

// One joint step with independent moves in the two copies (stage 3).
void independent_step(CoupledState& cs, Rng& rng);

// Uniform state of the d-piece marginal chain (rejection sampling).
MarginalState random_marginal_state(int n, int d, Rng& rng);

struct CouplingRun {
  std::int64_t steps = 0;
  std::int64_t restarts = 0;  // stage 3/4 cap hits
  bool coalesced = false;
};

// Full coalescing coupling, copy a from the deterministic start, copy b
// from a uniform (stationary) state. Runs until every piece and the blank
// coincide; returns the chain-step count. Odd n is the supported regime;
// even n is accepted but experimental.
CouplingRun full_coupling_run(int n, int d, Rng& rng, CouplingCaps caps = {});

// Same algorithm from an explicit coupled start (identical copies take
// zero steps).
CouplingRun full_coupling_run_from(CoupledState cs, Rng& rng,
                                   CouplingCaps caps = {});

struct TvBound {
  double bound = 0;  // empirical P(tau_c > t)
  WilsonInterval ci{0, 0};
  std::int64_t runs = 0;
};

TvBound coupling_tv_bound(int n, int d, std::int64_t t, std::int64_t runs,
                          std::uint64_t seed, int workers,
                          CouplingCaps caps = {});

}  // namespace puzzlemix
