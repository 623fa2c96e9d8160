#include "puzzlemix/coupling.hpp"

#include <stdexcept>

#include "puzzlemix/parallel.hpp"

namespace puzzlemix {

namespace {

// b's move for a's move `m` (0..3 directions, 4 = hold): mirror a
// coordinate that already agrees, oppose one that differs.
int partner_move(const CoupledState& cs, int m) {
  if (m == 4) return 4;
  const bool horizontal = m < 2;
  const bool agree = horizontal ? cs.a.blank.x == cs.b.blank.x
                                : cs.a.blank.y == cs.b.blank.y;
  return agree ? m : (m ^ 1);
}

void apply_move(MarginalState& s, int m) {
  if (m == 4) return;
  const Torus t(s.n);
  const TorusPoint target = t.neighbor(s.blank, m);
  for (auto& p : s.pieces)
    if (p == target) {
      p = s.blank;
      break;
    }
  s.blank = target;
}

// Midpoint cell coordinate of a and b on Z/nZ; for odd n this is the
// unique m with 2m = a+b. For even n it exists only when a-b is even
// (returns -1 otherwise).
int midpoint(int a, int b, int n) {
  if (n % 2 == 1) {
    const int inv2 = (n + 1) / 2;
    return (int)(((std::int64_t)(a + b) * inv2) % n);
  }
  if ((a - b) % 2 != 0) return -1;
  int d = (b - a) % n;
  if (d < 0) d += n;
  if (d > n - d) return (a + (d - n) / 2 % n + n) % n;
  return (a + d / 2) % n;
}

}  // namespace

bool CoupledState::coalesced() const {
  if (!blanks_equal()) return false;
  for (std::size_t i = 0; i < a.pieces.size(); ++i)
    if (!(a.pieces[i] == b.pieces[i])) return false;
  return true;
}

int CoupledState::coincident_pieces() const {
  int c = 0;
  for (std::size_t i = 0; i < a.pieces.size(); ++i)
    c += a.pieces[i] == b.pieces[i];
  return c;
}

void standard_blank_coupling_step(CoupledState& cs, Rng& rng) {
  const int m = (int)rng.below(5);
  const int pm = partner_move(cs, m);  // mode from the pre-move positions
  apply_move(cs.a, m);
  apply_move(cs.b, pm);
}

void joint_step(CoupledState& cs, Rng& rng) {
  const int m = (int)rng.below(5);
  apply_move(cs.a, m);
  apply_move(cs.b, m);
}

void opposed_step(CoupledState& cs, Rng& rng) {
  const int m = (int)rng.below(5);
  apply_move(cs.a, m);
  apply_move(cs.b, m == 4 ? 4 : (m ^ 1));
}

void independent_step(CoupledState& cs, Rng& rng) {
  apply_move(cs.a, (int)rng.below(5));
  apply_move(cs.b, (int)rng.below(5));
}

MarginalState random_marginal_state(int n, int d, Rng& rng) {
  const Torus t(n);
  MarginalState s;
  s.n = n;
  s.blank = t.cell((int)rng.below((std::uint32_t)t.cells()));
  while ((int)s.pieces.size() < d) {
    const TorusPoint p = t.cell((int)rng.below((std::uint32_t)t.cells()));
    bool clash = p == s.blank;
    for (const auto& q : s.pieces) clash = clash || p == q;
    if (!clash) s.pieces.push_back(p);
  }
  return s;
}

namespace {

// Piece index triggering stages 3-4: some non-coincident pair within
// l-infinity distance 2 whose midpoint cell exists and is within
// distance 2 of both copies. Returns -1 if no pair qualifies.
int trigger_piece(const CoupledState& cs) {
  const Torus t(cs.a.n);
  for (std::size_t i = 0; i < cs.a.pieces.size(); ++i) {
    const TorusPoint pa = cs.a.pieces[i], pb = cs.b.pieces[i];
    if (pa == pb) continue;
    if (t.linf(pa, pb) > 2) continue;
    const int mx = midpoint(pa.x, pb.x, cs.a.n);
    const int my = midpoint(pa.y, pb.y, cs.a.n);
    if (mx < 0 || my < 0) continue;
    const TorusPoint mid{mx, my};
    if (t.linf(mid, pa) <= 2 && t.linf(mid, pb) <= 2) return (int)i;
  }
  return -1;
}

bool blank_com_matches_piece_com(const CoupledState& cs, int i) {
  const int n = cs.a.n;
  const int bx = midpoint(cs.a.blank.x, cs.b.blank.x, n);
  const int by = midpoint(cs.a.blank.y, cs.b.blank.y, n);
  const int px = midpoint(cs.a.pieces[i].x, cs.b.pieces[i].x, n);
  const int py = midpoint(cs.a.pieces[i].y, cs.b.pieces[i].y, n);
  return bx >= 0 && by >= 0 && px >= 0 && py >= 0 && bx == px && by == py;
}

}  // namespace

CouplingRun run_coupling(CoupledState cs, Rng& rng, CouplingCaps caps,
                         std::int64_t stop_after) {
  if (cs.a.n < 5)
    throw std::invalid_argument("full_coupling_run: n must be >= 5");
  CouplingRun run;
  const auto budget_left = [&] {
    return stop_after < 0 || run.steps <= stop_after;
  };

  while (!cs.coalesced() && budget_left()) {
    // stage 1: couple the blanks
    while (!cs.blanks_equal() && budget_left()) {
      standard_blank_coupling_step(cs, rng);
      ++run.steps;
    }
    if (!budget_left()) break;
    // stage 2: move together until a piece pair is close with a nearby
    // center of mass (or everything coincides)
    int piece = -1;
    while (!cs.coalesced() && budget_left()) {
      piece = trigger_piece(cs);
      if (piece >= 0) break;
      joint_step(cs, rng);
      ++run.steps;
    }
    if (piece < 0 || !budget_left()) break;

    // stage 3: independent blank moves until the blank center of mass
    // matches the piece pair's
    bool ok = false;
    for (int k = 0; k < caps.stage3 && budget_left(); ++k) {
      if (blank_com_matches_piece_com(cs, piece)) break;
      independent_step(cs, rng);
      ++run.steps;
    }
    ok = blank_com_matches_piece_com(cs, piece);
    if (!ok) {
      ++run.restarts;
      continue;
    }
    // stage 4: opposed moves (blank center of mass preserved) until the
    // pair coincides
    for (int k = 0; k < caps.stage4 && budget_left(); ++k) {
      if (cs.a.pieces[piece] == cs.b.pieces[piece]) break;
      opposed_step(cs, rng);
      ++run.steps;
    }
    if (!(cs.a.pieces[piece] == cs.b.pieces[piece])) ++run.restarts;
  }
  run.coalesced = cs.coalesced();
  return run;
}

CouplingRun full_coupling_run(int n, int d, Rng& rng, CouplingCaps caps) {
  CoupledState cs{marginal_start(n, d), random_marginal_state(n, d, rng)};
  return run_coupling(std::move(cs), rng, caps, -1);
}

CouplingRun full_coupling_run_from(CoupledState cs, Rng& rng,
                                   CouplingCaps caps) {
  return run_coupling(std::move(cs), rng, caps, -1);
}

TvBound coupling_tv_bound(int n, int d, std::int64_t t, std::int64_t runs,
                          std::uint64_t seed, int workers, CouplingCaps caps) {
  struct Tally {
    std::uint64_t exceeded = 0;
    void merge(const Tally& o) { exceeded += o.exceeded; }
  };
  auto tally = run_trials<Tally>(
      (std::uint64_t)runs, seed, workers,
      [&](std::uint64_t, Rng& rng, Tally& tal) {
        CoupledState cs{marginal_start(n, d),
                        random_marginal_state(n, d, rng)};
        const CouplingRun run = run_coupling(std::move(cs), rng, caps, t);
        if (!run.coalesced || run.steps > t) ++tal.exceeded;
      });
  TvBound out;
  out.runs = runs;
  out.bound = double(tally.exceeded) / double(runs);
  out.ci = wilson(tally.exceeded, (std::uint64_t)runs, 3.0);
  return out;
}

}  // namespace puzzlemix
