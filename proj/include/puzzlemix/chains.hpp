#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <utility>
#include <vector>

#include "puzzlemix/rng.hpp"
#include "puzzlemix/torus.hpp"

namespace puzzlemix {

// ---------------------------------------------------------------------------
// Full board. labels()[cell] is the tile label (1..n^2-1) or 0 for the blank.
// Initial position: labels 1..n^2-1 left to right, top down (y decreasing),
// blank in the bottom-right corner.
// ---------------------------------------------------------------------------
class PuzzleState {
 public:
  static PuzzleState sorted(int n);
  // labels[cell] with exactly one 0 (the blank); throws unless a bijection.
  static PuzzleState from_labels(int n, std::vector<int> labels);

  int n() const { return n_; }
  const std::vector<int>& labels() const { return labels_; }
  int blank_index() const { return blank_; }
  TorusPoint blank() const { return Torus(n_).cell(blank_); }
  bool valid() const;

  // Blank holds or swaps with one of its 4 neighbors, each w.p. 1/5.
  template <class R>
  void step(R& rng) {
    const std::uint32_t m = rng.below(5);
    if (m < 4) move((int)m);
  }
  // Forced move of the blank in direction dir (0..3 = R,L,U,D).
  void move(int dir);

  int fixed_points() const;  // tiles currently on their initial cells

 private:
  int n_ = 0;
  int blank_ = 0;
  std::vector<int> labels_;
};

template <class R>
void puzzle_step(PuzzleState& s, R& rng) {
  s.step(rng);
}

// Initial cell of a label (1..n^2-1); the blank's initial cell is home.
TorusPoint label_home(int label, int n);
TorusPoint home_cell(int n);
// Label whose initial cell is `cell`, or 0 for the home cell.
int label_at(TorusPoint cell, int n);

// ---------------------------------------------------------------------------
// Marginal chain P_d: d tracked pieces plus the blank; all positions
// pairwise distinct. Same dynamics as the full board restricted to the
// tracked positions.
// ---------------------------------------------------------------------------
struct MarginalState {
  int n = 0;
  std::vector<TorusPoint> pieces;
  TorusPoint blank;
};

MarginalState marginal_start(int n, int d);  // pieces on cells of labels 1..d
void validate(const MarginalState& s);

template <class R>
void marginal_step(MarginalState& s, R& rng) {
  const std::uint32_t m = rng.below(5);
  if (m == 4) return;
  const Torus t(s.n);
  const TorusPoint target = t.neighbor(s.blank, (int)m);
  for (auto& p : s.pieces)
    if (p == target) {
      p = s.blank;
      break;
    }
  s.blank = target;
}

std::vector<std::pair<MarginalState, double>> marginal_one_step_law(
    const MarginalState& s);

// ---------------------------------------------------------------------------
// Symmetrized chain P_{d,s}: the blank may overlap pieces; at most two
// pieces may sit on the blank's cell and nowhere else may pieces overlap.
// Transition cases (4 directions each):
//   no overlap   : 4 blank moves at 1/10, hold 3/5
//   one overlap  : 4 joint moves at 1/10, 4 solo blank moves at 1/10, hold 1/5
//   two overlaps : 4 joint moves with either piece at 1/10, hold 1/5
// ---------------------------------------------------------------------------
struct SymmetrizedState {
  int n = 0;
  std::vector<TorusPoint> pieces;
  TorusPoint blank;
};

void validate(const SymmetrizedState& s);  // throws on overlap violations

// indices of pieces sharing the blank's cell (size 0, 1 or 2)
std::vector<int> overlapping_pieces(const SymmetrizedState& s);

template <class R>
void symmetrized_step(SymmetrizedState& s, R& rng) {
  const Torus t(s.n);
  const auto over = overlapping_pieces(s);
  const std::uint32_t u = rng.below(10);
  if (over.empty()) {
    if (u < 4) s.blank = t.neighbor(s.blank, (int)u);  // else hold (6/10)
  } else if (over.size() == 1) {
    if (u < 4) {  // joint move
      s.blank = t.neighbor(s.blank, (int)u);
      s.pieces[over[0]] = s.blank;
    } else if (u < 8) {  // solo blank move
      s.blank = t.neighbor(s.blank, (int)(u - 4));
    }  // else hold (2/10)
  } else {
    if (u < 8) {  // joint move with one of the two pieces
      const int which = over[u < 4 ? 0 : 1];
      s.blank = t.neighbor(s.blank, (int)(u % 4));
      s.pieces[which] = s.blank;
    }  // else hold (2/10)
  }
}

std::vector<std::pair<SymmetrizedState, double>> symmetrized_one_step_law(
    const SymmetrizedState& s);

// ---------------------------------------------------------------------------
// Product walk P_{d,M} on ((Z/nZ)^2)^(d+1): with probability 1/2 hold,
// else the d pieces move each coordinate by an independent uniform shift
// in [-M, M] and the last coordinate (the blank) jumps to a uniform cell.
// ---------------------------------------------------------------------------
struct ProductState {
  int n = 0;
  std::vector<TorusPoint> pieces;  // d entries; overlaps allowed
  TorusPoint blank;
};

template <class R>
void product_walk_step(ProductState& s, int M, R& rng) {
  if (M < 0 || 2 * M >= s.n)
    throw std::invalid_argument("product_walk_step: need 0 <= M < n/2");
  if (rng.below(2) == 0) return;  // hold w.p. 1/2
  const Torus t(s.n);
  const std::uint32_t w = 2 * M + 1;
  for (auto& p : s.pieces) {
    const int dx = (int)rng.below(w) - M;
    const int dy = (int)rng.below(w) - M;
    p = t.shift(p, dx, dy);
  }
  s.blank = t.cell((int)rng.below((std::uint32_t)t.cells()));
}

// ---------------------------------------------------------------------------
// Dense transition matrices for small instances.
// ---------------------------------------------------------------------------
enum class ChainKind {
  LazySrw,      // 1/5-lazy nearest-neighbor walk on the torus
  Srw,          // nearest-neighbor walk, 1/4 per direction
  Marginal,     // P_d
  Symmetrized,  // P_{d,s}
  ProductWalk,  // P_{d,M}
  ThreeCycle,   // uniform 3-cycle walk on Alt(m); pass m as `n`
  FullPuzzle,   // P_{n^2-1} (only tiny n fit under the cap)
};

struct MatrixOptions {
  int M = 1;                    // range for ProductWalk
  std::size_t cap = 200000;     // maximum number of enumerated states
};

// State indexing is mixed-radix over cell indices (x + n*y), piece
// positions first in lex order and the blank last; states are enumerated
// in increasing code order. For ThreeCycle, states are the even
// permutations of {0..m-1} in lexicographic order; for FullPuzzle, the
// label arrays in lexicographic order.
struct ChainMatrix {
  ChainKind kind;
  int n = 0;
  int d = 0;
  std::vector<std::uint64_t> codes;  // state id -> packed code
  Eigen::MatrixXd P;

  std::size_t size() const { return codes.size(); }
  double max_row_sum_error() const;
  double max_asymmetry() const;
  // Sparse triple export: one "row,col,value" line per nonzero.
  void write_triples(std::ostream& os) const;
};

ChainMatrix build_matrix(ChainKind kind, int n, int d,
                         MatrixOptions opt = {});

// Packed codes for the tuple state spaces (base n^2, blank last).
std::uint64_t pack_state(const Torus& t, const std::vector<TorusPoint>& pieces,
                         TorusPoint blank);

// Number of 3-cycles in Sym(m).
int three_cycle_count(int m);

}  // namespace puzzlemix
