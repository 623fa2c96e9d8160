#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <string_view>

#include "puzzlemix/chains.hpp"
#include "puzzlemix/perm.hpp"
#include "puzzlemix/torus.hpp"

namespace puzzlemix {

// An element of S_{n^2-1} x (Z/nZ)^2. The permutation acts on the n^2-1
// board positions as seen from the blank's cell (position p is the cell
// where label p+1 starts, read relative to the blank); perm[p] is the
// position whose occupant moves into p, i.e. the inverse of the
// piece-to-destination reading. The offset is the blank's net
// displacement.
struct GroupElement {
  int n = 0;
  Perm perm;  // size n^2-1, 0-based (position p holds board label p+1 at the start)
  int ox = 0, oy = 0;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.n == b.n && a.ox == b.ox && a.oy == b.oy && a.perm == b.perm;
  }
};

GroupElement identity_element(int n);
// letter in {R, L, U, D, .} ('.' is the identity)
GroupElement generator(char letter, int n);
// a followed by b (the random walk multiplies on the right)
GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& e);

// Left-to-right product of the letters of w over {R,L,U,D,.}.
GroupElement evaluate_word(std::string_view w, int n);
// Reversed word of inverted letters; evaluates to the group inverse.
std::string inverse_word(std::string_view w);

// Board realization: the board reached from the sorted position, and its
// group element. These are mutually inverse and match letter-by-letter
// replay of blank moves (the replay oracle pins the orientation
// conventions).
PuzzleState apply_to_sorted(const GroupElement& e);
GroupElement board_to_element(const PuzzleState& board);

// Parity invariant of the walk for even n: permutation parity equals the
// parity of ox+oy.
bool parity_invariant_holds(const GroupElement& e);

// URDL evaluated; throws unless it is a 3-cycle with zero offset.
GroupElement commutator_three_cycle(int n);

// Deterministic routing word w such that the letters w + "URDL" +
// inverse_word(w) compose to a 3-cycle supported exactly on the three
// given labels (1-based), with zero offset. Word length is O(n).
std::string route_word(const std::array<int, 3>& labels, int n);

// Transition matrix of the uniform walk on S = {Rc, Lc, Uc, Dc, c}
// (c ranging over all 3-cycles) acting on the quotient that tracks one
// label's position together with the blank offset. State id =
// position + (n^2-1) * (ox + n * oy).
Eigen::MatrixXd s_generator_walk_matrix(int n);

}  // namespace puzzlemix
