#include "puzzlemix/group.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace puzzlemix {

namespace {

int position_count(int n) { return n * n - 1; }

// Cell of position p (0-based), i.e. the home cell of label p+1.
TorusPoint position_cell(int p, int n) { return label_home(p + 1, n); }

// Position of a cell, -1 for the home cell.
int cell_position(TorusPoint cell, int n) { return label_at(cell, n) - 1; }

}  // namespace

GroupElement identity_element(int n) {
  return {n, identity_perm(position_count(n)), 0, 0};
}

GroupElement generator(char letter, int n) {
  if (letter == '.') return identity_element(n);
  int dir;
  switch (letter) {
    case 'R': dir = 0; break;
    case 'L': dir = 1; break;
    case 'U': dir = 2; break;
    case 'D': dir = 3; break;
    default:
      throw std::invalid_argument("generator: letter must be one of RLUD.");
  }
  const Torus t(n);
  const int vx = kDirX[dir], vy = kDirY[dir];
  const int m = position_count(n);
  Perm perm(m);
  for (int p = 0; p < m; ++p) {
    TorusPoint moved = t.shift(position_cell(p, n), vx, vy);
    if (moved == home_cell(n)) moved = t.shift(moved, vx, vy);
    perm[p] = cell_position(moved, n);
  }
  return {n, std::move(perm), vx, vy};
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  const Torus t(a.n);
  return {a.n, compose_perm(a.perm, b.perm), t.wrap(a.ox + b.ox),
          t.wrap(a.oy + b.oy)};
}

GroupElement inverse(const GroupElement& e) {
  const Torus t(e.n);
  return {e.n, inverse_perm(e.perm), t.wrap(-e.ox), t.wrap(-e.oy)};
}

GroupElement evaluate_word(std::string_view w, int n) {
  GroupElement e = identity_element(n);
  for (char c : w) e = compose(e, generator(c, n));
  return e;
}

std::string inverse_word(std::string_view w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) {
    switch (c) {
      case 'R': c = 'L'; break;
      case 'L': c = 'R'; break;
      case 'U': c = 'D'; break;
      case 'D': c = 'U'; break;
      case '.': break;
      default: throw std::invalid_argument("inverse_word: bad letter");
    }
  }
  return out;
}

PuzzleState apply_to_sorted(const GroupElement& e) {
  const int n = e.n;
  const Torus t(n);
  std::vector<int> labels(t.cells(), 0);
  for (int p = 0; p < position_count(n); ++p) {
    const TorusPoint cell = t.shift(position_cell(p, n), e.ox, e.oy);
    labels[t.index(cell)] = e.perm[p] + 1;
  }
  return PuzzleState::from_labels(n, std::move(labels));
}

GroupElement board_to_element(const PuzzleState& board) {
  const int n = board.n();
  const Torus t(n);
  const TorusPoint blank = board.blank();
  const TorusPoint home = home_cell(n);
  const int vx = t.wrap(blank.x - home.x);
  const int vy = t.wrap(blank.y - home.y);
  const int m = position_count(n);
  Perm perm(m);
  for (int p = 0; p < m; ++p) {
    const TorusPoint cell = t.shift(position_cell(p, n), vx, vy);
    perm[p] = board.labels()[t.index(cell)] - 1;
  }
  return {n, std::move(perm), vx, vy};
}

bool parity_invariant_holds(const GroupElement& e) {
  return perm_parity(e.perm) == ((e.ox + e.oy) & 1);
}

GroupElement commutator_three_cycle(int n) {
  if (n < 3)
    throw std::invalid_argument("commutator_three_cycle: n must be >= 3");
  GroupElement c = evaluate_word("URDL", n);
  if (c.ox != 0 || c.oy != 0)
    throw std::logic_error("commutator_three_cycle: nonzero offset");
  if (!is_three_cycle(c.perm))
    throw std::logic_error("commutator_three_cycle: not a 3-cycle");
  return c;
}

// ---------------------------------------------------------------------------
// Routing: a greedy escort. Pieces are walked one at a time onto the cells
// the commutator cycles (anchored at the blank's start), the blank finally
// returns to its anchor. Already-placed targets are treated as walls for
// every later path, so they are never disturbed; the torus minus at most
// three walls stays connected for n >= 4, which keeps every BFS below
// feasible.
// ---------------------------------------------------------------------------

namespace {

class RouteBoard {
 public:
  explicit RouteBoard(int n) : t_(n), label_at_(t_.cells()), pos_(t_.cells()) {
    for (int cell = 0; cell < t_.cells(); ++cell) {
      label_at_[cell] = label_at(t_.cell(cell), n);
      pos_[label_at_[cell]] = cell;
    }
    blank_ = t_.index(home_cell(n));
  }

  const Torus& torus() const { return t_; }
  int blank() const { return blank_; }
  int pos(int label) const { return pos_[label]; }

  void move(int dir, std::string& word) {
    const int target = t_.index(t_.neighbor(t_.cell(blank_), dir));
    const int lab = label_at_[target];
    label_at_[blank_] = lab;
    pos_[lab] = blank_;
    label_at_[target] = 0;
    pos_[0] = target;
    blank_ = target;
    word.push_back(kDirName[dir]);
  }

  int dir_between(int from, int to) const {
    for (int dir = 0; dir < 4; ++dir)
      if (t_.index(t_.neighbor(t_.cell(from), dir)) == to) return dir;
    throw std::logic_error("route_word: cells not adjacent");
  }

 private:
  Torus t_;
  std::vector<int> label_at_;
  std::vector<int> pos_;
  int blank_ = 0;
};

// Shortest cell path from -> to (to included, from excluded) avoiding
// blocked cells. `from` may be blocked; `to` must not be.
std::vector<int> grid_path(const Torus& t, int from, int to,
                           const std::vector<char>& blocked) {
  if (from == to) return {};
  std::vector<int> parent(t.cells(), -1);
  std::queue<int> q;
  q.push(from);
  parent[from] = from;
  while (!q.empty()) {
    const int cur = q.front();
    q.pop();
    for (int dir = 0; dir < 4; ++dir) {
      const int nb = t.index(t.neighbor(t.cell(cur), dir));
      if (parent[nb] != -1 || blocked[nb]) continue;
      parent[nb] = cur;
      if (nb == to) {
        std::vector<int> path;
        for (int c = to; c != from; c = parent[c]) path.push_back(c);
        std::reverse(path.begin(), path.end());
        return path;
      }
      q.push(nb);
    }
  }
  throw std::logic_error("route_word: no path (board too small?)");
}

void walk_blank(RouteBoard& board, int to, const std::vector<char>& blocked,
                std::string& word) {
  for (int cell : grid_path(board.torus(), board.blank(), to, blocked))
    board.move(board.dir_between(board.blank(), cell), word);
}

// Move the piece with the given label to `target`, never touching blocked
// cells with either the piece or the blank.
void escort(RouteBoard& board, int label, int target,
            std::vector<char> blocked, std::string& word) {
  const Torus& t = board.torus();
  while (board.pos(label) != target) {
    const auto path = grid_path(t, board.pos(label), target, blocked);
    for (int next : path) {
      const int piece = board.pos(label);
      auto walls = blocked;
      walls[piece] = 1;
      walk_blank(board, next, walls, word);
      board.move(board.dir_between(board.blank(), piece), word);
    }
  }
}

}  // namespace

std::string route_word(const std::array<int, 3>& labels, int n) {
  if (n < 4) throw std::invalid_argument("route_word: n must be >= 4");
  for (int i = 0; i < 3; ++i) {
    if (labels[i] < 1 || labels[i] >= n * n)
      throw std::invalid_argument("route_word: label out of range");
    for (int j = i + 1; j < 3; ++j)
      if (labels[i] == labels[j])
        throw std::invalid_argument("route_word: labels must be distinct");
  }

  const Torus t(n);
  // Cells cycled by URDL when the blank sits at its anchor (= home): the
  // home cells of the commutator's support positions.
  const GroupElement c = commutator_three_cycle(n);
  std::array<int, 3> targets{};
  int k = 0;
  for (int p = 0; p < (int)c.perm.size(); ++p)
    if (c.perm[p] != p) targets[k++] = t.index(position_cell(p, n));

  RouteBoard board(n);

  // assignment of labels to target cells minimizing total l1 travel
  std::array<int, 3> order{0, 1, 2};
  std::array<int, 3> best = order;
  int best_cost = std::numeric_limits<int>::max();
  std::sort(order.begin(), order.end());
  do {
    int cost = 0;
    for (int i = 0; i < 3; ++i) {
      const TorusPoint a = t.cell(board.pos(labels[i]));
      const TorusPoint b = t.cell(targets[order[i]]);
      cost += t.circle_dist(a.x, b.x) + t.circle_dist(a.y, b.y);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));

  std::string word;
  std::vector<char> placed(t.cells(), 0);
  for (int i = 0; i < 3; ++i) {
    escort(board, labels[i], targets[best[i]], placed, word);
    placed[targets[best[i]]] = 1;
  }
  walk_blank(board, t.index(home_cell(n)), placed, word);
  return word;
}

// ---------------------------------------------------------------------------
// S-generator walk on the one-tracked-label quotient
// ---------------------------------------------------------------------------

Eigen::MatrixXd s_generator_walk_matrix(int n) {
  const Torus t(n);
  const int m = position_count(n);
  const int size = m * t.cells();
  // a uniform 3-cycle fixes a given position w.p. (m-3)/m, else sends it
  // to a uniform other position
  const double stay = double(m - 3) / double(m);
  const double move = 3.0 / (double(m) * double(m - 1));

  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(size, size);
  const char letters[5] = {'R', 'L', 'U', 'D', '.'};
  for (char letter : letters) {
    const GroupElement g = generator(letter, n);
    const Perm inv = inverse_perm(g.perm);
    for (int w = 0; w < t.cells(); ++w) {
      const TorusPoint wp = t.cell(w);
      const int w2 = t.index(t.shift(wp, g.ox, g.oy));
      for (int q = 0; q < m; ++q) {
        const int row = q + m * w;
        const int q1 = inv[q];
        P(row, q1 + m * w2) += 0.2 * stay;
        for (int q2 = 0; q2 < m; ++q2)
          if (q2 != q1) P(row, q2 + m * w2) += 0.2 * move;
      }
    }
  }
  return P;
}

}  // namespace puzzlemix
