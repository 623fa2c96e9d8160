#include "puzzlemix/chains.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "puzzlemix/perm.hpp"

namespace puzzlemix {

// ---------------------------------------------------------------------------
// Board
// ---------------------------------------------------------------------------

TorusPoint home_cell(int n) { return {n - 1, 0}; }

TorusPoint label_home(int label, int n) {
  const int r = (label - 1) / n;  // row from the top
  const int c = (label - 1) % n;
  return {c, n - 1 - r};
}

int label_at(TorusPoint cell, int n) {
  if (cell == home_cell(n)) return 0;
  const int r = n - 1 - cell.y;
  return r * n + cell.x + 1;
}

PuzzleState PuzzleState::sorted(int n) {
  if (n < 2) throw std::invalid_argument("PuzzleState: n must be >= 2");
  PuzzleState s;
  s.n_ = n;
  s.labels_.assign(n * n, 0);
  const Torus t(n);
  for (int label = 1; label < n * n; ++label)
    s.labels_[t.index(label_home(label, n))] = label;
  s.blank_ = t.index(home_cell(n));
  return s;
}

PuzzleState PuzzleState::from_labels(int n, std::vector<int> labels) {
  PuzzleState s;
  s.n_ = n;
  s.labels_ = std::move(labels);
  if ((int)s.labels_.size() != n * n)
    throw std::invalid_argument("PuzzleState: wrong label count");
  s.blank_ = 0;
  while (s.blank_ < (int)s.labels_.size() && s.labels_[s.blank_] != 0)
    ++s.blank_;
  if (s.blank_ == (int)s.labels_.size() || !s.valid())
    throw std::invalid_argument("PuzzleState: labels not a bijection");
  return s;
}

bool PuzzleState::valid() const {
  std::vector<char> seen(labels_.size(), 0);
  for (int v : labels_) {
    if (v < 0 || v >= (int)labels_.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return labels_[blank_] == 0;
}

void PuzzleState::move(int dir) {
  const Torus t(n_);
  const int target = t.index(t.neighbor(t.cell(blank_), dir));
  labels_[blank_] = labels_[target];
  labels_[target] = 0;
  blank_ = target;
}

int PuzzleState::fixed_points() const {
  const Torus t(n_);
  int count = 0;
  for (int cell = 0; cell < (int)labels_.size(); ++cell) {
    const int label = labels_[cell];
    if (label != 0 && t.index(label_home(label, n_)) == cell) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Marginal chain
// ---------------------------------------------------------------------------

MarginalState marginal_start(int n, int d) {
  MarginalState s;
  s.n = n;
  for (int i = 1; i <= d; ++i) s.pieces.push_back(label_home(i, n));
  s.blank = home_cell(n);
  validate(s);
  return s;
}

void validate(const MarginalState& s) {
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    if (s.pieces[i] == s.blank)
      throw std::invalid_argument("MarginalState: piece on blank cell");
    for (std::size_t j = i + 1; j < s.pieces.size(); ++j)
      if (s.pieces[i] == s.pieces[j])
        throw std::invalid_argument("MarginalState: overlapping pieces");
  }
}

std::vector<std::pair<MarginalState, double>> marginal_one_step_law(
    const MarginalState& s) {
  std::vector<std::pair<MarginalState, double>> law;
  law.emplace_back(s, 0.2);  // hold
  const Torus t(s.n);
  for (int dir = 0; dir < 4; ++dir) {
    MarginalState next = s;
    const TorusPoint target = t.neighbor(s.blank, dir);
    for (auto& p : next.pieces)
      if (p == target) {
        p = s.blank;
        break;
      }
    next.blank = target;
    law.emplace_back(std::move(next), 0.2);
  }
  return law;
}

// ---------------------------------------------------------------------------
// Symmetrized chain
// ---------------------------------------------------------------------------

void validate(const SymmetrizedState& s) {
  int at_blank = 0;
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    if (s.pieces[i] == s.blank) {
      ++at_blank;
      continue;
    }
    for (std::size_t j = i + 1; j < s.pieces.size(); ++j)
      if (s.pieces[i] == s.pieces[j])
        throw std::invalid_argument(
            "SymmetrizedState: pieces overlap away from the blank");
  }
  if (at_blank > 2)
    throw std::invalid_argument(
        "SymmetrizedState: more than two pieces on the blank cell");
}

std::vector<int> overlapping_pieces(const SymmetrizedState& s) {
  std::vector<int> idx;
  for (std::size_t i = 0; i < s.pieces.size(); ++i)
    if (s.pieces[i] == s.blank) idx.push_back((int)i);
  return idx;
}

std::vector<std::pair<SymmetrizedState, double>> symmetrized_one_step_law(
    const SymmetrizedState& s) {
  validate(s);
  const Torus t(s.n);
  const auto over = overlapping_pieces(s);
  std::vector<std::pair<SymmetrizedState, double>> law;
  if (over.empty()) {
    law.emplace_back(s, 0.6);
    for (int dir = 0; dir < 4; ++dir) {
      SymmetrizedState next = s;
      next.blank = t.neighbor(s.blank, dir);
      law.emplace_back(std::move(next), 0.1);
    }
  } else if (over.size() == 1) {
    law.emplace_back(s, 0.2);
    for (int dir = 0; dir < 4; ++dir) {
      SymmetrizedState joint = s;
      joint.blank = t.neighbor(s.blank, dir);
      joint.pieces[over[0]] = joint.blank;
      law.emplace_back(std::move(joint), 0.1);
      SymmetrizedState solo = s;
      solo.blank = t.neighbor(s.blank, dir);
      law.emplace_back(std::move(solo), 0.1);
    }
  } else {
    law.emplace_back(s, 0.2);
    for (int which : over)
      for (int dir = 0; dir < 4; ++dir) {
        SymmetrizedState joint = s;
        joint.blank = t.neighbor(s.blank, dir);
        joint.pieces[which] = joint.blank;
        law.emplace_back(std::move(joint), 0.1);
      }
  }
  return law;
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

std::uint64_t pack_state(const Torus& t, const std::vector<TorusPoint>& pieces,
                         TorusPoint blank) {
  const std::uint64_t base = (std::uint64_t)t.cells();
  std::uint64_t code = 0, mult = 1;
  for (const auto& p : pieces) {
    code += (std::uint64_t)t.index(p) * mult;
    mult *= base;
  }
  return code + (std::uint64_t)t.index(blank) * mult;
}

namespace {

std::vector<TorusPoint> unpack_cells(const Torus& t, std::uint64_t code,
                                     int count) {
  const std::uint64_t base = (std::uint64_t)t.cells();
  std::vector<TorusPoint> cells(count);
  for (int i = 0; i < count; ++i) {
    cells[i] = t.cell((int)(code % base));
    code /= base;
  }
  return cells;
}

bool marginal_valid(const std::vector<TorusPoint>& cells) {
  // last entry is the blank
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (cells[i] == cells[j]) return false;
  return true;
}

bool symmetrized_valid(const std::vector<TorusPoint>& cells) {
  const TorusPoint blank = cells.back();
  int at_blank = 0;
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    if (cells[i] == blank) {
      ++at_blank;
      continue;
    }
    for (std::size_t j = i + 1; j + 1 < cells.size(); ++j)
      if (cells[i] == cells[j]) return false;
  }
  return at_blank <= 2;
}

// Enumerate valid packed codes of a (d+1)-tuple space in increasing order.
template <typename ValidFn>
std::vector<std::uint64_t> enumerate_codes(const Torus& t, int d,
                                           std::size_t cap, ValidFn valid) {
  const std::uint64_t base = (std::uint64_t)t.cells();
  std::uint64_t total = 1;
  for (int i = 0; i <= d; ++i) {
    if (total > (std::uint64_t)1e9)
      throw std::length_error("build_matrix: state space too large");
    total *= base;
  }
  std::vector<std::uint64_t> codes;
  for (std::uint64_t code = 0; code < total; ++code) {
    auto cells = unpack_cells(t, code, d + 1);
    if (!valid(cells)) continue;
    codes.push_back(code);
    if (codes.size() > cap)
      throw std::length_error("build_matrix: state cap exceeded");
  }
  return codes;
}

std::unordered_map<std::uint64_t, int> index_of(
    const std::vector<std::uint64_t>& codes) {
  std::unordered_map<std::uint64_t, int> m;
  m.reserve(codes.size() * 2);
  for (std::size_t i = 0; i < codes.size(); ++i) m[codes[i]] = (int)i;
  return m;
}

ChainMatrix build_tuple_matrix(ChainKind kind, int n, int d,
                               const MatrixOptions& opt) {
  const Torus t(n);
  ChainMatrix cm;
  cm.kind = kind;
  cm.n = n;
  cm.d = d;
  switch (kind) {
    case ChainKind::Marginal:
      cm.codes = enumerate_codes(t, d, opt.cap, marginal_valid);
      break;
    case ChainKind::Symmetrized:
      cm.codes = enumerate_codes(t, d, opt.cap, symmetrized_valid);
      break;
    case ChainKind::ProductWalk:
      cm.codes = enumerate_codes(t, d, opt.cap,
                                 [](const auto&) { return true; });
      break;
    default:
      throw std::logic_error("build_tuple_matrix: bad kind");
  }
  const auto idx = index_of(cm.codes);
  const int size = (int)cm.codes.size();
  cm.P = Eigen::MatrixXd::Zero(size, size);

  for (int row = 0; row < size; ++row) {
    auto cells = unpack_cells(t, cm.codes[row], d + 1);
    std::vector<TorusPoint> pieces(cells.begin(), cells.end() - 1);
    const TorusPoint blank = cells.back();
    if (kind == ChainKind::Marginal) {
      MarginalState s{n, pieces, blank};
      for (const auto& [next, p] : marginal_one_step_law(s))
        cm.P(row, idx.at(pack_state(t, next.pieces, next.blank))) += p;
    } else if (kind == ChainKind::Symmetrized) {
      SymmetrizedState s{n, pieces, blank};
      for (const auto& [next, p] : symmetrized_one_step_law(s))
        cm.P(row, idx.at(pack_state(t, next.pieces, next.blank))) += p;
    } else {
      // ProductWalk: product law over coordinate shifts and the blank jump.
      const int M = opt.M;
      if (M < 0 || 2 * M >= n)
        throw std::invalid_argument("build_matrix: need 0 <= M < n/2");
      cm.P(row, row) += 0.5;
      const double shift_p = 1.0 / (2 * M + 1);
      const double jump_p = 1.0 / t.cells();
      // enumerate shifted piece tuples via an odometer over (dx,dy) per piece
      std::vector<int> digit(2 * d, -M);
      for (;;) {
        std::vector<TorusPoint> moved(pieces);
        double p = 0.5 * jump_p;
        for (int i = 0; i < d; ++i) {
          moved[i] = t.shift(moved[i], digit[2 * i], digit[2 * i + 1]);
          p *= shift_p * shift_p;
        }
        for (int b = 0; b < t.cells(); ++b)
          cm.P(row, idx.at(pack_state(t, moved, t.cell(b)))) += p;
        int k = 0;
        while (k < 2 * d && digit[k] == M) digit[k++] = -M;
        if (k == 2 * d) break;
        ++digit[k];
      }
    }
  }
  return cm;
}

ChainMatrix build_srw_matrix(ChainKind kind, int n) {
  const Torus t(n);
  ChainMatrix cm;
  cm.kind = kind;
  cm.n = n;
  cm.d = 0;
  const int size = t.cells();
  cm.codes.resize(size);
  for (int i = 0; i < size; ++i) cm.codes[i] = (std::uint64_t)i;
  cm.P = Eigen::MatrixXd::Zero(size, size);
  const bool lazy = kind == ChainKind::LazySrw;
  const double p = lazy ? 0.2 : 0.25;
  for (int i = 0; i < size; ++i) {
    if (lazy) cm.P(i, i) += 0.2;
    for (int dir = 0; dir < 4; ++dir)
      cm.P(i, t.index(t.neighbor(t.cell(i), dir))) += p;
  }
  return cm;
}

std::uint64_t lex_rank(const std::vector<int>& word) {
  // rank of `word` among permutations of its sorted support
  const int m = (int)word.size();
  std::uint64_t rank = 0;
  for (int i = 0; i < m; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < m; ++j) smaller += word[j] < word[i];
    std::uint64_t f = 1;
    for (int k = 2; k <= m - 1 - i; ++k) f *= (std::uint64_t)k;
    rank += (std::uint64_t)smaller * f;
  }
  return rank;
}

ChainMatrix build_three_cycle_matrix(int m, const MatrixOptions& opt) {
  if (m < 4 || m > 6)
    throw std::invalid_argument("three_cycle_walk_matrix: need 4 <= m <= 6");
  const auto elements = all_permutations(m, /*even_only=*/true);
  if (elements.size() > opt.cap)
    throw std::length_error("build_matrix: state cap exceeded");
  const auto cycles = all_three_cycles(m);
  ChainMatrix cm;
  cm.kind = ChainKind::ThreeCycle;
  cm.n = m;
  cm.d = 0;
  std::unordered_map<std::uint64_t, int> idx;
  cm.codes.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    cm.codes.push_back(lex_rank(elements[i]));
    idx[cm.codes.back()] = (int)i;
  }
  const int size = (int)elements.size();
  cm.P = Eigen::MatrixXd::Zero(size, size);
  const double p = 1.0 / (double)cycles.size();
  for (int row = 0; row < size; ++row)
    for (const auto& c : cycles)
      cm.P(row, idx.at(lex_rank(compose_perm(elements[row], c)))) += p;
  return cm;
}

ChainMatrix build_full_puzzle_matrix(int n, const MatrixOptions& opt) {
  // Enumerate boards as label arrays in lex order. Blows past any sensible
  // cap already at n = 3; useful only for n = 2 sanity instances.
  const Torus t(n);
  const int cells = t.cells();
  std::vector<int> arr(cells);
  for (int i = 0; i < cells; ++i) arr[i] = i;
  std::vector<std::vector<int>> boards;
  std::vector<int> sorted_arr = arr;
  std::sort(sorted_arr.begin(), sorted_arr.end());
  std::vector<int> w = sorted_arr;
  do {
    boards.push_back(w);
    if (boards.size() > opt.cap)
      throw std::length_error("build_matrix: state cap exceeded");
  } while (std::next_permutation(w.begin(), w.end()));

  std::unordered_map<std::uint64_t, int> idx;
  ChainMatrix cm;
  cm.kind = ChainKind::FullPuzzle;
  cm.n = n;
  cm.d = 0;
  for (std::size_t i = 0; i < boards.size(); ++i) {
    cm.codes.push_back(lex_rank(boards[i]));
    idx[cm.codes.back()] = (int)i;
  }
  const int size = (int)boards.size();
  cm.P = Eigen::MatrixXd::Zero(size, size);
  for (int row = 0; row < size; ++row) {
    const auto& board = boards[row];
    int blank = 0;
    while (board[blank] != 0) ++blank;
    cm.P(row, row) += 0.2;
    for (int dir = 0; dir < 4; ++dir) {
      auto next = board;
      const int target = t.index(t.neighbor(t.cell(blank), dir));
      std::swap(next[blank], next[target]);
      cm.P(row, idx.at(lex_rank(next))) += 0.2;
    }
  }
  return cm;
}

}  // namespace

ChainMatrix build_matrix(ChainKind kind, int n, int d, MatrixOptions opt) {
  switch (kind) {
    case ChainKind::LazySrw:
    case ChainKind::Srw:
      return build_srw_matrix(kind, n);
    case ChainKind::Marginal:
    case ChainKind::Symmetrized:
    case ChainKind::ProductWalk:
      return build_tuple_matrix(kind, n, d, opt);
    case ChainKind::ThreeCycle:
      return build_three_cycle_matrix(n, opt);
    case ChainKind::FullPuzzle:
      return build_full_puzzle_matrix(n, opt);
  }
  throw std::logic_error("build_matrix: unknown kind");
}

double ChainMatrix::max_row_sum_error() const {
  double worst = 0;
  for (int i = 0; i < P.rows(); ++i)
    worst = std::max(worst, std::abs(P.row(i).sum() - 1.0));
  return worst;
}

double ChainMatrix::max_asymmetry() const {
  return (P - P.transpose()).cwiseAbs().maxCoeff();
}

void ChainMatrix::write_triples(std::ostream& os) const {
  os << "row,col,value\n";
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < P.cols(); ++j)
      if (P(i, j) != 0.0) os << i << ',' << j << ',' << P(i, j) << '\n';
}

int three_cycle_count(int m) { return m * (m - 1) * (m - 2) / 3; }

}  // namespace puzzlemix
