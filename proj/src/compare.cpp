#include <deque>
#include <stdexcept>

#include "puzzlemix/rng.hpp"
#include "puzzlemix/spectral.hpp"

namespace puzzlemix {

namespace {

// BFS path between two states along the chain's positive transitions.
std::vector<int> chain_path(const Eigen::MatrixXd& P, int from, int to) {
  if (from == to) return {from};
  const int size = (int)P.rows();
  std::vector<int> parent(size, -1);
  std::deque<int> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int nb = 0; nb < size; ++nb) {
      if (P(cur, nb) == 0.0 || parent[nb] != -1 || nb == cur) continue;
      parent[nb] = cur;
      if (nb == to) {
        std::vector<int> path{to};
        for (int c = to; c != from; c = parent[c]) path.push_back(parent[c]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(nb);
    }
  }
  throw std::runtime_error("chain_path: disconnected chain");
}

}  // namespace

SymmetrizedComparison symmetrized_comparison(int n, std::uint64_t seed,
                                             int samples) {
  const int d = 1;
  const ChainMatrix Pd = build_matrix(ChainKind::Marginal, n, d);
  const ChainMatrix Ps = build_matrix(ChainKind::Symmetrized, n, d);
  const Torus t(n);
  const int Sd = (int)Pd.size();
  const int Ss = (int)Ps.size();

  std::unordered_map<std::uint64_t, int> idx_d;
  for (int i = 0; i < Sd; ++i) idx_d[Pd.codes[i]] = i;

  // convex weights of the extension: each symmetrized state as a
  // combination of marginal states
  std::vector<std::vector<std::pair<int, double>>> ext(Ss);
  for (int i = 0; i < Ss; ++i) {
    const std::uint64_t code = Ps.codes[i];
    const std::uint64_t base = (std::uint64_t)t.cells();
    const int piece = (int)(code % base);
    const int blank = (int)(code / base);
    if (piece != blank) {
      ext[i] = {{idx_d.at(code), 1.0}};
    } else {
      for (int dir = 0; dir < 4; ++dir) {
        const int moved = t.index(t.neighbor(t.cell(piece), dir));
        ext[i].push_back(
            {idx_d.at((std::uint64_t)moved + base * (std::uint64_t)blank),
             0.25});
      }
    }
  }

  // E'(f,f) through the extension
  const auto restricted_form = [&](const Eigen::VectorXd& f) {
    Eigen::VectorXd fs(Ss);
    for (int i = 0; i < Ss; ++i) {
      double acc = 0;
      for (const auto& [j, w] : ext[i]) acc += w * f[j];
      fs[i] = acc;
    }
    return dirichlet_form(Ps.P, fs);
  };

  // Cauchy-Schwarz expansion into a marginal-space edge form
  EdgeForm tilde;
  tilde.size = Sd;
  const double pi_s = 1.0 / Ss;
  for (int u = 0; u < Ss; ++u)
    for (int v = u + 1; v < Ss; ++v) {
      if (Ps.P(u, v) == 0.0) continue;
      const double w_uv = pi_s * Ps.P(u, v);
      for (const auto& [x, cx] : ext[u])
        for (const auto& [y, cy] : ext[v])
          if (x != y) tilde.add(x, y, w_uv * cx * cy);
    }

  // paths for every tilde edge
  std::map<std::pair<int, int>, std::vector<int>> paths;
  for (const auto& [edge, w] : tilde.weight) {
    if (edge.first > edge.second) continue;
    paths[edge] = chain_path(Pd.P, edge.first, edge.second);
  }

  SymmetrizedComparison out;
  out.A = comparison_constant(tilde, Pd.P, paths);
  out.samples = samples;

  Rng rng(mix64(seed));
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd f(Sd);
    for (int i = 0; i < Sd; ++i) f[i] = rng.gauss();
    const double lhs = restricted_form(f);
    const double rhs = out.A * dirichlet_form(Pd.P, f);
    if (rhs > 0) out.worst_ratio = std::max(out.worst_ratio, lhs / rhs);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_d(Pd.P);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_s(Ps.P);
  // both ascending; compare the top Sd eigenvalues index-wise
  double worst = 0;
  for (int i = 1; i < Sd; ++i) {
    const double gap_d = 1.0 - es_d.eigenvalues()[Sd - 1 - i];
    const double gap_s = 1.0 - es_s.eigenvalues()[Ss - 1 - i];
    worst = std::max(worst, gap_s / gap_d);
  }
  out.B = worst;
  return out;
}

}  // namespace puzzlemix
