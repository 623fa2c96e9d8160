#include "puzzlemix/perm.hpp"

#include <algorithm>
#include <numeric>

namespace puzzlemix {

Perm identity_perm(int m) {
  Perm p(m);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose_perm(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse_perm(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = (int)i;
  return r;
}

int perm_parity(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  int parity = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    parity ^= (len - 1) & 1;
  }
  return parity;
}

std::vector<int> cycle_lengths(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  std::vector<int> lens;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.rbegin(), lens.rend());
  return lens;
}

int support_size(const Perm& p) {
  int s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] != (int)i);
  return s;
}

bool is_three_cycle(const Perm& p) {
  if (support_size(p) != 3) return false;
  auto lens = cycle_lengths(p);
  return !lens.empty() && lens[0] == 3;
}

std::vector<Perm> all_permutations(int m, bool even_only) {
  std::vector<Perm> out;
  Perm p = identity_perm(m);
  do {
    if (!even_only || perm_parity(p) == 0) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Perm> all_three_cycles(int m) {
  std::vector<Perm> out;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c) {
        Perm p = identity_perm(m);
        p[a] = b;
        p[b] = c;
        p[c] = a;
        out.push_back(p);
        p = identity_perm(m);
        p[a] = c;
        p[c] = b;
        p[b] = a;
        out.push_back(p);
      }
  return out;
}

}  // namespace puzzlemix
