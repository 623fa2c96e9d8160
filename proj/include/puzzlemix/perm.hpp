#pragma once

#include <vector>

namespace puzzlemix {

// Permutations as image arrays: p[i] is the image of i.
using Perm = std::vector<int>;

Perm identity_perm(int m);
// Function composition (a after b): result[i] = a[b[i]].
Perm compose_perm(const Perm& a, const Perm& b);
Perm inverse_perm(const Perm& p);
int perm_parity(const Perm& p);                // 0 even, 1 odd
std::vector<int> cycle_lengths(const Perm& p); // descending, fixed points included
int support_size(const Perm& p);
bool is_three_cycle(const Perm& p);

// All permutations of {0..m-1} in lexicographic order, optionally only the
// even ones. Intended for tiny m.
std::vector<Perm> all_permutations(int m, bool even_only);
std::vector<Perm> all_three_cycles(int m);

}  // namespace puzzlemix
