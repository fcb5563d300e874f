#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "vcshadow/binomial.hpp"
#include "vcshadow/set_system.hpp"

namespace vcshadow {

// All (d+1)-sets containing element 1; size C(n-1, d).
inline SetSystem star(int n, int d) {
  if (d < 0 || n < d + 1) throw std::invalid_argument("star needs n >= d+1 >= 1");
  const GroundSet g(n);
  std::vector<Subset> members;
  Subset rest{g.full_mask()};
  rest = rest.without(1);
  for_each_k_subset(rest, d, [&](Subset s) { members.push_back(s.with(1)); });
  SetSystem fam(g, std::move(members));
  if (Int(fam.size()) != binom(n - 1, d)) throw std::logic_error("star size mismatch");
  return fam;
}

// Star plus every (d+1)-set that contains {2,3,4} and avoids 1; size
// C(n-1,d) + C(n-4,d-2). Matches the record size for n >= 2(d+1), but the
// shape is a guess: callers must check the VC bound themselves (it fails,
// e.g. {2,3,4} is shattered at n=6, d=2) and fall back to search for a
// size-matching family.
inline SetSystem ak_candidate(int n, int d) {
  if (d < 2 || n < 2 * (d + 1)) {
    throw std::invalid_argument("ak_candidate needs d >= 2 and n >= 2(d+1)");
  }
  SetSystem base = star(n, d);
  std::vector<Subset> members = base.members;
  const Subset core = Subset::of({2, 3, 4});
  Subset rest{GroundSet(n).full_mask()};
  for (int e : {1, 2, 3, 4}) rest = rest.without(e);
  for_each_k_subset(rest, d - 2, [&](Subset s) { members.push_back(s | core); });
  SetSystem fam(GroundSet(n), std::move(members));
  if (Int(fam.size()) != binom(n - 1, d) + binom(n - 4, d - 2)) {
    throw std::logic_error("ak_candidate size mismatch");
  }
  return fam;
}

// C([n], d+1) in full; has VC-dimension exactly d only at n = 2d+1, where
// no (d+1)-set has a disjoint member to supply the empty trace.
inline SetSystem full_family(int n, int d) {
  if (n != 2 * d + 1) throw std::invalid_argument("full_family requires n = 2d+1");
  const GroundSet g(n);
  std::vector<Subset> members;
  for_each_k_subset(g, d + 1, [&](Subset s) { members.push_back(s); });
  return SetSystem(g, std::move(members));
}

// All subsets of size at most d; size sum_{i<=d} C(n,i). Not uniform.
inline SetSystem hamming_ball(int n, int d) {
  if (d < 0 || d > n) throw std::invalid_argument("hamming_ball needs 0 <= d <= n");
  const GroundSet g(n);
  std::vector<Subset> members;
  for (int k = 0; k <= d; ++k) {
    for_each_k_subset(g, k, [&](Subset s) { members.push_back(s); });
  }
  return SetSystem(g, std::move(members));
}

}  // namespace vcshadow
