#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "vcshadow/subset.hpp"

namespace vcshadow {

// A family of subsets of [n]. Member order is the family's index order
// (the i of F_i) and is preserved; canonical sorting is applied only where
// an operation's output is defined that way.
struct SetSystem {
  GroundSet ground;
  std::vector<Subset> members;
  std::optional<int> uniformity;  // k when every member has exactly k elements

  SetSystem(GroundSet g, std::vector<Subset> mem)
      : ground(g), members(std::move(mem)) {
    validate();
    detect_uniformity();
  }

  static SetSystem empty(GroundSet g) { return SetSystem(g, {}); }

  long size() const { return static_cast<long>(members.size()); }

 private:
  void validate() const {
    std::unordered_set<Subset, SubsetHash> seen;
    seen.reserve(members.size() * 2);
    for (const Subset& m : members) {
      if (!within(m, ground)) {
        throw std::invalid_argument("member " + m.to_string() +
                                    " not contained in ground set [" +
                                    std::to_string(ground.n) + "]");
      }
      if (!seen.insert(m).second) {
        throw std::invalid_argument("duplicate member " + m.to_string());
      }
    }
  }

  void detect_uniformity() {
    uniformity.reset();
    if (members.empty()) return;
    int k = members.front().size();
    for (const Subset& m : members) {
      if (m.size() != k) return;
    }
    uniformity = k;
  }
};

inline bool is_uniform(const SetSystem& fam, int k) {
  return std::all_of(fam.members.begin(), fam.members.end(),
                     [k](Subset m) { return m.size() == k; });
}

inline Subset family_union(const SetSystem& fam) {
  Subset u;
  for (Subset m : fam.members) u = u | m;
  return u;
}

// Members re-sorted into canonical (size, mask) order.
inline SetSystem canonicalized(const SetSystem& fam) {
  std::vector<Subset> mem = fam.members;
  std::sort(mem.begin(), mem.end(), CanonicalLess{});
  return SetSystem(fam.ground, std::move(mem));
}

// { F ∩ S : F in the family }, deduplicated, canonically sorted.
inline std::vector<Subset> trace(const SetSystem& fam, Subset s) {
  if (!within(s, fam.ground)) {
    throw std::invalid_argument("trace set not contained in ground set");
  }
  std::set<Subset, CanonicalLess> out;
  for (Subset m : fam.members) out.insert(m & s);
  return {out.begin(), out.end()};
}

namespace detail {

// True iff all 2^|s| subsets of s occur as traces of the member list on s.
inline bool shattered_by(const std::vector<Subset>& members, Subset s) {
  const int k = s.size();
  // Distinct traces never exceed the member count.
  if (k >= 63 || members.size() < (std::uint64_t{1} << k)) return k == 0 && !members.empty();
  const std::uint64_t need = std::uint64_t{1} << k;
  const std::vector<int> elems = s.elements();
  std::vector<std::uint64_t> seen((need + 63) / 64, 0);
  std::uint64_t found = 0;
  for (Subset m : members) {
    std::uint64_t idx = 0;
    for (int j = 0; j < k; ++j) {
      if (m.contains(elems[static_cast<std::size_t>(j)])) idx |= std::uint64_t{1} << j;
    }
    std::uint64_t& word = seen[idx >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
    if ((word & bit) == 0) {
      word |= bit;
      if (++found == need) return true;
    }
  }
  return false;
}

}  // namespace detail

inline bool is_shattered(const SetSystem& fam, Subset s) {
  if (!within(s, fam.ground)) {
    throw std::invalid_argument("candidate set not contained in ground set");
  }
  return detail::shattered_by(fam.members, s);
}

// Largest |S| such that S is shattered; -1 for the empty family.
inline int vc_dimension(const SetSystem& fam) {
  if (fam.members.empty()) return -1;
  const Subset u = family_union(fam);
  int best = 0;  // the empty set is shattered by any nonempty family
  for (int k = 1; k <= u.size(); ++k) {
    // Shattering a k-set takes at least 2^k members.
    if (k >= 63 || fam.members.size() < (std::uint64_t{1} << k)) break;
    bool found = false;
    for_each_k_subset(u, k, [&](Subset s) {
      if (detail::shattered_by(fam.members, s)) {
        found = true;
        return false;
      }
      return true;
    });
    if (!found) break;
    best = k;
  }
  return best;
}

// Fast VC-dimension test for (d+1)-uniform families: a shattered (d+1)-set
// must equal one of the members (its full trace forces F ∩ S = S with
// |F| = |S|), so only members need checking.
inline bool vc_le_uniform(const SetSystem& fam, int d) {
  if (!is_uniform(fam, d + 1)) {
    throw std::invalid_argument("family is not " + std::to_string(d + 1) + "-uniform");
  }
  for (Subset m : fam.members) {
    if (detail::shattered_by(fam.members, m)) return false;
  }
  return true;
}

// All k-sets contained in at least one member; canonically sorted.
inline SetSystem shadow(const SetSystem& fam, int k) {
  if (k < 0) throw std::invalid_argument("shadow order must be nonnegative");
  std::set<Subset, CanonicalLess> out;
  for (Subset m : fam.members) {
    if (m.size() < k) continue;
    for_each_k_subset(m, k, [&](Subset s) { out.insert(s); });
  }
  return SetSystem(fam.ground, {out.begin(), out.end()});
}

// C([n],k) minus the members of a k-uniform family; canonically sorted.
inline SetSystem complement_uniform(const SetSystem& fam, int k) {
  if (!is_uniform(fam, k)) {
    throw std::invalid_argument("family is not " + std::to_string(k) + "-uniform");
  }
  std::unordered_set<Subset, SubsetHash> present(fam.members.begin(), fam.members.end());
  std::vector<Subset> out;
  for_each_k_subset(fam.ground, k, [&](Subset s) {
    if (present.find(s) == present.end()) out.push_back(s);
  });
  return SetSystem(fam.ground, std::move(out));
}

}  // namespace vcshadow
