#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vcshadow/certificate.hpp"
#include "vcshadow/set_system.hpp"

namespace vcshadow {

// Deterministic RNG wrapper; sampling avoids std::uniform_int_distribution,
// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("empty sampling range");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    while (true) {
      const std::uint64_t v = eng_();
      if (v < limit) return v % bound;
    }
  }

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

// Random (d+1)-uniform family: each candidate kept with the given density.
inline SetSystem random_uniform_family(int n, int k, double density, Rng& rng) {
  std::vector<Subset> members;
  for_each_k_subset(GroundSet(n), k, [&](Subset s) {
    if (rng.unit() < density) members.push_back(s);
  });
  return SetSystem(GroundSet(n), std::move(members));
}

// Random (d+1)-uniform family with VC-dimension at most d, produced by
// deleting a random shattered member until none remain.
inline SetSystem random_vc_bounded_family(int n, int d, Rng& rng, double density = 0.5) {
  SetSystem fam = random_uniform_family(n, d + 1, density, rng);
  while (true) {
    std::vector<std::size_t> shattered;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      if (detail::shattered_by(fam.members, fam.members[i])) shattered.push_back(i);
    }
    if (shattered.empty()) break;
    const std::size_t victim = shattered[rng.below(shattered.size())];
    std::vector<Subset> next = fam.members;
    next.erase(next.begin() + static_cast<std::ptrdiff_t>(victim));
    fam = SetSystem(GroundSet(n), std::move(next));
  }
  return fam;
}

// Uniformly random valid witness per member: any proper subset that is not
// a trace of the family on that member.
inline WitnessAssignment random_witnesses(const SetSystem& fam, int d, Rng& rng) {
  if (!is_uniform(fam, d + 1)) {
    throw std::invalid_argument("family is not " + std::to_string(d + 1) + "-uniform");
  }
  WitnessAssignment w;
  w.sets.reserve(fam.members.size());
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const Subset fi = fam.members[i];
    std::unordered_set<Subset, SubsetHash> traces;
    for (Subset m : fam.members) traces.insert(m & fi);
    std::vector<Subset> options;
    for (Subset b : all_submasks(fi)) {
      if (b != fi && traces.find(b) == traces.end()) options.push_back(b);
    }
    if (options.empty()) throw witness_error(i, fi);
    std::sort(options.begin(), options.end(), CanonicalLess{});
    w.sets.push_back(options[rng.below(options.size())]);
  }
  return w;
}

// Random pair (Y, Z): Y a (d+1)-set outside the family, Z a proper subset.
// The family must not already contain every (d+1)-set.
inline std::pair<Subset, Subset> random_yz(const SetSystem& fam, int d, Rng& rng) {
  const SetSystem comp = complement_uniform(fam, d + 1);
  if (comp.members.empty()) {
    throw std::invalid_argument("family covers all (d+1)-sets; no Y available");
  }
  const Subset y = comp.members[rng.below(comp.members.size())];
  std::vector<Subset> subs = all_submasks(y);
  std::sort(subs.begin(), subs.end(), CanonicalLess{});
  subs.pop_back();  // drop Y itself (largest in canonical order)
  const Subset z = subs[rng.below(subs.size())];
  return {y, z};
}

}  // namespace vcshadow
