#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace vcshadow {

// Subsets of a ground set of up to 128 labeled elements fit in one 128-bit word.
using uint128 = unsigned __int128;

inline constexpr int kMaxGroundSize = 128;

inline int popcount128(uint128 x) {
  return std::popcount(static_cast<std::uint64_t>(x)) +
         std::popcount(static_cast<std::uint64_t>(x >> 64));
}

inline int countr_zero128(uint128 x) {
  const auto lo = static_cast<std::uint64_t>(x);
  if (lo != 0) return std::countr_zero(lo);
  return 64 + std::countr_zero(static_cast<std::uint64_t>(x >> 64));
}

// Ground set [n] = {1, 2, ..., n}.
struct GroundSet {
  int n;

  explicit GroundSet(int size) : n(size) {
    if (n < 1 || n > kMaxGroundSize) {
      throw std::invalid_argument("ground set size must be in 1.." +
                                  std::to_string(kMaxGroundSize) + ", got " +
                                  std::to_string(size));
    }
  }

  uint128 full_mask() const {
    if (n == kMaxGroundSize) return ~uint128{0};
    return (uint128{1} << n) - 1;
  }

  friend bool operator==(GroundSet a, GroundSet b) { return a.n == b.n; }
  friend bool operator!=(GroundSet a, GroundSet b) { return a.n != b.n; }
};

// A subset of [n]; element e is stored as bit e-1.
struct Subset {
  uint128 bits = 0;

  constexpr Subset() = default;
  constexpr explicit Subset(uint128 b) : bits(b) {}

  static Subset of(std::initializer_list<int> elems) {
    Subset s;
    for (int e : elems) s = s.with(e);
    return s;
  }

  static Subset from_elements(const std::vector<int>& elems) {
    Subset s;
    for (int e : elems) s = s.with(e);
    return s;
  }

  static uint128 element_bit(int e) {
    if (e < 1 || e > kMaxGroundSize) {
      throw std::invalid_argument("element " + std::to_string(e) +
                                  " outside 1.." + std::to_string(kMaxGroundSize));
    }
    return uint128{1} << (e - 1);
  }

  bool contains(int e) const { return (bits & element_bit(e)) != 0; }
  Subset with(int e) const { return Subset{bits | element_bit(e)}; }
  Subset without(int e) const { return Subset{bits & ~element_bit(e)}; }

  int size() const { return popcount128(bits); }
  bool empty() const { return bits == 0; }

  bool subset_of(Subset o) const { return (bits & ~o.bits) == 0; }
  bool proper_subset_of(Subset o) const { return subset_of(o) && bits != o.bits; }
  bool intersects(Subset o) const { return (bits & o.bits) != 0; }

  friend Subset operator&(Subset a, Subset b) { return Subset{a.bits & b.bits}; }
  friend Subset operator|(Subset a, Subset b) { return Subset{a.bits | b.bits}; }
  friend Subset operator^(Subset a, Subset b) { return Subset{a.bits ^ b.bits}; }
  Subset minus(Subset o) const { return Subset{bits & ~o.bits}; }

  friend bool operator==(Subset a, Subset b) { return a.bits == b.bits; }
  friend bool operator!=(Subset a, Subset b) { return a.bits != b.bits; }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    uint128 m = bits;
    while (m != 0) {
      int p = countr_zero128(m);
      out.push_back(p + 1);
      m &= m - 1;
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) s += ',';
      s += std::to_string(e);
      first = false;
    }
    s += '}';
    return s;
  }
};

inline bool within(Subset s, GroundSet g) { return (s.bits & ~g.full_mask()) == 0; }

// Numeric order on the raw mask; coincides with colex order on fixed-size sets.
inline bool mask_less(Subset a, Subset b) { return a.bits < b.bits; }

// Canonical order: smaller sets first, then by mask value.
inline bool canonical_less(Subset a, Subset b) {
  int sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  return a.bits < b.bits;
}

struct CanonicalLess {
  bool operator()(Subset a, Subset b) const { return canonical_less(a, b); }
};

struct MaskLess {
  bool operator()(Subset a, Subset b) const { return mask_less(a, b); }
};

struct SubsetHash {
  std::size_t operator()(Subset s) const {
    auto mix = [](std::uint64_t x) {
      x ^= x >> 33;
      x *= 0xff51afd7ed558ccdULL;
      x ^= x >> 33;
      return x;
    };
    return mix(static_cast<std::uint64_t>(s.bits)) ^
           (mix(static_cast<std::uint64_t>(s.bits >> 64)) * 0x9e3779b97f4a7c15ULL);
  }
};

namespace detail {

template <typename Visit>
bool call_visitor(Visit&& v, Subset s) {
  if constexpr (std::is_void_v<std::invoke_result_t<Visit&, Subset>>) {
    v(s);
    return true;
  } else {
    return static_cast<bool>(v(s));
  }
}

}  // namespace detail

// Visits every k-element subset of `universe` in increasing mask order
// (colex order). The visitor may return bool; false stops the walk early.
// Returns false iff stopped early.
template <typename Visit>
bool for_each_k_subset(Subset universe, int k, Visit&& visit) {
  const std::vector<int> elems = universe.elements();
  const int u = static_cast<int>(elems.size());
  if (k < 0 || k > u) return true;
  if (k == 0) return detail::call_visitor(visit, Subset{});

  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    Subset s;
    for (int i = 0; i < k; ++i) s = s.with(elems[static_cast<std::size_t>(c[static_cast<std::size_t>(i)])]);
    if (!detail::call_visitor(visit, s)) return false;
    int j = 0;
    while (j < k) {
      int limit = (j + 1 < k) ? c[static_cast<std::size_t>(j + 1)] - 1 : u - 1;
      if (c[static_cast<std::size_t>(j)] < limit) break;
      ++j;
    }
    if (j == k) return true;
    ++c[static_cast<std::size_t>(j)];
    for (int t = 0; t < j; ++t) c[static_cast<std::size_t>(t)] = t;
  }
}

template <typename Visit>
bool for_each_k_subset(GroundSet g, int k, Visit&& visit) {
  return for_each_k_subset(Subset{g.full_mask()}, k, std::forward<Visit>(visit));
}

// All submasks of m (including empty and m itself), unsorted.
inline std::vector<Subset> all_submasks(Subset m) {
  if (m.size() > 25) throw std::length_error("submask enumeration limited to 25-element sets");
  std::vector<Subset> out;
  out.reserve(std::size_t{1} << m.size());
  uint128 s = m.bits;
  while (true) {
    out.push_back(Subset{s});
    if (s == 0) break;
    s = (s - 1) & m.bits;
  }
  return out;
}

}  // namespace vcshadow
