#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "vcshadow/binomial.hpp"
#include "vcshadow/set_system.hpp"

namespace vcshadow {

// Multilinear polynomial with exact integer coefficients, stored as a map
// from monomial support (the set of multiplied variables) to coefficient.
// Evaluation only ever happens at 0/1 characteristic vectors, where a
// monomial contributes iff its support lies inside the point's set.
struct MultilinearPoly {
  GroundSet ground;
  std::map<Subset, Int, CanonicalLess> terms;

  explicit MultilinearPoly(GroundSet g) : ground(g) {}

  void add_term(Subset mono, const Int& coeff) {
    if (!within(mono, ground)) {
      throw std::invalid_argument("monomial support outside ground set");
    }
    if (coeff == 0) return;
    auto it = terms.find(mono);
    if (it == terms.end()) {
      terms.emplace(mono, coeff);
    } else {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  int degree() const {
    int d = 0;
    for (const auto& [mono, c] : terms) d = std::max(d, mono.size());
    return d;
  }

  Int eval(Subset a) const {
    Int s = 0;
    for (const auto& [mono, c] : terms) {
      if (mono.subset_of(a)) s += c;
    }
    return s;
  }
};

namespace detail {

// Expansion of prod_{j in keep} x_j * prod_{j in flip} (x_j - 1).
inline MultilinearPoly expand_keep_flip(GroundSet g, Subset keep, Subset flip) {
  MultilinearPoly p(g);
  for (Subset t : all_submasks(flip)) {
    const int omitted = flip.size() - t.size();
    p.add_term(keep | t, (omitted % 2 == 0) ? Int(1) : Int(-1));
  }
  return p;
}

}  // namespace detail

// f = prod_{j in B} x_j * prod_{j in F\B} (x_j - 1) - prod_{j in F} x_j,
// for a proper subset B of F. The top monomial cancels, so deg f < |F|.
inline MultilinearPoly f_poly(GroundSet g, Subset member, Subset witness) {
  if (!witness.proper_subset_of(member)) {
    throw std::invalid_argument("witness " + witness.to_string() +
                                " must be a proper subset of member " + member.to_string());
  }
  MultilinearPoly p = detail::expand_keep_flip(g, witness, member.minus(witness));
  p.add_term(member, Int(-1));
  return p;
}

// h = (sum_j x_j - (d+1)) * prod_{j in H} x_j, multilinearized by absorbing
// squares (valid on 0/1 points): equals sum_{j not in H} x_{H+j} plus
// (|H| - d - 1) x_H.
inline MultilinearPoly h_poly(GroundSet g, Subset h, int d) {
  if (h.size() > d - 1) {
    throw std::invalid_argument("h-set " + h.to_string() + " must have at most " +
                                std::to_string(d - 1) + " elements");
  }
  MultilinearPoly p(g);
  for (int e = 1; e <= g.n; ++e) {
    if (!h.contains(e)) p.add_term(h.with(e), Int(1));
  }
  p.add_term(h, Int(h.size() - d - 1));
  return p;
}

// Single monomial prod_{j in G} x_j.
inline MultilinearPoly g_poly(GroundSet g, Subset gset) {
  MultilinearPoly p(g);
  p.add_term(gset, Int(1));
  return p;
}

// Same shape as f_poly, built from a set Y outside the family and a proper
// subset Z of it; deg y < |Y|.
inline MultilinearPoly y_poly(GroundSet g, Subset y, Subset z) {
  if (!z.proper_subset_of(y)) {
    throw std::invalid_argument("Z " + z.to_string() + " must be a proper subset of Y " +
                                y.to_string());
  }
  MultilinearPoly p = detail::expand_keep_flip(g, z, y.minus(z));
  p.add_term(y, Int(-1));
  return p;
}

}  // namespace vcshadow
