#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vcshadow/binomial.hpp"
#include "vcshadow/matrix.hpp"
#include "vcshadow/multilinear.hpp"
#include "vcshadow/parallel.hpp"
#include "vcshadow/set_system.hpp"

namespace vcshadow {

// One witness set per family member: a proper subset of the member that is
// not a trace of the family on it. Exists for every member of a
// (d+1)-uniform family of VC-dimension at most d.
struct WitnessAssignment {
  std::vector<Subset> sets;  // aligned with family member order
};

class witness_error : public std::domain_error {
 public:
  witness_error(std::size_t index, Subset member)
      : std::domain_error("member " + std::to_string(index + 1) + " = " +
                          member.to_string() +
                          " is shattered; VC-dimension exceeds the bound"),
        member_index(index),
        shattered_member(member) {}

  std::size_t member_index;
  Subset shattered_member;
};

// Deterministic choice: the first non-trace proper subset of each member in
// (size, mask) order. Throws witness_error when a member is shattered.
inline WitnessAssignment find_witnesses(const SetSystem& fam, int d) {
  if (!is_uniform(fam, d + 1)) {
    throw std::invalid_argument("family is not " + std::to_string(d + 1) + "-uniform");
  }
  WitnessAssignment w;
  w.sets.reserve(fam.members.size());
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const Subset fi = fam.members[i];
    std::unordered_set<Subset, SubsetHash> traces;
    for (Subset m : fam.members) traces.insert(m & fi);
    std::vector<Subset> cands = all_submasks(fi);
    std::sort(cands.begin(), cands.end(), CanonicalLess{});
    Subset chosen;
    bool found = false;
    for (Subset b : cands) {
      if (traces.find(b) == traces.end()) {
        chosen = b;
        found = true;
        break;
      }
    }
    if (!found) throw witness_error(i, fi);
    w.sets.push_back(chosen);  // never fi itself: fi is always its own trace
  }
  return w;
}

inline void validate_witnesses(const SetSystem& fam, const WitnessAssignment& w) {
  if (w.sets.size() != fam.members.size()) {
    throw std::invalid_argument("witness count does not match family size");
  }
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const Subset fi = fam.members[i];
    const Subset bi = w.sets[i];
    if (!bi.proper_subset_of(fi)) {
      throw std::invalid_argument("witness " + bi.to_string() +
                                  " is not a proper subset of member " + fi.to_string());
    }
    for (Subset m : fam.members) {
      if ((m & fi) == bi) {
        throw std::invalid_argument("witness " + bi.to_string() + " for member " +
                                    fi.to_string() + " is a trace (via " + m.to_string() + ")");
      }
    }
  }
}

// Row label for an evaluation matrix: which polynomial family the row came
// from and its defining set data.
struct PolyLabel {
  char kind = '?';  // 'f', 'h', 'g' or 'y'
  Subset main;
  Subset aux;  // witness for 'f', Z for 'y'

  std::string str() const {
    std::string s(1, kind);
    s += main.to_string();
    if (kind == 'f') s += "B" + aux.to_string();
    if (kind == 'y') s += "Z" + aux.to_string();
    return s;
  }
};

// Rows are polynomials, columns are the characteristic vectors they are
// evaluated at: entries(i, j) = p_i(v_{A_j}).
struct EvalMatrix {
  std::vector<PolyLabel> row_labels;
  std::vector<Subset> col_labels;
  IntMatrix entries{0, 0};
};

inline EvalMatrix build_eval_matrix(const std::vector<std::pair<PolyLabel, MultilinearPoly>>& polys,
                                    const std::vector<Subset>& points, int threads = 1) {
  EvalMatrix m;
  m.entries = IntMatrix(static_cast<long>(polys.size()), static_cast<long>(points.size()));
  m.row_labels.reserve(polys.size());
  for (const auto& [label, p] : polys) m.row_labels.push_back(label);
  m.col_labels = points;
  parallel_for_indexed(polys.size(), threads, [&](std::size_t r) {
    for (std::size_t c = 0; c < points.size(); ++c) {
      m.entries(static_cast<long>(r), static_cast<long>(c)) = polys[r].second.eval(points[c]);
    }
  });
  return m;
}

// Triangular criterion on a square evaluation matrix: every polynomial is
// nonzero at its own vector and zero at all earlier vectors. Such a system
// is linearly independent.
inline bool triangular_pattern(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (long i = 0; i < m.rows(); ++i) {
    if (m(i, i) == 0) return false;
    for (long j = 0; j < i; ++j) {
      if (m(i, j) != 0) return false;
    }
  }
  return true;
}

// First entry violating the triangular pattern, as (row, col); (-1, -1) if none.
inline std::pair<long, long> first_pattern_violation(const IntMatrix& m) {
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < i; ++j) {
      if (m(i, j) != 0) return {i, j};
    }
    if (m(i, i) == 0) return {i, i};
  }
  return {-1, -1};
}

inline long rank_of(const EvalMatrix& m) { return rank_of(m.entries); }

// Independence certificate for a (d+1)-uniform family of VC-dimension at
// most d. Rows hold, in order: one f-polynomial per member, the
// h-polynomials of all sets of size < d (smaller sets first), and one
// monomial per d-set missing from the family's d-shadow. Columns hold the
// matching characteristic vectors. The triangular pattern plus a dimension
// count of the degree-at-most-d multilinear space yields
// |F| <= |shadow_d(F)| <= C(n,d).
struct ShadowCertificate {
  SetSystem family;
  int d = 0;
  WitnessAssignment witnesses;
  EvalMatrix matrix;

  bool triangular = false;
  long rank = 0;
  long row_count = 0;

  Int family_size = 0, shadow_size = 0, binom_nd = 0, ambient_dim = 0;
  bool family_le_shadow = false;
  bool family_le_binom = false;
  bool count_identity_ok = false;  // rows + |shadow| - |F| equals the ambient dimension

  bool pass() const {
    return triangular && rank == row_count && family_le_shadow && family_le_binom &&
           count_identity_ok;
  }
};

inline ShadowCertificate triangular_certificate(const SetSystem& fam, int d, int threads = 1) {
  if (d < 1) throw std::invalid_argument("shadow certificates need d >= 1");
  if (!is_uniform(fam, d + 1)) {
    throw std::invalid_argument("family is not " + std::to_string(d + 1) + "-uniform");
  }
  const GroundSet g = fam.ground;
  ShadowCertificate cert{fam, d, find_witnesses(fam, d), {}};

  std::vector<std::pair<PolyLabel, MultilinearPoly>> polys;
  std::vector<Subset> points;

  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const Subset fi = fam.members[i];
    const Subset bi = cert.witnesses.sets[i];
    polys.emplace_back(PolyLabel{'f', fi, bi}, f_poly(g, fi, bi));
    points.push_back(fi);
  }
  for (int s = 0; s <= d - 1; ++s) {
    for_each_k_subset(g, s, [&](Subset h) {
      polys.emplace_back(PolyLabel{'h', h, {}}, h_poly(g, h, d));
      points.push_back(h);
    });
  }
  const SetSystem sh = shadow(fam, d);
  std::unordered_set<Subset, SubsetHash> in_shadow(sh.members.begin(), sh.members.end());
  for_each_k_subset(g, d, [&](Subset gs) {
    if (in_shadow.find(gs) == in_shadow.end()) {
      polys.emplace_back(PolyLabel{'g', gs, {}}, g_poly(g, gs));
      points.push_back(gs);
    }
  });

  for (const auto& [label, p] : polys) {
    if (p.degree() > d) {
      throw std::logic_error("polynomial " + label.str() + " has degree above " +
                             std::to_string(d));
    }
  }

  cert.matrix = build_eval_matrix(polys, points, threads);
  cert.triangular = triangular_pattern(cert.matrix.entries);
  cert.row_count = cert.matrix.entries.rows();
  cert.rank = rank_of(cert.matrix.entries);

  cert.family_size = fam.size();
  cert.shadow_size = sh.size();
  cert.binom_nd = binom(g.n, d);
  cert.ambient_dim = sum_binom(g.n, d);
  cert.family_le_shadow = cert.family_size <= cert.shadow_size;
  cert.family_le_binom = cert.family_size <= cert.binom_nd;
  // rows = |F| + sum_{i<d} C(n,i) + (C(n,d) - |shadow|); independence keeps
  // this at most the ambient dimension, which is equivalent to |F| <= |shadow|.
  cert.count_identity_ok = Int(cert.row_count) + cert.shadow_size - cert.family_size ==
                               cert.ambient_dim &&
                           Int(cert.row_count) <= cert.ambient_dim;
  return cert;
}

inline nlohmann::ordered_json certificate_to_json(const ShadowCertificate& cert,
                                                  const char* version,
                                                  bool include_entries = true) {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["type"] = "shadow_certificate";
  j["n"] = cert.family.ground.n;
  j["d"] = cert.d;
  j["family_size"] = cert.family_size.str();
  j["shadow_size"] = cert.shadow_size.str();
  j["binom_n_d"] = cert.binom_nd.str();
  j["ambient_dim"] = cert.ambient_dim.str();
  j["row_count"] = cert.row_count;
  j["rank"] = cert.rank;
  j["triangular"] = cert.triangular;
  j["family_le_shadow"] = cert.family_le_shadow;
  j["family_le_binom"] = cert.family_le_binom;
  j["count_identity"] = cert.count_identity_ok;
  j["pass"] = cert.pass();
  nlohmann::ordered_json wit = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < cert.family.members.size(); ++i) {
    nlohmann::ordered_json e;
    e["member"] = cert.family.members[i].elements();
    e["witness"] = cert.witnesses.sets[i].elements();
    wit.push_back(std::move(e));
  }
  j["witnesses"] = std::move(wit);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& l : cert.matrix.row_labels) rows.push_back(l.str());
  j["rows"] = std::move(rows);
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (Subset p : cert.matrix.col_labels) cols.push_back("v" + p.to_string());
  j["cols"] = std::move(cols);
  if (include_entries) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (long r = 0; r < cert.matrix.entries.rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (long c = 0; c < cert.matrix.entries.cols(); ++c) {
        row.push_back(cert.matrix.entries(r, c).str());
      }
      entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
  }
  return j;
}

}  // namespace vcshadow
