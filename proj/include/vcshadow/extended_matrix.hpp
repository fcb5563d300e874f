#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vcshadow/certificate.hpp"
#include "vcshadow/matrix.hpp"
#include "vcshadow/multilinear.hpp"
#include "vcshadow/set_system.hpp"

namespace vcshadow {

// Number of members whose trace on Y and witness both equal Z.
inline long m0_count(const SetSystem& fam, const WitnessAssignment& w, Subset y, Subset z) {
  if (w.sets.size() != fam.members.size()) {
    throw std::invalid_argument("witness count does not match family size");
  }
  long count = 0;
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    if ((fam.members[i] & y) == z && w.sets[i] == z) ++count;
  }
  return count;
}

// Square matrix D of order 1 + |F| + sum_{i<d} C(n,i). Rows are the
// characteristic vectors of Y, the members, and the small sets H; columns
// are the polynomials y_{Y,Z}, the member f-polynomials, and the
// h-polynomials. Block shape:
//
//     [ -1   T^t   0 ]
//     [  R   -E    0 ]
//     [  *    *    A ]
//
// with A lower triangular with nonzero diagonal. Eliminating the top row
// against the middle band turns the corner into T.R - 1 = m0 - 1, so D is
// singular exactly when m0 = 1.
struct ExtendedMatrix {
  SetSystem family;
  int d = 0;
  WitnessAssignment witnesses;
  Subset y, z;

  std::vector<Subset> h_sets{};  // all sets of size < d, smaller first
  IntMatrix d_matrix{0, 0};
  std::vector<Int> t_vec{}, r_vec{};
  long m0 = 0;
  Int t_dot_r = 0;
  Int det = 0;
  bool blocks_ok = false;

  long order() const { return d_matrix.rows(); }
  bool singular() const { return det == 0; }
  bool consistent() const { return singular() == (m0 == 1); }
};

inline ExtendedMatrix build_extended_matrix(const SetSystem& fam, const WitnessAssignment& w,
                                            int d, Subset y, Subset z) {
  if (d < 1) throw std::invalid_argument("extended matrix needs d >= 1");
  if (!is_uniform(fam, d + 1)) {
    throw std::invalid_argument("family is not " + std::to_string(d + 1) + "-uniform");
  }
  if (!within(y, fam.ground) || y.size() != d + 1) {
    throw std::invalid_argument("Y must be a (d+1)-set inside the ground set");
  }
  for (Subset m : fam.members) {
    if (m == y) throw std::invalid_argument("Y " + y.to_string() + " is a family member");
  }
  if (!z.proper_subset_of(y)) {
    throw std::invalid_argument("Z must be a proper subset of Y");
  }
  validate_witnesses(fam, w);

  const GroundSet g = fam.ground;
  const long m = fam.size();

  ExtendedMatrix ext{fam, d, w, y, z};
  for (int s = 0; s <= d - 1; ++s) {
    for_each_k_subset(g, s, [&](Subset h) { ext.h_sets.push_back(h); });
  }
  const long wsize = static_cast<long>(ext.h_sets.size());
  const long order = 1 + m + wsize;

  std::vector<MultilinearPoly> cols;
  cols.reserve(static_cast<std::size_t>(order));
  cols.push_back(y_poly(g, y, z));
  for (long i = 0; i < m; ++i) {
    cols.push_back(f_poly(g, fam.members[static_cast<std::size_t>(i)],
                          w.sets[static_cast<std::size_t>(i)]));
  }
  for (Subset h : ext.h_sets) cols.push_back(h_poly(g, h, d));

  std::vector<Subset> pts;
  pts.reserve(static_cast<std::size_t>(order));
  pts.push_back(y);
  for (Subset mem : fam.members) pts.push_back(mem);
  for (Subset h : ext.h_sets) pts.push_back(h);

  ext.d_matrix = IntMatrix(order, order);
  for (long r = 0; r < order; ++r) {
    for (long c = 0; c < order; ++c) {
      ext.d_matrix(r, c) = cols[static_cast<std::size_t>(c)].eval(pts[static_cast<std::size_t>(r)]);
    }
  }

  ext.t_vec.reserve(static_cast<std::size_t>(m));
  ext.r_vec.reserve(static_cast<std::size_t>(m));
  ext.t_dot_r = 0;
  for (long i = 0; i < m; ++i) {
    ext.t_vec.push_back(ext.d_matrix(0, 1 + i));
    ext.r_vec.push_back(ext.d_matrix(1 + i, 0));
    ext.t_dot_r += ext.t_vec.back() * ext.r_vec.back();
  }
  ext.m0 = m0_count(fam, w, y, z);
  ext.det = det_of(ext.d_matrix);

  // Verify the block pattern entry by entry.
  bool ok = ext.d_matrix(0, 0) == -1;
  for (long i = 0; i < m && ok; ++i) {
    const Subset fi = fam.members[static_cast<std::size_t>(i)];
    const Subset bi = w.sets[static_cast<std::size_t>(i)];
    const Int t_expect = ((y & fi) == bi) ? Int((d + 1 - bi.size()) % 2 == 0 ? 1 : -1) : Int(0);
    const Int r_expect = ((y & fi) == z) ? Int((d + 1 - z.size()) % 2 == 0 ? 1 : -1) : Int(0);
    ok = ext.t_vec[static_cast<std::size_t>(i)] == t_expect &&
         ext.r_vec[static_cast<std::size_t>(i)] == r_expect;
    for (long jj = 0; jj < m && ok; ++jj) {
      ok = ext.d_matrix(1 + i, 1 + jj) == (i == jj ? Int(-1) : Int(0));
    }
    for (long jj = 0; jj < wsize && ok; ++jj) {
      ok = ext.d_matrix(1 + i, 1 + m + jj) == 0;
    }
  }
  for (long jj = 0; jj < wsize && ok; ++jj) {
    ok = ext.d_matrix(0, 1 + m + jj) == 0;
  }
  for (long r = 0; r < wsize && ok; ++r) {
    ok = ext.d_matrix(1 + m + r, 1 + m + r) != 0;
    for (long c = r + 1; c < wsize && ok; ++c) {
      ok = ext.d_matrix(1 + m + r, 1 + m + c) == 0;
    }
  }
  ext.blocks_ok = ok;
  return ext;
}

inline nlohmann::ordered_json extended_matrix_to_json(const ExtendedMatrix& ext,
                                                      const char* version) {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["type"] = "extended_matrix";
  j["n"] = ext.family.ground.n;
  j["d"] = ext.d;
  j["family_size"] = ext.family.size();
  j["order"] = ext.order();
  j["Y"] = ext.y.elements();
  j["Z"] = ext.z.elements();
  j["det"] = ext.det.str();
  j["m0"] = ext.m0;
  j["t_dot_r"] = ext.t_dot_r.str();
  j["singular"] = ext.singular();
  j["consistent"] = ext.consistent();
  j["blocks_ok"] = ext.blocks_ok;
  nlohmann::ordered_json t = nlohmann::ordered_json::array();
  nlohmann::ordered_json r = nlohmann::ordered_json::array();
  for (const Int& v : ext.t_vec) t.push_back(v.str());
  for (const Int& v : ext.r_vec) r.push_back(v.str());
  j["T"] = std::move(t);
  j["R"] = std::move(r);
  return j;
}

}  // namespace vcshadow
