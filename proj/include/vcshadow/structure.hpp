#pragma once

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vcshadow/binomial.hpp"
#include "vcshadow/certificate.hpp"
#include "vcshadow/set_system.hpp"

namespace vcshadow {

// The two structural properties a family meeting the C(n,d) cap would have
// to satisfy, checked exhaustively:
//   (1) for every (d+1)-set Y outside the family and every proper Z of Y,
//       exactly one member has trace Z on Y with witness Z;
//   (2) no pairwise trace F_i with F_j equals the witness of F_i.
// Alongside the verdicts the report carries the double-counting quantities:
// the d-shadow of the complement versus the size-d witnesses, and the
// identity |shadow_d(Yc)| * (n-d-1) = (d+1) * |Yc|.
struct StructureReport {
  bool property1 = true;
  bool property1_size_d = true;  // property (1) restricted to |Z| = d
  bool property2 = true;

  struct Violation1 {
    Subset y, z;
    long count = 0;
  };
  std::vector<Violation1> violations1;  // capped
  long violations1_total = 0;
  std::vector<std::pair<long, long>> violations2;  // capped, 1-based (i, j)
  long violations2_total = 0;

  Int complement_size = 0;    // |C([n],d+1)| - |F|
  Int complement_shadow = 0;  // |shadow_d| of the complement
  long size_d_witness_count = 0;
  long distinct_size_d_witnesses = 0;
  bool shadow_matches_witnesses = false;  // shadow_d(Yc) == {B_i : |B_i| = d}
  bool counting_identity = false;         // |shadow_d(Yc)|(n-d-1) == (d+1)|Yc|

  static constexpr long kViolationCap = 100;
};

inline StructureReport verify_structure(const SetSystem& fam, const WitnessAssignment& w,
                                        int d) {
  if (!is_uniform(fam, d + 1)) {
    throw std::invalid_argument("family is not " + std::to_string(d + 1) + "-uniform");
  }
  // Shape only; whether a witness is a trace is what property (2) reports.
  if (w.sets.size() != fam.members.size()) {
    throw std::invalid_argument("witness count does not match family size");
  }
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    if (!w.sets[i].proper_subset_of(fam.members[i])) {
      throw std::invalid_argument("witness " + w.sets[i].to_string() +
                                  " is not a proper subset of member " +
                                  fam.members[i].to_string());
    }
  }
  StructureReport rep;

  const SetSystem complement = complement_uniform(fam, d + 1);
  rep.complement_size = complement.size();

  for (Subset y : complement.members) {
    for (Subset z : all_submasks(y)) {
      if (z == y) continue;
      long count = 0;
      for (std::size_t i = 0; i < fam.members.size(); ++i) {
        if ((fam.members[i] & y) == z && w.sets[i] == z) ++count;
      }
      if (count != 1) {
        rep.property1 = false;
        if (z.size() == d) rep.property1_size_d = false;
        if (++rep.violations1_total <= StructureReport::kViolationCap) {
          rep.violations1.push_back({y, z, count});
        }
      }
    }
  }

  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    for (std::size_t j = 0; j < fam.members.size(); ++j) {
      if ((fam.members[i] & fam.members[j]) == w.sets[i]) {
        rep.property2 = false;
        if (++rep.violations2_total <= StructureReport::kViolationCap) {
          rep.violations2.emplace_back(static_cast<long>(i) + 1, static_cast<long>(j) + 1);
        }
      }
    }
  }

  const SetSystem cshadow = shadow(complement, d);
  rep.complement_shadow = cshadow.size();
  std::set<Subset, CanonicalLess> witness_d;
  for (Subset b : w.sets) {
    if (b.size() == d) {
      ++rep.size_d_witness_count;
      witness_d.insert(b);
    }
  }
  rep.distinct_size_d_witnesses = static_cast<long>(witness_d.size());
  std::set<Subset, CanonicalLess> shadow_set(cshadow.members.begin(), cshadow.members.end());
  rep.shadow_matches_witnesses = shadow_set == witness_d;
  rep.counting_identity =
      rep.complement_shadow * (fam.ground.n - d - 1) == Int(d + 1) * rep.complement_size;
  return rep;
}

inline nlohmann::ordered_json structure_report_to_json(const StructureReport& rep,
                                                       const char* version) {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["type"] = "structure_report";
  j["property1"] = rep.property1;
  j["property1_size_d"] = rep.property1_size_d;
  j["property2"] = rep.property2;
  j["violations1_total"] = rep.violations1_total;
  nlohmann::ordered_json v1 = nlohmann::ordered_json::array();
  for (const auto& v : rep.violations1) {
    nlohmann::ordered_json e;
    e["Y"] = v.y.elements();
    e["Z"] = v.z.elements();
    e["count"] = v.count;
    v1.push_back(std::move(e));
  }
  j["violations1"] = std::move(v1);
  j["violations2_total"] = rep.violations2_total;
  nlohmann::ordered_json v2 = nlohmann::ordered_json::array();
  for (const auto& [a, b] : rep.violations2) v2.push_back({a, b});
  j["violations2"] = std::move(v2);
  j["complement_size"] = rep.complement_size.str();
  j["complement_shadow"] = rep.complement_shadow.str();
  j["size_d_witness_count"] = rep.size_d_witness_count;
  j["distinct_size_d_witnesses"] = rep.distinct_size_d_witnesses;
  j["shadow_matches_witnesses"] = rep.shadow_matches_witnesses;
  j["counting_identity"] = rep.counting_identity;
  return j;
}

}  // namespace vcshadow
