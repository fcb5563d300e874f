#pragma once

#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "vcshadow/binomial.hpp"
#include "vcshadow/kruskal_katona.hpp"

namespace vcshadow {

// Arithmetic chain ruling out a (d+1)-uniform family of VC-dimension at
// most d with exactly C(n,d) members when n >= 2d+2. Assuming such a family
// and its forced structure, the complement Yc = C([n],d+1) \ F satisfies
//   |Yc| = C(n,d+1) - C(n,d),
//   |shadow_d(Yc)| = |Yc|(d+1)/(n-d-1)     (double counting),
// and the fractional shadow bound forces alpha >= n-1, i.e.
// |Yc| >= C(n-1,d+1). That fails: C(n,d+1) - C(n,d) - C(n-1,d+1)
// = C(n-1,d) - C(n,d) < 0.
struct AuditReport {
  int n = 0, d = 0;
  Int y_size;                  // |Yc| under the size hypothesis
  Rational shadow_y;           // |shadow_d(Yc)| forced by double counting
  double alpha = 0;            // C(alpha, d+1) = |Yc|
  double alpha_required = 0;   // n - 1
  Int required_y;              // C(n-1, d+1)
  bool y_below_required = false;
  Int final_diff;              // C(n-1,d) - C(n,d)
  bool final_negative = false;
  bool contradiction = false;
};

inline AuditReport impossibility_audit(int n, int d) {
  if (d < 2 || n < 2 * d + 2) {
    throw std::invalid_argument("impossibility_audit needs d >= 2 and n >= 2d+2");
  }
  AuditReport r;
  r.n = n;
  r.d = d;
  r.y_size = binom(n, d + 1) - binom(n, d);
  r.shadow_y = Rational(r.y_size * (d + 1), Int(n - d - 1));
  r.alpha = solve_alpha(r.y_size.convert_to<long long>(), d + 1);
  r.alpha_required = n - 1;
  r.required_y = binom(n - 1, d + 1);
  r.y_below_required = r.y_size < r.required_y;
  r.final_diff = binom(n - 1, d) - binom(n, d);
  r.final_negative = r.final_diff < 0;
  r.contradiction = r.y_below_required && r.final_negative;
  return r;
}

inline nlohmann::ordered_json audit_report_to_json(const AuditReport& r, const char* version) {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["type"] = "impossibility_audit";
  j["n"] = r.n;
  j["d"] = r.d;
  j["y_size"] = r.y_size.str();
  j["shadow_y_num"] = boost::multiprecision::numerator(r.shadow_y).str();
  j["shadow_y_den"] = boost::multiprecision::denominator(r.shadow_y).str();
  j["alpha"] = r.alpha;
  j["alpha_required"] = r.alpha_required;
  j["required_y"] = r.required_y.str();
  j["y_below_required"] = r.y_below_required;
  j["final_diff"] = r.final_diff.str();
  j["final_negative"] = r.final_negative;
  j["contradiction"] = r.contradiction;
  return j;
}

}  // namespace vcshadow
