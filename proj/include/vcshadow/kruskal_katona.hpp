#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vcshadow/binomial.hpp"

namespace vcshadow {

// C(alpha, k) for real alpha: alpha(alpha-1)...(alpha-k+1)/k!.
inline double gen_binomial(double alpha, int k) {
  if (k < 0) throw std::invalid_argument("negative binomial order");
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (alpha - i) / (i + 1);
  return r;
}

// The unique alpha >= k-1 with C(alpha, k) = m; C(., k) is strictly
// increasing there. Bisection to 1e-12 relative width.
inline double solve_alpha(long long m, int k) {
  if (m < 1 || k < 1) throw std::invalid_argument("solve_alpha needs m >= 1, k >= 1");
  double lo = k - 1;
  double hi = static_cast<double>(k - 1) + static_cast<double>(m) + k;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval is one ulp wide
    if (gen_binomial(mid, k) < static_cast<double>(m)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

// Fractional shadow bound for a (d+1)-uniform family of size m: with
// C(alpha, d+1) = m, the d-shadow has at least C(alpha, d) = m(d+1)/(alpha-d)
// members. When alpha lands on an integer the bound is returned exactly.
struct KKBound {
  long long m = 0;
  int k = 0;  // uniformity d+1
  double alpha = 0;
  bool alpha_integral = false;
  double bound = 0;
};

inline KKBound kk_bound(long long m, int d) {
  if (m < 1 || d < 1) throw std::invalid_argument("kk_bound needs m >= 1, d >= 1");
  KKBound b;
  b.m = m;
  b.k = d + 1;
  b.alpha = solve_alpha(m, d + 1);
  const double rounded = std::round(b.alpha);
  if (std::abs(b.alpha - rounded) < 1e-9 && binom(static_cast<long long>(rounded), d + 1) == m) {
    b.alpha = rounded;
    b.alpha_integral = true;
    b.bound = binom(static_cast<long long>(rounded), d).convert_to<double>();
  } else {
    b.bound = static_cast<double>(m) * (d + 1) / (b.alpha - d);
  }
  return b;
}

inline double kk_lower_bound(long long m, int d) { return kk_bound(m, d).bound; }

// Greedy cascade representation m = sum_j C(a_j, j) with
// a_k > a_{k-1} > ... >= a_s >= s >= 1.
struct CascadeRep {
  long long m = 0;
  int k = 0;
  std::vector<std::pair<long long, int>> terms;  // (a_j, j), j descending
};

inline CascadeRep cascade_rep(long long m, int k) {
  if (m < 1 || k < 1) throw std::invalid_argument("cascade_rep needs m >= 1, k >= 1");
  CascadeRep rep;
  rep.m = m;
  rep.k = k;
  Int rem = m;
  long long prev_a = -1;
  for (int j = k; j >= 1 && rem > 0; --j) {
    long long a = j;
    Int c = 1;  // C(j, j)
    while (true) {
      Int next = c * (a + 1) / (a + 1 - j);  // C(a+1, j), exact
      if (next > rem) break;
      c = next;
      ++a;
    }
    // The greedy choice is automatically strictly decreasing in a.
    if (prev_a >= 0 && a >= prev_a) throw std::logic_error("cascade coefficients not decreasing");
    rep.terms.emplace_back(a, j);
    rem -= c;
    prev_a = a;
  }
  if (rem != 0) throw std::logic_error("cascade representation does not sum to m");
  return rep;
}

// Exact Kruskal-Katona shadow bound: sum_j C(a_j, j-1).
inline Int cascade_bound(long long m, int k) {
  Int b = 0;
  for (const auto& [a, j] : cascade_rep(m, k).terms) b += binom(a, j - 1);
  return b;
}

}  // namespace vcshadow
