#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace vcshadow {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact binomial coefficient; 0 outside the triangle.
inline Int binom(long long n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = static_cast<int>(n - k);
  Int r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // exact: r is C(n-k+i, i) after this step
  }
  return r;
}

inline Int sum_binom(long long n, int d) {
  Int s = 0;
  for (int i = 0; i <= d; ++i) s += binom(n, i);
  return s;
}

inline long long binom_ll(long long n, int k) {
  Int b = binom(n, k);
  if (b > std::numeric_limits<long long>::max()) {
    throw std::overflow_error("binomial coefficient does not fit in 64 bits");
  }
  return b.convert_to<long long>();
}

}  // namespace vcshadow
