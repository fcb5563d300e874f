#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vcshadow/binomial.hpp"

namespace vcshadow {

// Dense matrix of exact integers.
class IntMatrix {
 public:
  IntMatrix(long rows, long cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Int& operator()(long r, long c) { return a_[index(r, c)]; }
  const Int& operator()(long r, long c) const { return a_[index(r, c)]; }

 private:
  std::size_t index(long r, long c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  long rows_, cols_;
  std::vector<Int> a_;
};

struct Elimination {
  long rank = 0;
  Int det = 0;  // meaningful for square inputs only
};

namespace detail {

// Bareiss elimination over int64 with 128-bit intermediate products.
// Returns nullopt when any value leaves the representable range.
inline std::optional<Elimination> eliminate_i64(long rows, long cols,
                                                std::vector<std::int64_t> a) {
  const auto at = [&](long r, long c) -> std::int64_t& {
    return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
             static_cast<std::size_t>(c)];
  };
  // Entries are kept below 2^62 so that cross-multiplied pairs fit __int128.
  constexpr std::int64_t kMax = std::int64_t{1} << 62;
  std::int64_t prev = 1;
  int sign = 1;
  long r = 0;
  bool skipped = false;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i) {
      if (at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) {
      skipped = true;
      continue;
    }
    if (piv != r) {
      for (long j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
      sign = -sign;
    }
    const std::int64_t p = at(r, c);
    for (long i = r + 1; i < rows; ++i) {
      const std::int64_t f = at(i, c);
      for (long j = c + 1; j < cols; ++j) {
        __int128 t = static_cast<__int128>(at(i, j)) * p -
                     static_cast<__int128>(f) * at(r, j);
        t /= prev;  // exact by the fraction-free invariant
        if (t > kMax || t < -kMax) return std::nullopt;
        at(i, j) = static_cast<std::int64_t>(t);
      }
      at(i, c) = 0;
    }
    prev = p;
    ++r;
  }
  Elimination out;
  out.rank = r;
  if (rows == cols) {
    out.det = (rows == 0) ? Int(1) : (r == rows && !skipped ? Int(sign) * prev : Int(0));
  }
  return out;
}

inline Elimination eliminate_big(long rows, long cols, std::vector<Int> a) {
  const auto at = [&](long r, long c) -> Int& {
    return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
             static_cast<std::size_t>(c)];
  };
  Int prev = 1;
  int sign = 1;
  long r = 0;
  bool skipped = false;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i) {
      if (at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) {
      skipped = true;
      continue;
    }
    if (piv != r) {
      for (long j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
      sign = -sign;
    }
    const Int p = at(r, c);
    for (long i = r + 1; i < rows; ++i) {
      const Int f = at(i, c);
      for (long j = c + 1; j < cols; ++j) {
        Int t = at(i, j) * p - f * at(r, j);
        t /= prev;  // exact by the fraction-free invariant
        at(i, j) = std::move(t);
      }
      at(i, c) = 0;
    }
    prev = p;
    ++r;
  }
  Elimination out;
  out.rank = r;
  if (rows == cols) {
    out.det = (rows == 0) ? Int(1) : (r == rows && !skipped ? Int(sign) * prev : Int(0));
  }
  return out;
}

}  // namespace detail

// Fraction-free Gaussian elimination; exact rank and (for square inputs)
// determinant. Small matrices run in 64-bit words and fall back to
// arbitrary precision on overflow.
inline Elimination eliminate(const IntMatrix& m) {
  constexpr std::int64_t kFit = std::int64_t{1} << 62;
  std::vector<std::int64_t> small;
  small.reserve(static_cast<std::size_t>(m.rows() * m.cols()));
  bool fits = true;
  for (long r = 0; r < m.rows() && fits; ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      const Int& v = m(r, c);
      if (v > kFit || v < -kFit) {
        fits = false;
        break;
      }
      small.push_back(v.convert_to<std::int64_t>());
    }
  }
  if (fits) {
    if (auto res = detail::eliminate_i64(m.rows(), m.cols(), std::move(small))) return *res;
  }
  std::vector<Int> big;
  big.reserve(static_cast<std::size_t>(m.rows() * m.cols()));
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) big.push_back(m(r, c));
  }
  return detail::eliminate_big(m.rows(), m.cols(), std::move(big));
}

inline long rank_of(const IntMatrix& m) { return eliminate(m).rank; }

inline Int det_of(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  return eliminate(m).det;
}

}  // namespace vcshadow
