#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace polycontain {

// GMP keeps mpq_class canonical (lowest terms, positive denominator) for every
// arithmetic result; values built from raw parts go through canonicalize().
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "7", "-3/4", "0.7071", "-1.5e-2" exactly. Throws Error(kParse).
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" string.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

Rational dot(const RationalVector& u, const RationalVector& v);

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  RationalVector row(std::size_t r) const;
  RationalVector col(std::size_t c) const;
  RationalMatrix transpose() const;
  RationalVector operator*(const RationalVector& v) const;

  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank by exact Gaussian elimination.
std::size_t rank(RationalMatrix m);

/// Solves the square system m x = rhs exactly; returns false when singular.
bool solve_square(RationalMatrix m, RationalVector rhs, RationalVector& x);

}  // namespace polycontain
