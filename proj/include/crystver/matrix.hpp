#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "crystver/rational.hpp"

namespace crystver::exact {

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rational>;

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const IntMatrix&) const = default;

  bool is_square() const { return rows_ == cols_; }
  bool is_identity() const;
  bool is_zero() const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;

  IntVector operator*(const IntVector& v) const;
  RatVector operator*(const RatVector& v) const;

  Int trace() const;

  /// Exact determinant by fraction-free (Bareiss) elimination.
  Int determinant() const;

  /// Entries joined by commas; doubles as a hash key for closure maps.
  std::string key() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

/// Dense rational matrix, row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_int(const IntMatrix& a);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const RatMatrix&) const = default;

  RatMatrix operator*(const RatMatrix& rhs) const;
  RatVector operator*(const RatVector& v) const;

  bool is_integral() const;
  /// Requires is_integral().
  IntMatrix to_int() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

RatVector add(const RatVector& x, const RatVector& y);
RatVector negate(const RatVector& x);
bool is_integral(const RatVector& v);
/// Entry-wise representative in [0,1).
RatVector mod_one(const RatVector& v);

}  // namespace crystver::exact
