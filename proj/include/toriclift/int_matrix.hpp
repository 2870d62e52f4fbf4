#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "toriclift/integer.hpp"

namespace toriclift {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  void set_row(std::size_t r, const IntVector& values);
  void set_column(std::size_t c, const IntVector& values);
  std::vector<IntVector> row_vectors() const;

  IntMatrix transposed() const;
  IntMatrix select_rows(std::span<const std::size_t> indices) const;
  IntMatrix select_columns(std::span<const std::size_t> indices) const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& v) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const = default;

  // Elementary operations; each is invertible over Z.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_columns(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void add_column_multiple(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);
  void negate_column(std::size_t c);

  /// "[[1,0],[1,2]]"
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Row vector times matrix.
IntVector operator*(const IntVector& v, const IntMatrix& m);

IntMatrix vertical_concat(const IntMatrix& top, const IntMatrix& bottom);
IntMatrix horizontal_concat(const IntMatrix& left, const IntMatrix& right);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);
std::size_t matrix_rank(const IntMatrix& m);

/// Adjugate of a square matrix: adj(A)·A = det(A)·I.
IntMatrix adjugate(const IntMatrix& m);

}  // namespace toriclift
