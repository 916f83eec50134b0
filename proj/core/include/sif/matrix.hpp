#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sif/vector.hpp"

namespace sif {

/// Dense row-major matrix. Sizes here are network-sized (tens of cells), so no BLAS.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix from_rows(const std::vector<Vec>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Vec apply(std::span<const double> x) const;
  Vec row(std::size_t i) const;
  std::vector<Vec> to_rows() const;

  bool is_nonnegative() const noexcept;
  bool is_zero() const noexcept;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

Matrix scaled(const Matrix& m, double factor);

}  // namespace sif
