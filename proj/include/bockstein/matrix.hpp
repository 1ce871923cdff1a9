#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bockstein/prime.hpp"

namespace bockstein {

/// Which quotient ring a matrix lives over.
enum class Ring { ModP, ModP2 };

using Vector = std::vector<std::uint64_t>;

/// Dense row-major matrix over Z/p or Z/p^2 holding canonical representatives.
template <Ring R>
class Matrix {
public:
  Matrix(Prime p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  Matrix(Prime p, std::size_t rows, std::size_t cols, std::vector<std::uint64_t> entries)
      : p_(p), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw std::invalid_argument("matrix entry count " + std::to_string(data_.size()) +
                                  " does not match shape " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_));
    for (auto v : data_)
      if (v >= modulus())
        throw std::invalid_argument("matrix entry " + std::to_string(v) +
                                    " outside [0, " + std::to_string(modulus()) + ")");
  }

  Matrix(Prime p, std::initializer_list<std::initializer_list<std::uint64_t>> rows)
      : Matrix(p, rows.size(), rows.size() == 0 ? 0 : rows.begin()->size(), flatten(rows)) {}

  static constexpr Ring ring = R;

  Prime prime() const noexcept { return p_; }
  std::uint64_t modulus() const noexcept { return R == Ring::ModP ? p_.value() : p_.square(); }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  std::uint64_t operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  /// Stores v reduced into [0, modulus).
  void set(std::size_t r, std::size_t c, std::uint64_t v) noexcept { data_[r * cols_ + c] = v % modulus(); }

  std::span<const std::uint64_t> entries() const noexcept { return data_; }
  std::span<const std::uint64_t> row(std::size_t r) const noexcept {
    return std::span<const std::uint64_t>(data_).subspan(r * cols_, cols_);
  }

  Vector column(std::size_t c) const {
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      out[r] = (*this)(r, c);
    return out;
  }

  Matrix transpose() const {
    Matrix out(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        out.data_[c * rows_ + r] = (*this)(r, c);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  static std::vector<std::uint64_t>
  flatten(std::initializer_list<std::initializer_list<std::uint64_t>> rows) {
    std::vector<std::uint64_t> out;
    const std::size_t width = rows.size() == 0 ? 0 : rows.begin()->size();
    for (const auto& row : rows) {
      if (row.size() != width)
        throw std::invalid_argument("ragged matrix literal");
      out.insert(out.end(), row.begin(), row.end());
    }
    return out;
  }

  Prime p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> data_;
};

using MatrixModP = Matrix<Ring::ModP>;
using MatrixModP2 = Matrix<Ring::ModP2>;

template <Ring R>
Vector multiply(const Matrix<R>& a, std::span<const std::uint64_t> v) {
  if (v.size() != a.cols())
    throw std::invalid_argument("matrix-vector dimension mismatch");
  const auto mod = a.modulus();
  Vector out(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < a.cols(); ++c)
      acc = (acc + a(r, c) * v[c]) % mod;
    out[r] = acc;
  }
  return out;
}

template <Ring R>
Matrix<R> multiply(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.cols() != b.rows() || !(a.prime() == b.prime()))
    throw std::invalid_argument("matrix-matrix dimension mismatch");
  const auto mod = a.modulus();
  Matrix<R> out(a.prime(), a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < a.cols(); ++i)
        acc = (acc + a(r, i) * b(i, c)) % mod;
      out.set(r, c, acc);
    }
  return out;
}

template <Ring R>
Matrix<R> operator+(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || !(a.prime() == b.prime()))
    throw std::invalid_argument("matrix addition shape mismatch");
  Matrix<R> out(a.prime(), a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      out.set(r, c, modular::add(a(r, c), b(r, c), a.modulus()));
  return out;
}

template <Ring R>
Matrix<R> scale(std::uint64_t alpha, const Matrix<R>& a) {
  Matrix<R> out(a.prime(), a.rows(), a.cols());
  const auto reduced = alpha % a.modulus();
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      out.set(r, c, modular::mul(reduced, a(r, c), a.modulus()));
  return out;
}

/// Matrix whose columns are the given vectors, each of length `rows`.
template <Ring R>
Matrix<R> from_columns(Prime p, std::size_t rows, std::span<const Vector> columns) {
  Matrix<R> out(p, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows)
      throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r)
      out.set(r, c, columns[c][r]);
  }
  return out;
}

} // namespace bockstein
