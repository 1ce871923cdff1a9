#pragma once

// Exact linear algebra over the field Z/p.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bockstein/matrix.hpp"

namespace bockstein {

struct RrefResult {
  MatrixModP rref;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

/// Reduced row echelon form. Columns are scanned left to right; within a column the
/// topmost nonzero entry among rows not yet holding a pivot is chosen.
inline RrefResult rref(const MatrixModP& mat) {
  const auto p = mat.prime().value();
  std::vector<std::uint64_t> a(mat.entries().begin(), mat.entries().end());
  const std::size_t rows = mat.rows();
  const std::size_t cols = mat.cols();
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return a[r * cols + c]; };

  std::vector<std::size_t> pivots;
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < cols && next_row < rows; ++c) {
    std::size_t pivot = next_row;
    while (pivot < rows && at(pivot, c) == 0)
      ++pivot;
    if (pivot == rows)
      continue;
    if (pivot != next_row)
      for (std::size_t j = 0; j < cols; ++j)
        std::swap(at(pivot, j), at(next_row, j));

    const auto inv = modular::inverse(at(next_row, c), p, p);
    for (std::size_t j = c; j < cols; ++j)
      at(next_row, j) = modular::mul(at(next_row, j), inv, p);

    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next_row || at(r, c) == 0)
        continue;
      const auto factor = at(r, c);
      for (std::size_t j = c; j < cols; ++j)
        at(r, j) = modular::sub(at(r, j), modular::mul(factor, at(next_row, j), p), p);
    }
    pivots.push_back(c);
    ++next_row;
  }
  const auto rank = pivots.size();
  return RrefResult{MatrixModP(mat.prime(), rows, cols, std::move(a)), std::move(pivots), rank};
}

inline std::size_t rank(const MatrixModP& mat) { return rref(mat).rank; }

/// Free columns of an rref, ascending.
inline std::vector<std::size_t> free_columns(const RrefResult& r) {
  std::vector<std::size_t> out;
  std::size_t next = 0;
  for (std::size_t c = 0; c < r.rref.cols(); ++c) {
    if (next < r.pivot_cols.size() && r.pivot_cols[next] == c)
      ++next;
    else
      out.push_back(c);
  }
  return out;
}

/// Canonical kernel basis: one vector per free column c, with 1 at c, the negated rref
/// column entries at pivot positions, and 0 elsewhere. Ordered by free column.
inline std::vector<Vector> kernel_basis(const RrefResult& r) {
  const auto p = r.rref.prime().value();
  std::vector<Vector> basis;
  for (auto c : free_columns(r)) {
    Vector v(r.rref.cols(), 0);
    v[c] = 1;
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
      v[r.pivot_cols[i]] = modular::neg(r.rref(i, c), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<Vector> kernel_basis(const MatrixModP& psi) { return kernel_basis(rref(psi)); }

/// Canonical bases for ker psi and coordinates for coker psi.
///
/// The image is held in reduced column echelon form: column j of `image_echelon` has a 1
/// at `image_pivot_rows[j]` and 0 at every other pivot row. The rows not in that set,
/// `coker_rows`, span a complement of im psi and serve as cokernel coordinates.
struct KernelCokernelFrame {
  MatrixModP psi;
  std::vector<std::size_t> pivot_cols;
  std::vector<Vector> kernel_basis;
  MatrixModP image_echelon;
  std::vector<std::size_t> image_pivot_rows;
  std::vector<std::size_t> coker_rows;

  Prime prime() const noexcept { return psi.prime(); }
  std::size_t rows() const noexcept { return psi.rows(); }
  std::size_t cols() const noexcept { return psi.cols(); }
  std::size_t rank() const noexcept { return pivot_cols.size(); }
  std::size_t kernel_dim() const noexcept { return kernel_basis.size(); }
  std::size_t coker_dim() const noexcept { return coker_rows.size(); }
};

inline KernelCokernelFrame coker_frame(const MatrixModP& psi) {
  auto row_form = rref(psi);
  auto kernel = kernel_basis(row_form);

  // Column echelon form of psi is the transpose of the rref of psi^T.
  auto col_form = rref(psi.transpose());
  MatrixModP image(psi.prime(), psi.rows(), col_form.rank);
  for (std::size_t j = 0; j < col_form.rank; ++j)
    for (std::size_t r = 0; r < psi.rows(); ++r)
      image.set(r, j, col_form.rref(j, r));

  std::vector<std::size_t> coker_rows;
  std::size_t next = 0;
  for (std::size_t r = 0; r < psi.rows(); ++r) {
    if (next < col_form.pivot_cols.size() && col_form.pivot_cols[next] == r)
      ++next;
    else
      coker_rows.push_back(r);
  }

  return KernelCokernelFrame{psi,
                             std::move(row_form.pivot_cols),
                             std::move(kernel),
                             std::move(image),
                             std::move(col_form.pivot_cols),
                             std::move(coker_rows)};
}

/// Coordinates of the class of w in coker psi. Zero exactly when w lies in im psi.
inline Vector coker_project(const KernelCokernelFrame& frame, std::span<const std::uint64_t> w) {
  if (w.size() != frame.rows())
    throw std::invalid_argument("coker_project: vector length " + std::to_string(w.size()) +
                                " does not match target dimension " +
                                std::to_string(frame.rows()));
  const auto p = frame.prime().value();
  Vector reduced(w.begin(), w.end());
  for (auto& x : reduced)
    x %= p;
  for (std::size_t j = 0; j < frame.image_pivot_rows.size(); ++j) {
    const auto factor = reduced[frame.image_pivot_rows[j]];
    if (factor == 0)
      continue;
    for (std::size_t r = 0; r < reduced.size(); ++r)
      reduced[r] = modular::sub(reduced[r], modular::mul(factor, frame.image_echelon(r, j), p), p);
  }
  Vector out;
  out.reserve(frame.coker_rows.size());
  for (auto r : frame.coker_rows)
    out.push_back(reduced[r]);
  return out;
}

} // namespace bockstein
