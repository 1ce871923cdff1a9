#pragma once

// Maps of free Z/p^2-modules: reduction, lifting, lifted bases, and the coset
// L_psi = phi_0 + L_0 of all maps reducing to a fixed psi.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bockstein/field_linalg.hpp"
#include "bockstein/matrix.hpp"

namespace bockstein {

using BigInt = boost::multiprecision::cpp_int;

inline MatrixModP reduce_mod_p(const MatrixModP2& phi) {
  const auto p = phi.prime().value();
  MatrixModP out(phi.prime(), phi.rows(), phi.cols());
  for (std::size_t r = 0; r < phi.rows(); ++r)
    for (std::size_t c = 0; c < phi.cols(); ++c)
      out.set(r, c, phi(r, c) % p);
  return out;
}

/// Entrywise inclusion [0, p) into [0, p^2).
inline MatrixModP2 canonical_lift(const MatrixModP& psi) {
  return MatrixModP2(psi.prime(), psi.rows(), psi.cols(),
                     std::vector<std::uint64_t>(psi.entries().begin(), psi.entries().end()));
}

/// p * M viewed over Z/p^2. The result reduces to zero mod p.
inline MatrixModP2 times_p(const MatrixModP& m) {
  const auto p = m.prime().value();
  MatrixModP2 out(m.prime(), m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out.set(r, c, p * m(r, c));
  return out;
}

/// Inverse over Z/p^2, or nullopt when the reduction mod p is singular. A square matrix
/// over Z/p^2 is invertible exactly when its reduction is, and elimination can then
/// always pick a pivot that is a unit.
inline std::optional<MatrixModP2> inverse(const MatrixModP2& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("inverse of non-square matrix");
  const auto p = a.prime().value();
  const auto q = a.prime().square();
  const std::size_t n = a.rows();
  std::vector<std::uint64_t> work(n * 2 * n, 0);
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return work[r * 2 * n + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      at(r, c) = a(r, c);
    at(r, n + r) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && at(pivot, c) % p == 0)
      ++pivot;
    if (pivot == n)
      return std::nullopt;
    if (pivot != c)
      for (std::size_t j = 0; j < 2 * n; ++j)
        std::swap(at(pivot, j), at(c, j));
    const auto inv = modular::inverse(at(c, c), p, q);
    for (std::size_t j = 0; j < 2 * n; ++j)
      at(c, j) = modular::mul(at(c, j), inv, q);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || at(r, c) == 0)
        continue;
      const auto factor = at(r, c);
      for (std::size_t j = 0; j < 2 * n; ++j)
        at(r, j) = modular::sub(at(r, j), modular::mul(factor, at(c, j), q), q);
    }
  }
  MatrixModP2 out(a.prime(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      out.set(r, c, at(r, n + c));
  return out;
}

/// Lifts of the canonical basis {e_i} of ker psi and of its completion {f_j}, the
/// standard vectors at the rref pivot columns. Together they form a basis of V.
struct LiftedFrame {
  KernelCokernelFrame frame;
  std::vector<Vector> lifted_kernel;
  std::vector<Vector> lifted_complement;
  /// n x n matrix with columns lifted_kernel then lifted_complement.
  MatrixModP2 basis;
  MatrixModP2 basis_inverse;
};

inline LiftedFrame lift_frame(KernelCokernelFrame frame) {
  const auto p = frame.prime();
  const auto n = frame.cols();
  std::vector<Vector> kernel = frame.kernel_basis;
  std::vector<Vector> complement;
  for (auto c : frame.pivot_cols) {
    Vector f(n, 0);
    f[c] = 1;
    complement.push_back(std::move(f));
  }
  std::vector<Vector> columns = kernel;
  columns.insert(columns.end(), complement.begin(), complement.end());
  auto basis = from_columns<Ring::ModP2>(p, n, columns);
  auto inv = inverse(basis);
  if (!inv)
    throw std::logic_error("lifted frame is not a basis; kernel/complement construction is broken");
  return LiftedFrame{std::move(frame), std::move(kernel), std::move(complement), std::move(basis),
                     std::move(*inv)};
}

/// The map on V that sends each basis column of `lifted.basis` to the matching column of
/// `images` (an m x n matrix over Z/p^2), extended linearly.
inline MatrixModP2 extend_from_basis(const LiftedFrame& lifted, const MatrixModP2& images) {
  return multiply(images, lifted.basis_inverse);
}

/// The distinguished element of L_psi killing every lifted kernel vector.
struct Phi0 {
  MatrixModP2 matrix;
};

inline Phi0 build_phi0(const LiftedFrame& lifted) {
  const auto& frame = lifted.frame;
  const auto k = frame.kernel_dim();
  MatrixModP2 images(frame.prime(), frame.rows(), frame.cols());
  for (std::size_t j = 0; j < frame.pivot_cols.size(); ++j) {
    const auto c = frame.pivot_cols[j];
    for (std::size_t r = 0; r < frame.rows(); ++r)
      images.set(r, k + j, frame.psi(r, c));
  }
  return Phi0{extend_from_basis(lifted, images)};
}

inline Phi0 build_phi0(const MatrixModP& psi) { return build_phi0(lift_frame(coker_frame(psi))); }

// ---------------------------------------------------------------------------
// Enumeration

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const BigInt& required, std::uint64_t budget)
      : std::runtime_error("enumeration needs " + required.str() + " elements, budget is " +
                           std::to_string(budget)),
        required_(required), budget_(budget) {}

  const BigInt& required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

private:
  BigInt required_;
  std::uint64_t budget_;
};

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

/// base^exp as a machine word, or BudgetExceeded when it is larger than `budget`.
inline std::uint64_t guarded_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t budget) {
  const auto exact = big_pow(base, exp);
  if (exact > budget)
    throw BudgetExceeded(exact, budget);
  return static_cast<std::uint64_t>(exact);
}

/// The elements offset + p*M, with M running over all m x n matrices over Z/p in
/// lexicographic order (first row-major entry most significant). Element i is computed
/// directly from i, so ranges may be split across workers.
class CosetEnumeration {
public:
  CosetEnumeration(MatrixModP2 offset, std::uint64_t budget)
      : offset_(std::move(offset)),
        size_(guarded_pow(offset_.prime().value(), offset_.rows() * offset_.cols(), budget)) {}

  std::uint64_t size() const noexcept { return size_; }
  const MatrixModP2& offset() const noexcept { return offset_; }

  /// The underlying M for element `index`.
  MatrixModP displacement(std::uint64_t index) const {
    const auto p = offset_.prime().value();
    const auto count = offset_.rows() * offset_.cols();
    std::vector<std::uint64_t> digits(count, 0);
    for (std::size_t i = count; i-- > 0;) {
      digits[i] = index % p;
      index /= p;
    }
    return MatrixModP(offset_.prime(), offset_.rows(), offset_.cols(), std::move(digits));
  }

  MatrixModP2 operator[](std::uint64_t index) const { return offset_ + times_p(displacement(index)); }

  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = MatrixModP2;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const CosetEnumeration* owner, std::uint64_t index) : owner_(owner), index_(index) {}

    MatrixModP2 operator*() const { return (*owner_)[index_]; }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      auto tmp = *this;
      ++index_;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

  private:
    const CosetEnumeration* owner_ = nullptr;
    std::uint64_t index_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size_}; }

private:
  MatrixModP2 offset_;
  std::uint64_t size_;
};

/// L_0: all m x n matrices over Z/p^2 that reduce to zero.
inline CosetEnumeration enumerate_L0(Prime p, std::size_t m, std::size_t n,
                                     std::uint64_t budget = kDefaultBudget) {
  return CosetEnumeration(MatrixModP2(p, m, n), budget);
}

/// L_psi = phi_0 + L_0.
inline CosetEnumeration enumerate_L_psi(const Phi0& phi0, std::uint64_t budget = kDefaultBudget) {
  return CosetEnumeration(phi0.matrix, budget);
}

inline CosetEnumeration enumerate_L_psi(const MatrixModP& psi, std::uint64_t budget = kDefaultBudget) {
  return enumerate_L_psi(build_phi0(psi), budget);
}

} // namespace bockstein
