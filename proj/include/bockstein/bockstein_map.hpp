#pragma once

// The connecting homomorphism ker psi -> coker psi induced by a map phi of free
// Z/p^2-modules, in canonical frame coordinates.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bockstein/field_linalg.hpp"
#include "bockstein/module_linalg.hpp"

namespace bockstein {

namespace detail {

inline void put_u32(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_u32(std::string_view in, std::size_t offset) {
  std::uint64_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  return v;
}

inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace detail

/// FNV-1a 64 of (p, m, n, entries) as unsigned 32-bit little-endian words.
inline std::uint64_t psi_digest(const MatrixModP& psi) {
  std::string bytes;
  detail::put_u32(bytes, psi.prime().value());
  detail::put_u32(bytes, psi.rows());
  detail::put_u32(bytes, psi.cols());
  for (auto v : psi.entries())
    detail::put_u32(bytes, v);
  return detail::fnv1a(bytes);
}

/// A homomorphism ker psi -> coker psi as a c x k matrix over Z/p. Column i is the
/// image of the i-th canonical kernel basis vector in cokernel coordinates.
class BocksteinMatrix {
public:
  BocksteinMatrix(Prime p, std::size_t coker_dim, std::size_t kernel_dim,
                  std::vector<std::uint64_t> entries, std::uint64_t digest = 0)
      : matrix_(p, coker_dim, kernel_dim, std::move(entries)), digest_(digest) {}

  BocksteinMatrix(MatrixModP matrix, std::uint64_t digest)
      : matrix_(std::move(matrix)), digest_(digest) {}

  Prime prime() const noexcept { return matrix_.prime(); }
  std::size_t coker_dim() const noexcept { return matrix_.rows(); }
  std::size_t kernel_dim() const noexcept { return matrix_.cols(); }
  std::uint64_t psi_digest() const noexcept { return digest_; }
  const MatrixModP& matrix() const noexcept { return matrix_; }
  std::uint64_t operator()(std::size_t r, std::size_t c) const noexcept { return matrix_(r, c); }

  /// p, c, k, then the entries row-major; every field an unsigned 32-bit little-endian word.
  std::string serialize() const {
    std::string out;
    out.reserve(4 * (3 + matrix_.entries().size()));
    detail::put_u32(out, prime().value());
    detail::put_u32(out, coker_dim());
    detail::put_u32(out, kernel_dim());
    for (auto v : matrix_.entries())
      detail::put_u32(out, v);
    return out;
  }

  static BocksteinMatrix deserialize(std::string_view bytes, std::uint64_t digest = 0) {
    if (bytes.size() < 12 || bytes.size() % 4 != 0)
      throw std::invalid_argument("malformed Bockstein serialization");
    const Prime p(detail::get_u32(bytes, 0));
    const auto c = detail::get_u32(bytes, 4);
    const auto k = detail::get_u32(bytes, 8);
    if (bytes.size() != 12 + 4 * c * k)
      throw std::invalid_argument("Bockstein serialization length does not match c*k");
    std::vector<std::uint64_t> entries(c * k);
    for (std::size_t i = 0; i < entries.size(); ++i)
      entries[i] = detail::get_u32(bytes, 12 + 4 * i);
    return BocksteinMatrix(p, c, k, std::move(entries), digest);
  }

  friend bool operator==(const BocksteinMatrix& a, const BocksteinMatrix& b) {
    return a.digest_ == b.digest_ && a.matrix_ == b.matrix_;
  }

  friend BocksteinMatrix operator+(const BocksteinMatrix& a, const BocksteinMatrix& b) {
    if (a.digest_ != b.digest_)
      throw std::invalid_argument("adding Bockstein matrices bound to different psi");
    return BocksteinMatrix(a.matrix_ + b.matrix_, a.digest_);
  }

  friend BocksteinMatrix scale(std::uint64_t alpha, const BocksteinMatrix& b) {
    return BocksteinMatrix(bockstein::scale(alpha, b.matrix_), b.digest_);
  }

private:
  MatrixModP matrix_;
  std::uint64_t digest_;
};

class NotInCoset : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Everything derived from psi that the map phi -> beta_phi needs.
struct GammaContext {
  MatrixModP psi;
  LiftedFrame lifted;
  Phi0 phi0;
  std::uint64_t digest;

  explicit GammaContext(const MatrixModP& psi_in)
      : psi(psi_in), lifted(lift_frame(coker_frame(psi_in))), phi0(build_phi0(lifted)),
        digest(psi_digest(psi_in)) {}

  const KernelCokernelFrame& frame() const noexcept { return lifted.frame; }
  Prime prime() const noexcept { return psi.prime(); }
  std::size_t kernel_dim() const noexcept { return frame().kernel_dim(); }
  std::size_t coker_dim() const noexcept { return frame().coker_dim(); }
};

/// beta_phi using caller-supplied lifts of the canonical kernel basis. Any lifts give the
/// same answer; this entry point exists so that can be checked.
inline BocksteinMatrix bockstein_with_lifts(const GammaContext& ctx, const MatrixModP2& phi,
                                            std::span<const Vector> kernel_lifts) {
  const auto& frame = ctx.frame();
  if (phi.rows() != frame.rows() || phi.cols() != frame.cols() || !(phi.prime() == ctx.prime()))
    throw std::invalid_argument("phi shape does not match psi");
  if (!(reduce_mod_p(phi) == ctx.psi))
    throw NotInCoset("phi does not reduce to psi modulo p");
  if (kernel_lifts.size() != frame.kernel_dim())
    throw std::invalid_argument("wrong number of kernel lifts");

  const auto p = ctx.prime().value();
  MatrixModP beta(ctx.prime(), frame.coker_dim(), frame.kernel_dim());
  for (std::size_t i = 0; i < kernel_lifts.size(); ++i) {
    const auto& lift = kernel_lifts[i];
    for (std::size_t j = 0; j < lift.size(); ++j)
      if (lift[j] % p != frame.kernel_basis[i][j])
        throw std::invalid_argument("kernel lift does not reduce to the kernel basis vector");
    auto image = multiply(phi, lift);
    Vector quotient(image.size());
    for (std::size_t r = 0; r < image.size(); ++r) {
      if (image[r] % p != 0)
        throw std::logic_error("phi(lift) not divisible by p; kernel basis is wrong");
      quotient[r] = image[r] / p;
    }
    const auto coords = coker_project(frame, quotient);
    for (std::size_t r = 0; r < coords.size(); ++r)
      beta.set(r, i, coords[r]);
  }
  return BocksteinMatrix(std::move(beta), ctx.digest);
}

/// beta_phi for phi in L_psi, computed with the canonical lifts.
inline BocksteinMatrix bockstein_of(const GammaContext& ctx, const MatrixModP2& phi) {
  return bockstein_with_lifts(ctx, phi, ctx.lifted.lifted_kernel);
}

/// A phi in L_psi whose Bockstein is `beta`. Kernel lifts go to p*w_i, where w_i carries
/// beta's column i at the cokernel rows and zeros at the image pivot rows; complement
/// lifts go to the canonical lift of psi(f_j).
inline MatrixModP2 construct_phi_for(const GammaContext& ctx, const BocksteinMatrix& beta) {
  const auto& frame = ctx.frame();
  if (beta.kernel_dim() != frame.kernel_dim() || beta.coker_dim() != frame.coker_dim() ||
      !(beta.prime() == ctx.prime()))
    throw std::invalid_argument("beta dimensions do not match the frame of psi");
  if (beta.psi_digest() != 0 && beta.psi_digest() != ctx.digest)
    throw std::invalid_argument("beta is bound to a different psi");

  const auto p = ctx.prime().value();
  const auto k = frame.kernel_dim();
  MatrixModP2 images(ctx.prime(), frame.rows(), frame.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < frame.coker_rows.size(); ++r)
      images.set(frame.coker_rows[r], i, p * beta(r, i));
  for (std::size_t j = 0; j < frame.pivot_cols.size(); ++j)
    for (std::size_t r = 0; r < frame.rows(); ++r)
      images.set(r, k + j, ctx.psi(r, frame.pivot_cols[j]));
  return extend_from_basis(ctx.lifted, images);
}

/// B: L_0 -> Hom(ker psi, coker psi), x -> beta_{x + phi_0}.
inline BocksteinMatrix b_map(const GammaContext& ctx, const MatrixModP2& x) {
  const auto reduced = reduce_mod_p(x);
  for (auto v : reduced.entries())
    if (v != 0)
      throw NotInCoset("b_map argument does not reduce to zero modulo p");
  return bockstein_of(ctx, x + ctx.phi0.matrix);
}

inline BigInt hom_space_size(const GammaContext& ctx) {
  return big_pow(ctx.prime().value(), ctx.kernel_dim() * ctx.coker_dim());
}

/// Element `index` of Hom(ker psi, coker psi) in lexicographic order of its entries.
inline BocksteinMatrix hom_element(const GammaContext& ctx, std::uint64_t index) {
  const auto p = ctx.prime().value();
  const auto count = ctx.kernel_dim() * ctx.coker_dim();
  std::vector<std::uint64_t> digits(count, 0);
  for (std::size_t i = count; i-- > 0;) {
    digits[i] = index % p;
    index /= p;
  }
  return BocksteinMatrix(ctx.prime(), ctx.coker_dim(), ctx.kernel_dim(), std::move(digits),
                         ctx.digest);
}

} // namespace bockstein
