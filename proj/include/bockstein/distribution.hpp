#pragma once

// Closed-form counts, exhaustive fiber censuses over L_psi, and seeded samplers for the
// distribution of Bockstein homomorphisms.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bockstein/bockstein_map.hpp"
#include "bockstein/module_linalg.hpp"
#include "bockstein/parallel.hpp"
#include "bockstein/rng.hpp"
#include "bockstein/statistics.hpp"

namespace bockstein {

using BigRational = boost::multiprecision::cpp_rational;

/// Serialized BocksteinMatrix -> number of occurrences.
using CountTable = std::map<std::string, std::uint64_t>;

inline constexpr std::uint64_t kDefaultTableBudget = std::uint64_t{1} << 22;

// ---------------------------------------------------------------------------
// Closed forms

struct CountReport {
  std::uint64_t p = 0, m = 0, n = 0, k = 0;
  BigInt size_L_psi;
  BigInt hom_size;
  BigInt fiber_size;
  BigRational theorem_probability;

  friend bool operator==(const CountReport&, const CountReport&) = default;
};

/// Whether some m x n psi has a kernel of dimension k: rank n - k must be in [0, min(m, n)].
constexpr bool feasible_kernel_dim(std::uint64_t m, std::uint64_t n, std::uint64_t k) noexcept {
  return k <= n && n - k <= m;
}

inline CountReport count_report(Prime prime, std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  if (!feasible_kernel_dim(m, n, k))
    throw std::invalid_argument("no " + std::to_string(m) + "x" + std::to_string(n) +
                                " map has a kernel of dimension " + std::to_string(k));
  const auto p = prime.value();
  const auto coker = m - n + k;
  CountReport r;
  r.p = p;
  r.m = m;
  r.n = n;
  r.k = k;
  r.size_L_psi = big_pow(p, m * n);
  r.hom_size = big_pow(p, k * coker);
  r.fiber_size = big_pow(p, (m + k) * (n - k));
  r.theorem_probability = BigRational(BigInt(1), r.hom_size);
  if (r.size_L_psi != r.hom_size * r.fiber_size)
    throw std::logic_error("p^(mn) != p^(k(m-n+k)) * p^((m+k)(n-k))");
  return r;
}

// ---------------------------------------------------------------------------
// Dense tallies over the hom-space

/// Lexicographic index of beta's entries; the inverse of hom_element.
inline std::uint64_t hom_index(const BocksteinMatrix& beta) {
  const auto p = beta.prime().value();
  std::uint64_t index = 0;
  for (auto v : beta.matrix().entries())
    index = index * p + v;
  return index;
}

namespace detail {

inline std::uint64_t guarded_hom_size(const GammaContext& ctx, std::uint64_t table_budget) {
  const auto size = hom_space_size(ctx);
  if (size > table_budget)
    throw BudgetExceeded(size, table_budget);
  return static_cast<std::uint64_t>(size);
}

inline std::vector<std::uint64_t> merge_dense(const std::vector<std::vector<std::uint64_t>>& parts,
                                              std::size_t cells) {
  std::vector<std::uint64_t> total(cells, 0);
  for (const auto& part : parts)
    for (std::size_t i = 0; i < part.size(); ++i)
      total[i] += part[i];
  return total;
}

inline CountTable to_table(const GammaContext& ctx, const std::vector<std::uint64_t>& dense) {
  CountTable table;
  for (std::uint64_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0)
      table.emplace(hom_element(ctx, i).serialize(), dense[i]);
  return table;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Exhaustive census

struct FiberCensus {
  MatrixModP psi;
  std::uint64_t k = 0;
  std::uint64_t c = 0;
  CountTable counts;
  std::uint64_t total = 0;
  BigInt expected_total;
  BigInt expected_fiber_size;
  BigInt expected_hom_size;

  bool total_matches() const { return BigInt(total) == expected_total; }
  bool fibers_match() const {
    for (const auto& [key, count] : counts)
      if (BigInt(count) != expected_fiber_size)
        return false;
    return true;
  }
  bool hom_covered() const { return BigInt(counts.size()) == expected_hom_size; }
  bool passed() const { return total_matches() && fibers_match() && hom_covered(); }

  friend bool operator==(const FiberCensus& a, const FiberCensus& b) {
    return a.psi == b.psi && a.k == b.k && a.c == b.c && a.counts == b.counts &&
           a.total == b.total && a.expected_total == b.expected_total &&
           a.expected_fiber_size == b.expected_fiber_size &&
           a.expected_hom_size == b.expected_hom_size;
  }
};

/// Applies bockstein_of to every element of L_psi and tallies the results.
inline FiberCensus exhaustive_census(const GammaContext& ctx, std::uint64_t budget = kDefaultBudget,
                                     unsigned threads = 1) {
  const auto coset = enumerate_L_psi(ctx.phi0, budget);
  const auto cells = detail::guarded_hom_size(ctx, std::max(budget, kDefaultTableBudget));
  auto parts = map_ranges<std::vector<std::uint64_t>>(
      coset.size(), threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> dense(cells, 0);
        for (auto i = begin; i < end; ++i)
          ++dense[hom_index(bockstein_of(ctx, coset[i]))];
        return dense;
      });
  const auto dense = detail::merge_dense(parts, cells);

  const auto& psi = ctx.psi;
  const auto report = count_report(ctx.prime(), psi.rows(), psi.cols(), ctx.kernel_dim());
  FiberCensus census{psi,
                     ctx.kernel_dim(),
                     ctx.coker_dim(),
                     detail::to_table(ctx, dense),
                     coset.size(),
                     report.size_L_psi,
                     report.fiber_size,
                     report.hom_size};
  return census;
}

// ---------------------------------------------------------------------------
// Conditional sampling

struct SampleReport {
  MatrixModP psi{Prime(2), 0, 0};
  std::uint64_t k = 0;
  std::uint64_t c = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t hom_size = 0;
  CountTable counts;
  double chi_square = 0.0;
  std::uint64_t degrees_of_freedom = 0;
  double p_value = 1.0;

  friend bool operator==(const SampleReport&, const SampleReport&) = default;
};

/// Uniform m x n matrix over Z/`modulus` drawn from a single stream.
inline std::vector<std::uint64_t> draw_entries(SplitMix64& rng, std::size_t count, std::uint64_t modulus) {
  std::vector<std::uint64_t> out(count);
  for (auto& v : out)
    v = rng.below(modulus);
  return out;
}

/// Statistic and p-value of a dense tally against the uniform distribution on its cells.
inline std::pair<double, double> uniformity(const std::vector<std::uint64_t>& dense) {
  const double stat = chi_square_uniform(dense);
  return {stat, chi_square_sf(stat, dense.size() - 1)};
}

/// Draws phi uniformly from L_psi as phi_0 + p*M with M uniform over m x n matrices mod p.
/// Trial t uses SplitMix64::stream(seed, t).
inline SampleReport sample_conditional(const GammaContext& ctx, std::uint64_t trials, std::uint64_t seed,
                                       unsigned threads = 1,
                                       std::uint64_t table_budget = kDefaultTableBudget) {
  if (trials == 0)
    throw std::invalid_argument("sample_conditional needs at least one trial");
  const auto cells = detail::guarded_hom_size(ctx, table_budget);
  const auto& psi = ctx.psi;
  const auto p = ctx.prime();
  auto parts = map_ranges<std::vector<std::uint64_t>>(
      trials, threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> dense(cells, 0);
        for (auto t = begin; t < end; ++t) {
          auto rng = SplitMix64::stream(seed, t);
          MatrixModP displacement(p, psi.rows(), psi.cols(),
                                  draw_entries(rng, psi.rows() * psi.cols(), p.value()));
          ++dense[hom_index(bockstein_of(ctx, ctx.phi0.matrix + times_p(displacement)))];
        }
        return dense;
      });
  const auto dense = detail::merge_dense(parts, cells);
  const auto [stat, pval] = uniformity(dense);

  SampleReport r;
  r.psi = psi;
  r.k = ctx.kernel_dim();
  r.c = ctx.coker_dim();
  r.trials = trials;
  r.seed = seed;
  r.hom_size = cells;
  r.counts = detail::to_table(ctx, dense);
  r.chi_square = stat;
  r.degrees_of_freedom = cells - 1;
  r.p_value = pval;
  return r;
}

// ---------------------------------------------------------------------------
// Joint distribution over (psi, beta)

struct PsiBin {
  MatrixModP psi;
  std::uint64_t k = 0;
  std::uint64_t c = 0;
  std::uint64_t hom_size = 0;
  std::uint64_t total = 0;
  CountTable counts;

  /// Every hom-space element observed equally often.
  bool flat() const {
    if (counts.size() != hom_size)
      return false;
    const auto first = counts.begin()->second;
    for (const auto& [key, count] : counts)
      if (count != first)
        return false;
    return true;
  }

  friend bool operator==(const PsiBin&, const PsiBin&) = default;
};

struct JointReport {
  std::uint64_t p = 0, m = 0, n = 0;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;  // absent for the exhaustive sweep
  /// Keyed by the serialized psi entries, so bins come out in a fixed order.
  std::map<std::vector<std::uint64_t>, PsiBin> bins;

  friend bool operator==(const JointReport&, const JointReport&) = default;
};

namespace detail {

using BinMap = std::map<std::vector<std::uint64_t>, PsiBin>;

class ContextCache {
public:
  const GammaContext& get(const MatrixModP& psi) {
    std::vector<std::uint64_t> key(psi.entries().begin(), psi.entries().end());
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(std::move(key), GammaContext(psi)).first;
    return it->second;
  }

private:
  std::map<std::vector<std::uint64_t>, GammaContext> cache_;
};

inline void tally(BinMap& bins, ContextCache& cache, const MatrixModP2& phi) {
  const auto psi = reduce_mod_p(phi);
  const auto& ctx = cache.get(psi);
  std::vector<std::uint64_t> key(psi.entries().begin(), psi.entries().end());
  auto it = bins.find(key);
  if (it == bins.end()) {
    const auto hom = hom_space_size(ctx);
    PsiBin bin{psi, ctx.kernel_dim(), ctx.coker_dim(),
               hom > std::numeric_limits<std::uint64_t>::max() ? 0 : static_cast<std::uint64_t>(hom),
               0, {}};
    it = bins.emplace(std::move(key), std::move(bin)).first;
  }
  ++it->second.total;
  ++it->second.counts[bockstein_of(ctx, phi).serialize()];
}

inline BinMap merge_bins(std::vector<BinMap>& parts) {
  BinMap out;
  for (auto& part : parts)
    for (auto& [key, bin] : part) {
      auto it = out.find(key);
      if (it == out.end()) {
        out.emplace(key, std::move(bin));
        continue;
      }
      it->second.total += bin.total;
      for (const auto& [beta, count] : bin.counts)
        it->second.counts[beta] += count;
    }
  return out;
}

} // namespace detail

/// Draws phi with entries i.i.d. uniform on [0, p^2), bins beta_phi by psi = phi mod p.
inline JointReport sample_unconditional(Prime p, std::size_t m, std::size_t n, std::uint64_t trials,
                                        std::uint64_t seed, unsigned threads = 1) {
  if (trials == 0)
    throw std::invalid_argument("sample_unconditional needs at least one trial");
  auto parts = map_ranges<detail::BinMap>(trials, threads, [&](std::uint64_t begin, std::uint64_t end) {
    detail::BinMap bins;
    detail::ContextCache cache;
    for (auto t = begin; t < end; ++t) {
      auto rng = SplitMix64::stream(seed, t);
      tally(bins, cache, MatrixModP2(p, m, n, draw_entries(rng, m * n, p.square())));
    }
    return bins;
  });
  return JointReport{p.value(), m, n, trials, seed, detail::merge_bins(parts)};
}

/// Every m x n matrix over Z/p^2, binned the same way as sample_unconditional.
inline JointReport joint_exhaustive(Prime p, std::size_t m, std::size_t n,
                                    std::uint64_t budget = kDefaultBudget, unsigned threads = 1) {
  const auto total = guarded_pow(p.square(), m * n, budget);
  auto parts = map_ranges<detail::BinMap>(total, threads, [&](std::uint64_t begin, std::uint64_t end) {
    detail::BinMap bins;
    detail::ContextCache cache;
    for (auto i = begin; i < end; ++i) {
      std::vector<std::uint64_t> entries(m * n);
      auto index = i;
      for (std::size_t j = entries.size(); j-- > 0;) {
        entries[j] = index % p.square();
        index /= p.square();
      }
      tally(bins, cache, MatrixModP2(p, m, n, std::move(entries)));
    }
    return bins;
  });
  return JointReport{p.value(), m, n, total, std::nullopt, detail::merge_bins(parts)};
}

} // namespace bockstein
