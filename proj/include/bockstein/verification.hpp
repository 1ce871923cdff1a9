#pragma once

// Sweeps that check the structural facts the library relies on: coset sizes, fiber
// sizes, surjectivity and linearity of the Bockstein map, lift independence, and the
// Z/p^2 module lemmas underneath. Each sweep reports a pass flag and one line per item.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bockstein/bockstein_map.hpp"
#include "bockstein/distribution.hpp"
#include "bockstein/module_linalg.hpp"
#include "bockstein/report_io.hpp"
#include "bockstein/rng.hpp"

namespace bockstein {

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  bool passed = true;
  std::string detail;
  std::vector<std::string> lines;

  void fail(std::string line) {
    passed = false;
    lines.push_back("FAIL " + std::move(line));
  }
};

inline json to_json(const CheckResult& r) {
  return {{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"lines", r.lines}};
}

/// All m x n matrices over Z/p, lexicographic.
inline std::vector<MatrixModP> all_matrices(Prime p, std::size_t m, std::size_t n) {
  const auto count = guarded_pow(p.value(), m * n, kDefaultBudget);
  std::vector<MatrixModP> out;
  out.reserve(count);
  const CosetEnumeration zero(MatrixModP2(p, m, n), count);
  for (std::uint64_t i = 0; i < count; ++i)
    out.push_back(zero.displacement(i));
  return out;
}

/// All vectors of length n over Z/modulus, lexicographic.
inline std::vector<Vector> all_vectors(std::uint64_t modulus, std::size_t n) {
  std::vector<Vector> out;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i)
    count *= modulus;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Vector v(n);
    auto rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      v[i] = rest % modulus;
      rest /= modulus;
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline MatrixModP random_matrix(SplitMix64& rng, Prime p, std::size_t m, std::size_t n) {
  return MatrixModP(p, m, n, draw_entries(rng, m * n, p.value()));
}

/// Uniformly drawn psi conditioned on rank(psi) == r, by rejection.
inline MatrixModP random_psi_of_rank(SplitMix64& rng, Prime p, std::size_t m, std::size_t n, std::size_t r) {
  if (r > std::min(m, n))
    throw std::invalid_argument("requested rank exceeds min(m, n)");
  for (;;) {
    auto left = random_matrix(rng, p, m, r);
    auto right = random_matrix(rng, p, r, n);
    auto psi = r == 0 ? MatrixModP(p, m, n) : multiply(left, right);
    if (rank(psi) == r)
      return psi;
  }
}

inline std::string describe(const MatrixModP& psi) {
  return "p=" + std::to_string(psi.prime().value()) + " " + std::to_string(psi.rows()) + "x" +
         std::to_string(psi.cols()) + " psi=[" + to_literal(psi) + "]";
}

struct Shape {
  std::uint64_t p;
  std::size_t m;
  std::size_t n;
};

// ---------------------------------------------------------------------------

/// |L_psi| = p^(mn), all distinct, all reducing to psi.
inline CheckResult check_coset_sizes(const std::vector<Shape>& shapes) {
  CheckResult r{"coset size |L_psi| = p^(mn)"};
  std::uint64_t checked = 0;
  for (const auto& s : shapes) {
    const Prime p(s.p);
    for (const auto& psi : all_matrices(p, s.m, s.n)) {
      const auto coset = enumerate_L_psi(psi);
      std::set<std::vector<std::uint64_t>> seen;
      bool reduces = true;
      for (const auto& phi : coset) {
        seen.emplace(phi.entries().begin(), phi.entries().end());
        reduces = reduces && reduce_mod_p(phi) == psi;
      }
      const auto expected = big_pow(s.p, s.m * s.n);
      if (BigInt(seen.size()) != expected || BigInt(coset.size()) != expected || !reduces)
        r.fail(describe(psi) + " distinct=" + std::to_string(seen.size()) + " expected=" + expected.str());
      ++checked;
    }
  }
  r.detail = std::to_string(checked) + " psi checked";
  return r;
}

/// Exhaustive census of every listed psi: each fiber has p^((m+k)(n-k)) elements and
/// exactly p^(k(m-n+k)) distinct beta occur.
inline CheckResult check_fiber_sizes(const std::vector<MatrixModP>& psis, unsigned threads = 1,
                                     std::uint64_t budget = kDefaultBudget) {
  CheckResult r{"fiber size |Gamma^-1(beta)| = p^((m+k)(n-k))"};
  for (const auto& psi : psis) {
    const GammaContext ctx(psi);
    const auto census = exhaustive_census(ctx, budget, threads);
    std::string line = describe(psi) + " k=" + std::to_string(census.k) + " c=" + std::to_string(census.c) +
                       " distinct_beta=" + std::to_string(census.counts.size()) + "/" +
                       census.expected_hom_size.str() + " fiber=" + census.expected_fiber_size.str();
    if (census.passed())
      r.lines.push_back("PASS " + line);
    else
      r.fail(line);
  }
  r.detail = std::to_string(psis.size()) + " censuses";
  return r;
}

/// Every psi of every listed shape.
inline std::vector<MatrixModP> all_psis(const std::vector<Shape>& shapes) {
  std::vector<MatrixModP> out;
  for (const auto& s : shapes)
    for (auto& psi : all_matrices(Prime(s.p), s.m, s.n))
      out.push_back(std::move(psi));
  return out;
}

/// Gamma is onto: construct_phi_for followed by bockstein_of is the identity on the
/// whole hom-space.
inline CheckResult check_surjectivity(const std::vector<MatrixModP>& psis) {
  CheckResult r{"Gamma onto Hom(ker psi, coker psi)"};
  std::uint64_t betas = 0;
  for (const auto& psi : psis) {
    const GammaContext ctx(psi);
    const auto size = static_cast<std::uint64_t>(hom_space_size(ctx));
    for (std::uint64_t i = 0; i < size; ++i) {
      const auto beta = hom_element(ctx, i);
      const auto phi = construct_phi_for(ctx, beta);
      if (!(reduce_mod_p(phi) == psi) || !(bockstein_of(ctx, phi) == beta))
        r.fail(describe(psi) + " beta=[" + to_literal(beta.matrix()) + "]");
      ++betas;
    }
  }
  r.detail = std::to_string(betas) + " beta round-tripped over " + std::to_string(psis.size()) + " psi";
  return r;
}

/// Every phi over Z/p^2 of each shape; within each psi-bin the beta histogram is flat
/// with p^(mn) total.
inline CheckResult check_joint_flatness(const std::vector<Shape>& shapes, unsigned threads = 1) {
  CheckResult r{"joint (psi, beta) histogram flat within psi"};
  std::uint64_t bins = 0;
  for (const auto& s : shapes) {
    const Prime p(s.p);
    const auto joint = joint_exhaustive(p, s.m, s.n, kDefaultBudget, threads);
    const auto per_bin = big_pow(s.p, s.m * s.n);
    for (const auto& [key, bin] : joint.bins) {
      ++bins;
      if (!bin.flat() || BigInt(bin.total) != per_bin)
        r.fail(describe(bin.psi) + " bin not flat");
    }
    if (BigInt(joint.bins.size()) != big_pow(s.p, s.m * s.n))
      r.fail("shape " + std::to_string(s.m) + "x" + std::to_string(s.n) + " missing psi bins");
  }
  r.detail = std::to_string(bins) + " psi-bins";
  return r;
}

/// B(x + y) = B(x) + B(y) and B(a x) = a B(x) over all pairs in L_0.
inline CheckResult check_linearity_exhaustive(const std::vector<MatrixModP>& psis) {
  CheckResult r{"B linear (exhaustive)"};
  std::uint64_t pairs = 0;
  for (const auto& psi : psis) {
    const GammaContext ctx(psi);
    const auto l0 = enumerate_L0(psi.prime(), psi.rows(), psi.cols());
    std::vector<BocksteinMatrix> images;
    for (const auto& x : l0)
      images.push_back(b_map(ctx, x));
    for (std::uint64_t i = 0; i < l0.size(); ++i) {
      for (std::uint64_t j = 0; j < l0.size(); ++j, ++pairs)
        if (!(b_map(ctx, l0[i] + l0[j]) == images[i] + images[j]))
          r.fail(describe(psi) + " additivity at pair " + std::to_string(i) + "," + std::to_string(j));
      for (std::uint64_t a = 0; a < psi.prime().square(); ++a)
        if (!(b_map(ctx, scale(a, l0[i])) == scale(a, images[i])))
          r.fail(describe(psi) + " scalar " + std::to_string(a) + " at " + std::to_string(i));
    }
  }
  r.detail = std::to_string(pairs) + " pairs";
  return r;
}

inline CheckResult check_linearity_random(std::uint64_t p, std::size_t max_dim, std::uint64_t trials,
                                          std::uint64_t seed) {
  CheckResult r{"B linear (random, p=" + std::to_string(p) + ")"};
  const Prime prime(p);
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = SplitMix64::stream(seed, t);
    const auto m = 1 + rng.below(max_dim);
    const auto n = 1 + rng.below(max_dim);
    const auto psi = random_psi_of_rank(rng, prime, m, n, rng.below(std::min(m, n) + 1));
    const GammaContext ctx(psi);
    const auto x = times_p(random_matrix(rng, prime, m, n));
    const auto y = times_p(random_matrix(rng, prime, m, n));
    const auto a = rng.below(prime.square());
    if (!(b_map(ctx, x + y) == b_map(ctx, x) + b_map(ctx, y)) ||
        !(b_map(ctx, scale(a, x)) == scale(a, b_map(ctx, x))))
      r.fail(describe(psi) + " trial " + std::to_string(t));
  }
  r.detail = std::to_string(trials) + " trials, m,n <= " + std::to_string(max_dim);
  return r;
}

/// Multiplication by p on (Z/p^2)^n has kernel equal to image.
inline CheckResult check_kernel_is_image(std::uint64_t p, std::size_t n) {
  CheckResult r{"ker p = im p on (Z/p^2)^" + std::to_string(n) + ", p=" + std::to_string(p)};
  const auto q = p * p;
  const auto space = all_vectors(q, n);
  std::set<Vector> image;
  for (const auto& y : space) {
    Vector py(n);
    for (std::size_t i = 0; i < n; ++i)
      py[i] = p * y[i] % q;
    image.insert(py);
  }
  for (const auto& x : space) {
    bool in_kernel = true;
    for (auto v : x)
      in_kernel = in_kernel && (p * v) % q == 0;
    if (in_kernel != image.contains(x))
      r.fail("x=" + json(x).dump());
  }
  r.detail = std::to_string(space.size()) + " vectors";
  return r;
}

/// px -> x mod p is a well-defined additive bijection pV -> V/pV.
inline CheckResult check_pV_isomorphism(std::uint64_t p, std::size_t n) {
  CheckResult r{"pV -> V/pV isomorphism, p=" + std::to_string(p) + " n=" + std::to_string(n)};
  const auto q = p * p;
  const auto space = all_vectors(q, n);
  auto times = [&](const Vector& x) {
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = p * x[i] % q;
    return out;
  };
  auto bar = [&](const Vector& x) {
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = x[i] % p;
    return out;
  };
  // f as a relation: every preimage x of a point px must agree on x mod p.
  std::map<Vector, Vector> f;
  for (const auto& x : space) {
    auto [it, inserted] = f.emplace(times(x), bar(x));
    if (!inserted && it->second != bar(x))
      r.fail("f not well defined at x=" + json(x).dump());
  }
  std::set<Vector> targets;
  for (const auto& [px, xb] : f)
    targets.insert(xb);
  if (targets.size() != f.size() || BigInt(f.size()) != big_pow(p, n))
    r.fail("f not bijective: |pV|=" + std::to_string(f.size()) + " |image|=" + std::to_string(targets.size()));
  for (const auto& [u, fu] : f)
    for (const auto& [v, fv] : f) {
      Vector sum(n), fsum(n);
      for (std::size_t i = 0; i < n; ++i) {
        sum[i] = (u[i] + v[i]) % q;
        fsum[i] = (fu[i] + fv[i]) % p;
      }
      if (f.at(sum) != fsum)
        r.fail("f not additive");
    }
  r.detail = std::to_string(f.size()) + " elements of pV";
  return r;
}

/// Any lift of any basis of V/pV is a basis of V: its matrix is invertible over Z/p^2 and
/// the coefficient map (Z/p^2)^n -> V is a bijection.
inline CheckResult check_lifted_bases(std::uint64_t p, std::size_t n) {
  CheckResult r{"lifted bases are bases, p=" + std::to_string(p) + " n=" + std::to_string(n)};
  const Prime prime(p);
  const auto q = prime.square();
  const auto coefficients = all_vectors(q, n);
  const auto offsets = all_matrices(prime, n, n);
  std::uint64_t bases = 0;
  for (const auto& basis : all_matrices(prime, n, n)) {
    if (rank(basis) != n)
      continue;
    for (const auto& offset : offsets) {
      const auto lifted = canonical_lift(basis) + times_p(offset);
      ++bases;
      if (!inverse(lifted)) {
        r.fail("no inverse for lift of basis [" + to_literal(basis) + "]");
        continue;
      }
      std::set<Vector> reached;
      for (const auto& a : coefficients)
        reached.insert(multiply(lifted, a));
      if (reached.size() != coefficients.size())
        r.fail("lift [" + to_literal(lifted) + "] does not span");
    }
  }
  r.detail = std::to_string(bases) + " lifted bases";
  return r;
}

/// pw + phi(pV) -> w mod p + im psi is a well-defined bijection pW/phi(pV) -> coker psi.
inline CheckResult check_coker_isomorphism(std::uint64_t p, std::size_t m, std::size_t n) {
  CheckResult r{"pW/phi(pV) -> coker psi isomorphism, p=" + std::to_string(p) + " " +
                std::to_string(m) + "x" + std::to_string(n)};
  const Prime prime(p);
  const auto q = prime.square();
  const auto targets = all_vectors(p, m);
  const auto sources = all_vectors(p, n);
  std::uint64_t maps = 0;
  for (std::uint64_t idx = 0, total = guarded_pow(q, m * n, kDefaultBudget); idx < total; ++idx, ++maps) {
    std::vector<std::uint64_t> entries(m * n);
    auto rest = idx;
    for (std::size_t i = entries.size(); i-- > 0;) {
      entries[i] = rest % q;
      rest /= q;
    }
    const MatrixModP2 phi(prime, m, n, std::move(entries));
    const auto frame = coker_frame(reduce_mod_p(phi));
    std::set<Vector> phi_pV;
    for (const auto& v : sources) {
      Vector pv(n);
      for (std::size_t i = 0; i < n; ++i)
        pv[i] = p * v[i];
      phi_pV.insert(multiply(phi, pv));
    }
    std::set<Vector> classes;
    std::vector<Vector> projected;
    for (const auto& w : targets) {
      projected.push_back(coker_project(frame, w));
      classes.insert(projected.back());
    }
    for (std::size_t a = 0; a < targets.size(); ++a)
      for (std::size_t b = 0; b < targets.size(); ++b) {
        Vector diff(m);
        for (std::size_t i = 0; i < m; ++i)
          diff[i] = p * modular::sub(targets[a][i], targets[b][i], p);
        const bool same_source = phi_pV.contains(diff);
        const bool same_target = projected[a] == projected[b];
        if (same_source != same_target)
          r.fail("phi=[" + to_literal(phi) + "]");
      }
    if (BigInt(classes.size()) != big_pow(p, frame.coker_dim()))
      r.fail("phi=[" + to_literal(phi) + "] misses cokernel classes");
  }
  r.detail = std::to_string(maps) + " maps";
  return r;
}

/// beta_phi does not depend on which lifts of the kernel basis are used.
inline CheckResult check_lift_independence(std::uint64_t p, std::size_t m, std::size_t n,
                                           std::uint64_t trials, std::uint64_t seed) {
  CheckResult r{"beta independent of kernel lifts, p=" + std::to_string(p) + " " + std::to_string(m) +
                "x" + std::to_string(n)};
  const Prime prime(p);
  std::uint64_t nontrivial = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto rng = SplitMix64::stream(seed, t);
    const auto psi = random_psi_of_rank(rng, prime, m, n, rng.below(std::min(m, n) + 1));
    const GammaContext ctx(psi);
    const auto phi = ctx.phi0.matrix + times_p(random_matrix(rng, prime, m, n));
    auto lifts = ctx.lifted.lifted_kernel;
    for (auto& lift : lifts)
      for (auto& v : lift)
        v += p * rng.below(p);
    const auto canonical = bockstein_of(ctx, phi);
    if (!(bockstein_with_lifts(ctx, phi, lifts) == canonical))
      r.fail(describe(psi) + " trial " + std::to_string(t));
    nontrivial += canonical.kernel_dim() * canonical.coker_dim() > 0;
  }
  r.detail = std::to_string(trials) + " trials, " + std::to_string(nontrivial) + " with nonzero hom-space";
  return r;
}

/// m n = k (m - n + k) + (m + k)(n - k) for every feasible (m, n, k).
inline CheckResult check_counting_identity(std::size_t max_dim) {
  CheckResult r{"mn = k(m-n+k) + (m+k)(n-k)"};
  std::uint64_t triples = 0;
  for (std::int64_t m = 0; m <= static_cast<std::int64_t>(max_dim); ++m)
    for (std::int64_t n = 0; n <= static_cast<std::int64_t>(max_dim); ++n)
      for (std::int64_t k = 0; k <= n; ++k) {
        if (!feasible_kernel_dim(m, n, k))
          continue;
        ++triples;
        if (m * n != k * (m - n + k) + (m + k) * (n - k))
          r.fail("m=" + std::to_string(m) + " n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
  r.detail = std::to_string(triples) + " triples";
  return r;
}

// ---------------------------------------------------------------------------
// Conditional uniformity at p = 5, m = n = 3

struct UniformityCase {
  MatrixModP psi;
  std::uint64_t seed;
};

/// Three fixed psi of rank 3, 2 and 1 with pinned seeds.
inline std::vector<UniformityCase> uniformity_cases() {
  const Prime p(5);
  return {
      {MatrixModP(p, {{1, 2, 3}, {0, 1, 4}, {2, 0, 1}}), 101},
      {MatrixModP(p, {{1, 2, 3}, {0, 1, 4}, {1, 3, 2}}), 202},
      {MatrixModP(p, {{1, 2, 3}, {2, 4, 1}, {4, 3, 2}}), 303},
  };
}

inline constexpr double kUniformityAlpha = 1e-3;

inline std::pair<CheckResult, std::vector<SampleReport>>
check_conditional_uniformity(std::uint64_t trials, unsigned threads = 1) {
  CheckResult r{"conditional uniformity of beta (chi-square p > 1e-3)"};
  std::vector<SampleReport> reports;
  for (const auto& c : uniformity_cases()) {
    const GammaContext ctx(c.psi);
    auto report = sample_conditional(ctx, trials, c.seed, threads);
    std::string line = describe(c.psi) + " rank=" + std::to_string(rank(c.psi)) + " cells=" +
                       std::to_string(report.hom_size) + " chi2=" + json(report.chi_square).dump() +
                       " dof=" + std::to_string(report.degrees_of_freedom) +
                       " p_value=" + json(report.p_value).dump();
    if (report.p_value > kUniformityAlpha)
      r.lines.push_back("PASS " + line);
    else
      r.fail(line);
    reports.push_back(std::move(report));
  }
  r.detail = std::to_string(trials) + " samples per psi";
  return {r, reports};
}

} // namespace bockstein
