#pragma once

// Pearson chi-square goodness of fit against a uniform distribution.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

namespace bockstein {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a), a > 0, x >= 0.
/// Series for P when x < a + 1, Lentz continued fraction for Q otherwise.
inline double gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::domain_error("gamma_q needs a > 0 and x >= 0");
  if (x == 0.0)
    return 1.0;
  constexpr int kMaxIter = 100000;
  constexpr double kEps = 1e-15;
  const double log_prefix = a * std::log(x) - x - std::lgamma(a);

  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
      term *= x / (a + n);
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * kEps)
        break;
    }
    return std::max(0.0, 1.0 - sum * std::exp(log_prefix));
  }

  constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny)
      d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny)
      c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps)
      break;
  }
  return std::exp(log_prefix) * h;
}

/// Upper-tail probability of a chi-square variate with `dof` degrees of freedom.
/// Zero degrees of freedom is the degenerate single-cell case and returns 1.
inline double chi_square_sf(double statistic, std::uint64_t dof) {
  if (dof == 0)
    return 1.0;
  return gamma_q(0.5 * static_cast<double>(dof), 0.5 * std::max(0.0, statistic));
}

/// Sum over cells of (observed - expected)^2 / expected with every cell expecting
/// total / cells. `counts` must list every cell, including empty ones.
inline double chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.empty())
    throw std::invalid_argument("chi-square over zero cells");
  std::uint64_t total = 0;
  for (auto c : counts)
    total += c;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  if (expected == 0.0)
    return 0.0;
  double stat = 0.0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

} // namespace bockstein
