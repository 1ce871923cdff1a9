// Computes the Bockstein homomorphism of one map and the exact distribution over its coset.

#include <iostream>

#include "bockstein/bockstein.hpp"

int main() {
  using namespace bockstein;
  const Prime p(3);

  // phi over Z/9 whose reduction mod 3 has rank 1.
  const MatrixModP2 phi(p, {{1, 5, 3}, {2, 1, 6}});
  const GammaContext ctx(reduce_mod_p(phi));
  const auto beta = bockstein_of(ctx, phi);
  std::cout << "psi  = [" << to_literal(ctx.psi) << "]\n"
            << "beta = [" << to_literal(beta.matrix()) << "]  (" << beta.coker_dim() << "x"
            << beta.kernel_dim() << ")\n";

  // Every homomorphism ker psi -> coker psi occurs equally often over L_psi.
  const auto census = exhaustive_census(ctx);
  std::cout << census.counts.size() << " distinct beta, each seen " << census.expected_fiber_size
            << " times: " << (census.passed() ? "flat" : "NOT flat") << '\n';

  const auto counts = count_report(p, 2, 3, ctx.kernel_dim());
  std::cout << "P(beta | psi) = " << counts.theorem_probability << '\n';
}
