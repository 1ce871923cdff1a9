#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>

#include "bockstein/statistics.hpp"

using namespace bockstein;

TEST(ChiSquare, UniformCountsGiveZero) {
  const std::vector<std::uint64_t> counts{8, 8};
  EXPECT_DOUBLE_EQ(chi_square_uniform(counts), 0.0);
}

TEST(ChiSquare, DirectFormula) {
  const std::vector<std::uint64_t> counts{10, 6};
  EXPECT_DOUBLE_EQ(chi_square_uniform(counts), 1.0);  // (4 + 4) / 8
}

TEST(ChiSquare, RejectsNoCells) {
  EXPECT_THROW(chi_square_uniform(std::vector<std::uint64_t>{}), std::invalid_argument);
}

TEST(ChiSquareSf, DegenerateAndClosedForms) {
  EXPECT_DOUBLE_EQ(chi_square_sf(0.0, 0), 1.0);
  EXPECT_DOUBLE_EQ(chi_square_sf(123.0, 0), 1.0);
  // Two degrees of freedom: survival function is exp(-x/2).
  for (double x : {0.1, 1.0, 5.0, 30.0})
    EXPECT_NEAR(chi_square_sf(x, 2), std::exp(-x / 2), 1e-14);
  // One degree of freedom at the familiar 5% point.
  EXPECT_NEAR(chi_square_sf(3.841458820694124, 1), 0.05, 1e-12);
}

// Boost.Math serves as an independent reference for the incomplete gamma routine.
TEST(GammaQ, AgreesWithBoostAcrossRegimes) {
  for (double a : {0.5, 1.0, 2.0, 4.5, 12.0, 62.0, 312.0}) {
    for (double ratio : {0.01, 0.3, 0.9, 1.0, 1.1, 2.0, 5.0}) {
      const double x = a * ratio;
      const double expected = boost::math::gamma_q(a, x);
      EXPECT_NEAR(gamma_q(a, x), expected, 1e-12 + 1e-10 * expected) << "a=" << a << " x=" << x;
    }
  }
}

TEST(GammaQ, DomainErrors) {
  EXPECT_THROW(gamma_q(0.0, 1.0), std::domain_error);
  EXPECT_THROW(gamma_q(1.0, -1.0), std::domain_error);
  EXPECT_DOUBLE_EQ(gamma_q(3.0, 0.0), 1.0);
}
