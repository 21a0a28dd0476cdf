#include "diamond/correlations.hpp"
#include "diamond/validation.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using diamond::ChainParams;
using diamond::cplx;
using diamond::Density4;
using diamond::Mat4;

Density4 bell_state() {
  Eigen::Vector4cd psi(1, 0, 0, 1);
  psi /= std::sqrt(2.0);
  return Density4::from_matrix(psi * psi.adjoint());
}

Density4 diag_state(double a, double b, double c, double d) {
  Mat4 m = Mat4::Zero();
  m.diagonal() << a, b, c, d;
  return Density4::from_matrix(m);
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Reference discord of a Bell-diagonal state from its correlation
// coefficients: the known analytic minimization over measurement axes.
double bell_diagonal_discord(const diamond::BellCoeffs& c) {
  const double l[4] = {(1 - c.c1 - c.c2 - c.c3) / 4, (1 - c.c1 + c.c2 + c.c3) / 4, (1 + c.c1 - c.c2 + c.c3) / 4,
                       (1 + c.c1 + c.c2 - c.c3) / 4};
  double sum = 0.0;
  for (double li : l) sum += li > 0 ? li * std::log2(4 * li) : 0.0;
  const double cm = std::max({std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)});
  return sum - (xlog2x(1 - cm) + xlog2x(1 + cm)) / 2;
}

}  // namespace

TEST(Entropy, Examples) {
  EXPECT_NEAR(diamond::von_neumann_entropy(diag_state(1, 0, 0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(diamond::von_neumann_entropy(Density4::maximally_mixed()), 2.0, 1e-14);
  EXPECT_NEAR(diamond::von_neumann_entropy(diag_state(0.5, 0.5, 0, 0)), 1.0, 1e-14);
}

TEST(MutualInformation, Examples) {
  EXPECT_NEAR(diamond::mutual_information(Density4::maximally_mixed()), 0.0, 1e-14);
  EXPECT_NEAR(diamond::mutual_information(bell_state()), 2.0, 1e-12);
  const auto rho = diamond::thermal_state_exact({1, 1, 0, 0, 0.5});
  EXPECT_NEAR(diamond::mutual_information(rho),
              diamond::classical_correlation(rho) + diamond::quantum_discord_definitional(rho), 1e-9);
}

TEST(Concurrence, Examples) {
  EXPECT_NEAR(diamond::concurrence_wootters(bell_state()), 1.0, 1e-12);
  EXPECT_NEAR(diamond::concurrence_wootters(Density4::maximally_mixed()), 0.0, 1e-15);
  EXPECT_EQ(diamond::concurrence_closed_form(diamond::boltzmann_elements({1, 0, 1, 0.5, 0.5})), 0.0);
  EXPECT_NEAR(diamond::concurrence_closed_form(diamond::boltzmann_elements({1, 1, 0, 0, 1e-3})), 1.0 / 3.0, 1e-3);
  EXPECT_NEAR(diamond::concurrence_closed_form(diamond::boltzmann_elements({0.5, 1, 0, 0, 1e-3})), 1.0, 1e-3);
}

TEST(Concurrence, WoottersMatchesClosedFormOnGrid) {
  for (const auto& p : diamond::sample_grid(200)) {
    const double a = diamond::concurrence_wootters(diamond::thermal_state_exact(p));
    const double b = diamond::concurrence_closed_form(diamond::boltzmann_elements(p));
    EXPECT_NEAR(a, b, 1e-10) << diamond::detail::describe(p);
  }
}

TEST(ConditionalEntropyFastPath, Limits) {
  diamond::ClusterElements flat{1, 1, 1, 0, 4};
  EXPECT_NEAR(diamond::min_conditional_entropy_closed(flat), 1.0, 1e-15);
  diamond::ClusterElements sharp{1, 0, 0, 0, 1};
  EXPECT_NEAR(diamond::min_conditional_entropy_closed(sharp), 0.0, 1e-15);
}

TEST(ConditionalEntropyFastPath, NeverBelowOracle) {
  for (const auto& p : diamond::sample_grid(50)) {
    const auto d = diamond::discord_decomposition(diamond::thermal_state_exact(p));
    EXPECT_GE(diamond::min_conditional_entropy_closed(diamond::boltzmann_elements(p)),
              d.min_conditional_entropy - 1e-9);
  }
  // At J = J2 = 1, T = 0.5 the fast path overestimates the minimum.
  const ChainParams p{1, 1, 0, 0, 0.5};
  const double oracle = diamond::discord_decomposition(diamond::thermal_state_exact(p)).min_conditional_entropy;
  EXPECT_GT(diamond::min_conditional_entropy_closed(diamond::boltzmann_elements(p)), oracle + 1e-3);
}

TEST(Discord, Examples) {
  EXPECT_NEAR(diamond::quantum_discord_definitional(Density4::maximally_mixed()), 0.0, 1e-12);
  EXPECT_NEAR(diamond::quantum_discord_definitional(bell_state()), 1.0, 1e-9);
  EXPECT_NEAR(diamond::quantum_discord_definitional(diamond::thermal_state_exact({1, 0, 0.3, 0.2, 0.7})), 0.0, 1e-9);
  EXPECT_NEAR(diamond::classical_correlation(Density4::maximally_mixed()), 0.0, 1e-12);
  EXPECT_NEAR(diamond::classical_correlation(bell_state()), 1.0, 1e-9);
  const auto cc = diag_state(0.5, 0, 0, 0.5);
  EXPECT_NEAR(diamond::classical_correlation(cc), 1.0, 1e-9);
  EXPECT_NEAR(diamond::quantum_discord_definitional(cc), 0.0, 1e-9);
}

TEST(Discord, MatchesBellDiagonalReference) {
  for (const auto& q : diamond::sample_grid(80)) {
    ChainParams p = q;
    p.field = 0.0;
    const auto rho = diamond::thermal_state_exact(p);
    EXPECT_NEAR(diamond::quantum_discord_definitional(rho), bell_diagonal_discord(diamond::bell_diagonal_coeffs(rho)),
                1e-9)
        << diamond::detail::describe(p);
  }
}

TEST(Discord, FrozenValues) {
  EXPECT_NEAR(diamond::quantum_discord_definitional(diamond::thermal_state_exact({1, 1, 0, 0, 0.5})),
              0.179588237440592, 1e-9);
  EXPECT_NEAR(diamond::quantum_discord_definitional(diamond::thermal_state_exact({1, 1, 0, 0, 1e-3})),
              0.398393254261, 1e-9);
}

TEST(Gmqd, Examples) {
  EXPECT_NEAR(diamond::gmqd(Density4::maximally_mixed()), 0.0, 1e-15);
  EXPECT_NEAR(diamond::gmqd(bell_state()), 0.5, 1e-14);
  EXPECT_NEAR(diamond::gmqd(diamond::thermal_state_exact({0.8, 0, 1.0, 0.4, 0.6})), 0.0, 1e-14);
  EXPECT_NEAR(diamond::gmqd(diamond::thermal_state_exact({1, 1, 0, 0, 1e-3})), 0.138888888889, 1e-9);
}

TEST(Gqd1Bell, Examples) {
  EXPECT_EQ(diamond::gqd_1norm_bell({0, 0, 0}), 0.0);
  EXPECT_EQ(diamond::gqd_1norm_bell({1, -1, 1}), 1.0);
  EXPECT_EQ(diamond::gqd_1norm_bell({0.2, -0.7, 0.4}), 0.4);
  const auto c = diamond::bell_diagonal_coeffs(diamond::thermal_state_exact({0.5, 1, 0, 0, 1e-3}));
  EXPECT_NEAR(diamond::gqd_1norm_bell(c), 1.0, 1e-2);
}

TEST(FullReport, InfiniteTemperature) {
  const auto r = diamond::full_report({1, 1, 1, 0, 1e6});
  EXPECT_LT(*r.concurrence, 1e-4);
  EXPECT_LT(*r.quantum_discord, 1e-4);
  EXPECT_LT(*r.gmqd, 1e-4);
  EXPECT_LT(*r.gqd_1norm, 1e-4);
}

TEST(FullReport, EntanglementDiesFirst) {
  const auto r = diamond::full_report({1, 1, 0, 0, 2});
  EXPECT_EQ(*r.concurrence, 0.0);
  EXPECT_GT(*r.quantum_discord, 0.0);
  EXPECT_GT(*r.gqd_1norm, 0.0);
}

TEST(FullReport, NodalCouplingRestoresMaximalEntanglement) {
  const auto r = diamond::full_report({2, 2, 1.5, 0, 1e-3});
  EXPECT_NEAR(*r.concurrence, 1.0, 1e-3);
}

TEST(FullReport, FieldOmitsOneNorm) {
  const auto r = diamond::full_report({1, 1, 0, 0.5, 1});
  EXPECT_FALSE(r.gqd_1norm.has_value());
  EXPECT_FALSE(r.bell_coeffs.has_value());
  EXPECT_TRUE(r.has_flag(diamond::flag::kNotBellDiagonal));
  EXPECT_TRUE(r.gmqd.has_value());
}

TEST(FullReport, MeasureSelection) {
  diamond::ReportOptions opt;
  opt.measures = {true, false, false, false};
  const auto r = diamond::full_report({1, 1, 0, 0, 1}, opt);
  EXPECT_TRUE(r.concurrence.has_value());
  EXPECT_FALSE(r.quantum_discord.has_value());
  EXPECT_FALSE(r.gmqd.has_value());
  EXPECT_FALSE(r.gqd_1norm.has_value());
}

TEST(Invariants, SampledGrid) {
  for (const auto& p : diamond::sample_grid(60)) {
    const auto r = diamond::full_report(p);
    EXPECT_NEAR(*r.mutual_information, *r.classical_correlation + *r.quantum_discord, 1e-9);
    EXPECT_GE(*r.quantum_discord, -1e-9);
    EXPECT_LE(*r.gmqd, 0.5 + 1e-12);
    if (r.gqd_1norm) EXPECT_LE(*r.gqd_1norm, 1.0 + 1e-12);
    ChainParams a = p, b = p;
    a.field = b.field = 0.0;
    b.j = -a.j;
    const auto ra = diamond::full_report(a);
    const auto rb = diamond::full_report(b);
    EXPECT_NEAR(*ra.concurrence, *rb.concurrence, 1e-9);
    EXPECT_NEAR(*ra.quantum_discord, *rb.quantum_discord, 1e-9);
    EXPECT_NEAR(*ra.gmqd, *rb.gmqd, 1e-9);
    EXPECT_NEAR(*ra.gqd_1norm, *rb.gqd_1norm, 1e-9);
  }
}
