#pragma once

#include "diamond/linalg.hpp"
#include "diamond/model.hpp"
#include "diamond/oracles.hpp"
#include "diamond/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace diamond {

/// -Tr rho log2 rho, with roundoff negatives clipped.
template <typename Matrix>
double von_neumann_entropy(const Matrix& rho) {
  auto eigs = hermitian_eigenvalues(rho);
  clip_spectrum(std::span<double>(eigs.data(), static_cast<std::size_t>(eigs.size())));
  return shannon_bits(std::span<const double>(eigs.data(), static_cast<std::size_t>(eigs.size())));
}

inline double von_neumann_entropy(const Density4& rho) { return von_neumann_entropy(rho.matrix()); }

/// I = S(rho_A) + S(rho_B) - S(rho).
inline double mutual_information(const Density4& rho) {
  return von_neumann_entropy(reduced_state(rho, Subsystem::First)) +
         von_neumann_entropy(reduced_state(rho, Subsystem::Second)) - von_neumann_entropy(rho);
}

// ---------------------------------------------------------------------------
// Concurrence

/// (2/Z) max(|y| - sqrt(uv), 0) for the diamond X-state.
inline double concurrence_closed_form(const ClusterElements& el) {
  return (2.0 / el.z) * std::max(std::abs(el.y) - std::sqrt(el.u * el.v), 0.0);
}

/// Wootters concurrence max(0, s1 - s2 - s3 - s4), s_i the square roots of
/// the eigenvalues of rho (sy x sy) rho* (sy x sy). The s_i are obtained as
/// singular values of L^dag (sy x sy) L^*, rho = L L^dag, which keeps the
/// small ones accurate instead of square-rooting roundoff.
inline double concurrence_wootters(const Density4& rho) {
  Eigen::SelfAdjointEigenSolver<Mat4> solver(rho.matrix());
  Eigen::Vector4d eigs = solver.eigenvalues();
  clip_spectrum(std::span<double>(eigs.data(), 4));
  const Mat4 factor = solver.eigenvectors() * eigs.cwiseSqrt().cast<cplx>().asDiagonal();
  const Mat4 flip = kron(pauli(2), pauli(2));
  const Mat4 b = factor.adjoint() * flip * factor.conjugate();
  const Eigen::Vector4d s = Eigen::JacobiSVD<Mat4>(b).singularValues();  // descending
  return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

// ---------------------------------------------------------------------------
// Quantum discord

/// theta = (1/Z) max(|u - w|, |y|) as published for the minimised
/// conditional entropy.
inline double conditional_entropy_theta(const ClusterElements& el) {
  return std::max(std::abs(el.u - el.w), std::abs(el.y)) / el.z;
}

/// Fast path: binary entropy at (1 +- theta)/2. Cross-checked against the
/// measurement-manifold oracle, never used as the reported discord.
inline double min_conditional_entropy_closed(const ClusterElements& el) {
  return binary_entropy(0.5 * (1.0 + conditional_entropy_theta(el)));
}

struct DiscordDecomposition {
  double mutual_information = 0.0;
  double classical_correlation = 0.0;
  double quantum_discord = 0.0;
  double min_conditional_entropy = 0.0;
  MeasurementBasis basis;
};

/// Discord with a projective measurement on `measured`:
/// D = S(rho_measured) - S(rho) + min sum_k p_k S(rho_other|k).
inline DiscordDecomposition discord_decomposition(const Density4& rho, const GridSpec& grid = {},
                                                  Subsystem measured = Subsystem::First) {
  const Subsystem other = measured == Subsystem::First ? Subsystem::Second : Subsystem::First;
  const double s_measured = von_neumann_entropy(reduced_state(rho, measured));
  const double s_other = von_neumann_entropy(reduced_state(rho, other));
  const double s_joint = von_neumann_entropy(rho);
  const auto minimum = minimize_conditional_entropy(rho, grid, measured);

  DiscordDecomposition d;
  d.min_conditional_entropy = minimum.bits;
  d.basis = minimum.basis;
  d.mutual_information = s_measured + s_other - s_joint;
  d.classical_correlation = s_other - minimum.bits;
  d.quantum_discord = s_measured - s_joint + minimum.bits;
  return d;
}

inline double quantum_discord_definitional(const Density4& rho, const GridSpec& grid = {},
                                           Subsystem measured = Subsystem::First) {
  return discord_decomposition(rho, grid, measured).quantum_discord;
}

inline double classical_correlation(const Density4& rho, const GridSpec& grid = {},
                                    Subsystem measured = Subsystem::First) {
  return discord_decomposition(rho, grid, measured).classical_correlation;
}

// ---------------------------------------------------------------------------
// Geometric discords

/// (1/4)(|x|^2 + |R|_F^2 - k_max), k_max the largest eigenvalue of
/// x x^T + R R^T.
inline double gmqd(const Density4& rho) {
  const BlochDecomposition b = bloch_decompose(rho);
  const Mat3 k = b.first * b.first.transpose() + b.correlation * b.correlation.transpose();
  const double k_max = Eigen::SelfAdjointEigenSolver<Mat3>(k, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  return std::max(0.0, 0.25 * (b.first.squaredNorm() + b.correlation.squaredNorm() - k_max));
}

/// Middle value of |c1|, |c2|, |c3|.
inline double gqd_1norm_bell(const BellCoeffs& c) {
  std::array<double, 3> a{std::abs(c.c1), std::abs(c.c2), std::abs(c.c3)};
  std::sort(a.begin(), a.end());
  return a[1];
}

// ---------------------------------------------------------------------------
// Aggregate report

namespace flag {
inline constexpr const char* kNotBellDiagonal = "not_bell_diagonal";
inline constexpr const char* kThetaDeviation = "theta_fast_path_deviation";
inline constexpr const char* kTemperatureFloor = "temp_floor";
}  // namespace flag

struct MeasureSet {
  bool concurrence = true;
  bool discord = true;  // qd, classical_corr, mutual_info
  bool gmqd = true;
  bool gqd1 = true;

  static MeasureSet all() { return {}; }
};

struct ReportOptions {
  GridSpec grid{};
  MeasureSet measures{};
  VElement v_variant = VElement::Corrected;  // for the closed-form elements behind theta
  double fast_path_deviation_tol = 1e-6;
};

struct CorrelationReport {
  ChainParams params;
  std::optional<double> concurrence;
  std::optional<double> quantum_discord;
  std::optional<double> classical_correlation;
  std::optional<double> mutual_information;
  std::optional<double> gmqd;
  std::optional<double> gqd_1norm;
  double theta = 0.0;
  std::optional<double> fast_path_conditional_entropy;
  std::optional<double> oracle_conditional_entropy;
  std::optional<BellCoeffs> bell_coeffs;
  std::vector<std::string> flags;

  bool has_flag(std::string_view f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }
};

inline CorrelationReport full_report(const ChainParams& p, const ReportOptions& options = {}) {
  const Density4 rho = thermal_state_exact(p);
  const ClusterElements el = boltzmann_elements(p, options.v_variant);

  CorrelationReport r;
  r.params = p;
  r.theta = conditional_entropy_theta(el);
  r.fast_path_conditional_entropy = min_conditional_entropy_closed(el);

  if (options.measures.concurrence) r.concurrence = concurrence_wootters(rho);
  if (options.measures.discord) {
    const auto d = discord_decomposition(rho, options.grid);
    r.quantum_discord = d.quantum_discord;
    r.classical_correlation = d.classical_correlation;
    r.mutual_information = d.mutual_information;
    r.oracle_conditional_entropy = d.min_conditional_entropy;
    if (*r.fast_path_conditional_entropy > d.min_conditional_entropy + options.fast_path_deviation_tol)
      r.flags.emplace_back(flag::kThetaDeviation);
  }
  if (options.measures.gmqd) r.gmqd = gmqd(rho);

  try {
    r.bell_coeffs = bell_diagonal_coeffs(rho);
    if (options.measures.gqd1) r.gqd_1norm = gqd_1norm_bell(*r.bell_coeffs);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotBellDiagonal) throw;
    r.flags.emplace_back(flag::kNotBellDiagonal);
  }
  return r;
}

}  // namespace diamond
