#pragma once

// Small fixed-size helpers shared by the model, the closed forms and the
// oracles: Pauli matrices, partial traces and Hermitian spectra.

#include "diamond/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <span>

namespace diamond {

inline constexpr double kPositivityFloor = -1e-10;

/// sigma_0 = I, sigma_1..3 = X, Y, Z.
inline Mat2 pauli(int index) {
  Mat2 m;
  switch (index) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw Error(ErrorKind::InvalidArgument, "Pauli index out of range");
  }
  return m;
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Tr_B: keeps the first qubit.
inline Mat2 trace_out_second(const Mat4& rho) {
  Mat2 out;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) out(a, c) = rho(2 * a, 2 * c) + rho(2 * a + 1, 2 * c + 1);
  return out;
}

/// Tr_A: keeps the second qubit.
inline Mat2 trace_out_first(const Mat4& rho) {
  Mat2 out;
  for (int b = 0; b < 2; ++b)
    for (int d = 0; d < 2; ++d) out(b, d) = rho(b, d) + rho(2 + b, 2 + d);
  return out;
}

/// Exchanges the two qubits: SWAP rho SWAP.
inline Mat4 swap_qubits(const Mat4& rho) {
  static constexpr std::array<int, 4> perm{0, 2, 1, 3};
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = rho(perm[i], perm[j]);
  return out;
}

/// Ascending eigenvalues of a Hermitian matrix.
template <typename Matrix>
Eigen::Matrix<double, Matrix::RowsAtCompileTime, 1> hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Closed-form ascending eigenvalues of a 2x2 Hermitian matrix.
inline std::array<double, 2> hermitian_eigenvalues_2x2(const Mat2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double mean = 0.5 * (a + d);
  const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
  return {mean - radius, mean + radius};
}

/// Clamps roundoff negatives in [kPositivityFloor, 0) to zero; anything below
/// the floor is a genuine positivity violation.
inline void clip_spectrum(std::span<double> eigenvalues, double floor = kPositivityFloor) {
  for (double& value : eigenvalues) {
    if (value < floor) {
      throw Error(ErrorKind::PositivityViolation,
                  "eigenvalue " + std::to_string(value) + " below " + std::to_string(floor));
    }
    if (value < 0.0) value = 0.0;
  }
}

/// -sum p log2 p with 0 log 0 = 0.
inline double shannon_bits(std::span<const double> probabilities) {
  double sum = 0.0;
  for (double p : probabilities)
    if (p > 0.0) sum -= p * std::log2(p);
  return sum;
}

/// Binary entropy h(p) in bits.
inline double binary_entropy(double p) {
  const std::array<double, 2> probs{p, 1.0 - p};
  return shannon_bits(probs);
}

inline double trace_norm_hermitian(const Mat4& m) {
  const auto eigs = hermitian_eigenvalues(m);
  return eigs.cwiseAbs().sum();
}

inline double frobenius_squared(const Mat4& m) { return m.cwiseAbs2().sum(); }

}  // namespace diamond
