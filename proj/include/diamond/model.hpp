#pragma once

// Thermal two-qubit state of one diamond cluster (two Heisenberg spins
// coupled to two classical Ising nodes). Two independent constructions are
// provided: a trace over Ising configurations of exp(-H/T) built from the
// cluster Hamiltonian, and the closed-form Boltzmann elements u, v, w, y.

#include "diamond/linalg.hpp"
#include "diamond/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace diamond {

/// A validated two-qubit density matrix in the basis |00>, |01>, |10>, |11>
/// (|0> = spin up).
class Density4 {
 public:
  static constexpr double kHermiticityTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;

  static Density4 from_matrix(const Mat4& m) {
    if (!m.allFinite()) throw Error(ErrorKind::InvalidState, "density matrix has non-finite entries");
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermiticityTol) {
      throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian (deviation " +
                                               std::to_string(asym) + ")");
    }
    const cplx tr = m.trace();
    if (std::abs(tr - cplx(1.0, 0.0)) > kTraceTol) {
      throw Error(ErrorKind::InvalidState, "density matrix trace is " + std::to_string(tr.real()));
    }
    const Mat4 herm = 0.5 * (m + m.adjoint());
    auto eigs = hermitian_eigenvalues(herm);
    clip_spectrum(std::span<double>(eigs.data(), 4));
    return Density4(herm);
  }

  static Density4 maximally_mixed() { return Density4(Mat4::Identity() / 4.0); }

  const Mat4& matrix() const { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

  Density4 swapped() const { return Density4(swap_qubits(m_)); }

 private:
  explicit Density4(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

// ---------------------------------------------------------------------------
// Hamiltonian route

/// S1.S2 for two spin-1/2 operators.
inline RealMat4 heisenberg_exchange() {
  RealMat4 m;
  m << 0.25, 0, 0, 0,
       0, -0.25, 0.5, 0,
       0, 0.5, -0.25, 0,
       0, 0, 0, 0.25;
  return m;
}

/// S1^z + S2^z.
inline RealMat4 total_sz() { return Eigen::Vector4d(1.0, 0.0, 0.0, -1.0).asDiagonal(); }

/// H_k = J2 S1.S2 + J (mu_k + mu_k1)(S1z + S2z) + Jm mu_k mu_k1
///       - H (S1z + S2z + (mu_k + mu_k1)/2)
inline RealMat4 cluster_hamiltonian(const ChainParams& p, const IsingConfig& config) {
  config.validate();
  const double s = config.sum();
  RealMat4 h = p.j2 * heisenberg_exchange();
  h += (p.j * s - p.field) * total_sz();
  h += (p.jm * config.product() - 0.5 * p.field * s) * RealMat4::Identity();
  return h;
}

/// rho = (1/Z) sum_config exp(-H_k(config)/T), the Ising spins being traced
/// out as classical variables. Exponents are shifted by the global ground
/// energy before exponentiation.
inline Density4 thermal_state_exact(const ChainParams& p) {
  p.validate();
  std::array<Eigen::SelfAdjointEigenSolver<RealMat4>, 4> spectra;
  double ground = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < kIsingConfigs.size(); ++k) {
    spectra[k].compute(cluster_hamiltonian(p, kIsingConfigs[k]));
    ground = std::min(ground, spectra[k].eigenvalues().minCoeff());
  }
  RealMat4 weight = RealMat4::Zero();
  for (const auto& spec : spectra) {
    const Eigen::Vector4d boltz =
        (-(spec.eigenvalues().array() - ground) / p.temperature).exp().matrix();
    weight += spec.eigenvectors() * boltz.asDiagonal() * spec.eigenvectors().transpose();
  }
  const double z = weight.trace();
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorKind::TemperatureTooLow, "partition sum is not finite");
  }
  RealMat4 rho = weight / z;
  // Enforce exact symmetry; eigenvector products leave ~1e-17 asymmetry.
  rho = 0.5 * (rho + rho.transpose()).eval();
  return Density4::from_matrix(rho.cast<cplx>());
}

// ---------------------------------------------------------------------------
// Closed-form route

/// Which exponent to use in the v element for the doubly degenerate mixed
/// Ising configurations: the published one, (H + Jm - 4J + 2J)/2T, or the
/// one that follows from the cluster Hamiltonian, (H + Jm + 2J)/2T.
enum class VElement { Corrected, Verbatim };

inline const char* to_string(VElement v) {
  return v == VElement::Corrected ? "corrected" : "verbatim";
}

/// u, v, w, y and Z = u + v + 2w. All five values share a common scale
/// factor exp(log_scale) that was divided out to avoid overflow; ratios and
/// the assembled density matrix do not depend on it.
struct ClusterElements {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  double y = 0.0;
  double z = 0.0;
  double log_scale = 0.0;
  VElement v_variant = VElement::Corrected;
};

namespace detail {

struct ExpTerm {
  double coefficient;
  double exponent;
};

inline double shifted_sum(std::span<const ExpTerm> terms, double shift) {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.coefficient * std::exp(t.exponent - shift);
  return sum;
}

}  // namespace detail

inline ClusterElements boltzmann_elements(const ChainParams& p,
                                          VElement variant = VElement::Corrected) {
  using detail::ExpTerm;
  p.validate();
  const double t = p.temperature;
  const double h = p.field;
  const double j = p.j;
  const double j2 = p.j2;
  const double jm = p.jm;

  const std::array<ExpTerm, 3> u_terms{{
      {2.0, (4 * h + jm - j2) / (4 * t)},
      {1.0, -(-2 * h + jm - 4 * j + j2) / (4 * t)},
      {1.0, -(-6 * h + jm + 4 * j + j2) / (4 * t)},
  }};

  const double v_prefactor = -(6 * h + jm + j2 + 4 * j) / (4 * t);
  const double mixed = variant == VElement::Corrected ? (h + jm + 2 * j) / (2 * t)
                                                      : (h + jm - 4 * j + 2 * j) / (2 * t);
  const std::array<ExpTerm, 3> v_terms{{
      {2.0, v_prefactor + mixed},
      {1.0, v_prefactor + (h + 2 * j) / t},
      {1.0, v_prefactor},
  }};

  // w and y share the bracket (2 e^{(H+Jm)/2T} + e^{H/T} + 1), multiplied by
  // e^{-(2H+Jm+J2)/4T} and by (e^{J2/T} +- 1)/2.
  const double base = -(2 * h + jm + j2) / (4 * t);
  const std::array<ExpTerm, 3> bracket{{
      {2.0, (h + jm) / (2 * t)},
      {1.0, h / t},
      {1.0, 0.0},
  }};
  std::array<ExpTerm, 3> singlet_terms{};
  std::array<ExpTerm, 3> triplet_terms{};
  for (std::size_t k = 0; k < bracket.size(); ++k) {
    singlet_terms[k] = {bracket[k].coefficient, (base + j2 / t) + bracket[k].exponent};
    triplet_terms[k] = {bracket[k].coefficient, base + bracket[k].exponent};
  }

  double shift = -std::numeric_limits<double>::infinity();
  auto track = [&shift](std::span<const ExpTerm> terms) {
    for (const auto& term : terms) shift = std::max(shift, term.exponent);
  };
  track(u_terms);
  track(v_terms);
  track(singlet_terms);
  track(triplet_terms);
  if (!std::isfinite(shift)) throw Error(ErrorKind::TemperatureTooLow, "Boltzmann exponent overflow");

  ClusterElements el;
  el.log_scale = shift;
  el.v_variant = variant;
  el.u = detail::shifted_sum(u_terms, shift);
  el.v = detail::shifted_sum(v_terms, shift);
  const double singlet = detail::shifted_sum(singlet_terms, shift);
  const double triplet = detail::shifted_sum(triplet_terms, shift);
  el.w = 0.5 * (singlet + triplet);
  el.y = -0.5 * (singlet - triplet);
  el.z = el.u + el.v + 2.0 * el.w;
  return el;
}

/// Assembles (1/Z) [[u,0,0,0],[0,w,y,0],[0,y,w,0],[0,0,0,v]].
inline Mat4 x_state_matrix(const ClusterElements& el) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = el.u;
  m(1, 1) = el.w;
  m(2, 2) = el.w;
  m(1, 2) = el.y;
  m(2, 1) = el.y;
  m(3, 3) = el.v;
  return m / el.z;
}

inline Density4 thermal_state_closed_form(const ChainParams& p,
                                          VElement variant = VElement::Corrected) {
  return Density4::from_matrix(x_state_matrix(boltzmann_elements(p, variant)));
}

// ---------------------------------------------------------------------------
// Cross-construction check

inline constexpr double kConstructionTol = 1e-12;

struct ElementDiscrepancy {
  double du = 0.0;
  double dv = 0.0;
  double dw = 0.0;
  double dy = 0.0;
  double max_matrix_diff = 0.0;  // max |rho_closed - rho_exact| over all entries
  bool psd = true;               // closed-form matrix passed the positivity check

  double max_element_diff() const { return std::max({du, dv, dw, dy}); }
  bool agrees(double tol = kConstructionTol) const {
    return psd && max_element_diff() <= tol && max_matrix_diff <= tol;
  }
};

struct ConstructionReport {
  ChainParams params;
  ElementDiscrepancy corrected;
  ElementDiscrepancy verbatim;
};

namespace detail {

inline ElementDiscrepancy compare_elements(const Mat4& exact, const ClusterElements& el) {
  ElementDiscrepancy d;
  // Compare against Z * rho_exact so the common scale of the elements is kept.
  d.du = std::abs(el.u - el.z * exact(0, 0).real());
  d.dv = std::abs(el.v - el.z * exact(3, 3).real());
  d.dw = std::max(std::abs(el.w - el.z * exact(1, 1).real()),
                  std::abs(el.w - el.z * exact(2, 2).real()));
  d.dy = std::max(std::abs(el.y - el.z * exact(1, 2).real()),
                  std::abs(el.y - el.z * exact(2, 1).real()));
  const Mat4 closed = x_state_matrix(el);
  d.max_matrix_diff = (closed - exact).cwiseAbs().maxCoeff();
  try {
    (void)Density4::from_matrix(closed);
  } catch (const Error&) {
    d.psd = false;
  }
  return d;
}

}  // namespace detail

inline ConstructionReport validate_constructions(const ChainParams& p) {
  const Density4 exact = thermal_state_exact(p);
  ConstructionReport report;
  report.params = p;
  report.corrected = detail::compare_elements(exact.matrix(), boltzmann_elements(p, VElement::Corrected));
  report.verbatim = detail::compare_elements(exact.matrix(), boltzmann_elements(p, VElement::Verbatim));
  return report;
}

// ---------------------------------------------------------------------------
// Local structure

inline Mat2 reduced_state(const Density4& rho, Subsystem keep) {
  return keep == Subsystem::First ? trace_out_second(rho.matrix()) : trace_out_first(rho.matrix());
}

/// rho = (1/4)[I + x.sigma (x) I + I (x) y.sigma + sum r_ij sigma_i (x) sigma_j]
struct BlochDecomposition {
  Vec3 first = Vec3::Zero();
  Vec3 second = Vec3::Zero();
  Mat3 correlation = Mat3::Zero();

  Mat4 reconstruct() const {
    Mat4 m = kron(pauli(0), pauli(0));
    for (int i = 0; i < 3; ++i) {
      m += first(i) * kron(pauli(i + 1), pauli(0));
      m += second(i) * kron(pauli(0), pauli(i + 1));
      for (int j = 0; j < 3; ++j) m += correlation(i, j) * kron(pauli(i + 1), pauli(j + 1));
    }
    return m / 4.0;
  }
};

inline BlochDecomposition bloch_decompose(const Density4& rho) {
  BlochDecomposition b;
  const Mat4& m = rho.matrix();
  for (int i = 0; i < 3; ++i) {
    b.first(i) = (m * kron(pauli(i + 1), pauli(0))).trace().real();
    b.second(i) = (m * kron(pauli(0), pauli(i + 1))).trace().real();
    for (int j = 0; j < 3; ++j)
      b.correlation(i, j) = (m * kron(pauli(i + 1), pauli(j + 1))).trace().real();
  }
  return b;
}

/// Correlation coefficients of a Bell-diagonal state,
/// rho = (1/4)[I + sum c_i sigma_i (x) sigma_i].
struct BellCoeffs {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  std::array<double, 3> values() const { return {c1, c2, c3}; }
};

inline constexpr double kBellDiagonalTol = 1e-10;

inline BellCoeffs bell_diagonal_coeffs(const Density4& rho, double tol = kBellDiagonalTol) {
  const BlochDecomposition b = bloch_decompose(rho);
  double off_diagonal = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) off_diagonal = std::max(off_diagonal, std::abs(b.correlation(i, j)));
  if (b.first.norm() > tol || b.second.norm() > tol || off_diagonal > tol) {
    throw Error(ErrorKind::NotBellDiagonal,
                "local Bloch vectors |x|=" + std::to_string(b.first.norm()) +
                    ", |y|=" + std::to_string(b.second.norm()) +
                    ", max off-diagonal correlation " + std::to_string(off_diagonal));
  }
  return {b.correlation(0, 0), b.correlation(1, 1), b.correlation(2, 2)};
}

}  // namespace diamond
