#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace diamond {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using RealMat4 = Eigen::Matrix4d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class ErrorKind {
  TemperatureTooLow,
  PositivityViolation,
  InvalidState,
  NotBellDiagonal,
  InvalidArgument,
  GridTooLarge,
  NoBracket,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TemperatureTooLow: return "TemperatureTooLow";
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::NotBellDiagonal: return "NotBellDiagonal";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::GridTooLarge: return "GridTooLarge";
    case ErrorKind::NoBracket: return "NoBracket";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Smallest temperature accepted, relative to the largest coupling scale
/// (or to 1 when all couplings vanish).
inline constexpr double kMinRelativeTemperature = 1e-8;

/// One thermodynamic point of the diamond cluster. Energies in units of the
/// couplings, k_B = 1.
struct ChainParams {
  double j = 0.0;            // Ising-Heisenberg coupling
  double j2 = 0.0;           // intra-dimer Heisenberg coupling
  double jm = 0.0;           // nodal Ising-Ising coupling
  double field = 0.0;        // external magnetic field H
  double temperature = 1.0;  // T

  double energy_scale() const {
    return std::abs(j) + std::abs(j2) + std::abs(jm) + std::abs(field);
  }

  void validate() const {
    if (!std::isfinite(j) || !std::isfinite(j2) || !std::isfinite(jm) || !std::isfinite(field) ||
        std::isnan(temperature)) {
      throw Error(ErrorKind::InvalidArgument, "chain parameters must be finite");
    }
    const double floor = kMinRelativeTemperature * std::max(1.0, energy_scale());
    if (!(temperature > 0.0) || temperature < floor || !std::isfinite(temperature)) {
      throw Error(ErrorKind::TemperatureTooLow,
                  "temperature " + std::to_string(temperature) + " is not above " +
                      std::to_string(floor));
    }
  }

  bool operator==(const ChainParams&) const = default;
};

/// Values of the two nodal Ising spins adjacent to one dimer.
struct IsingConfig {
  double mu_left = 0.5;
  double mu_right = 0.5;

  double sum() const { return mu_left + mu_right; }
  double product() const { return mu_left * mu_right; }

  void validate() const {
    auto ok = [](double mu) { return mu == 0.5 || mu == -0.5; };
    if (!ok(mu_left) || !ok(mu_right)) {
      throw Error(ErrorKind::InvalidArgument, "Ising spins take the values +1/2 or -1/2");
    }
  }
};

inline constexpr std::array<IsingConfig, 4> kIsingConfigs{{
    {0.5, 0.5},
    {0.5, -0.5},
    {-0.5, 0.5},
    {-0.5, -0.5},
}};

enum class Subsystem { First, Second };

}  // namespace diamond
