#pragma once

// Locates where a correlation measure dies (drops to or below a dead
// threshold) along T or H, by a uniform scan of the bracket followed by
// bisection on the first alive/dead change.

#include "diamond/correlations.hpp"
#include "diamond/types.hpp"

#include <string>
#include <string_view>

namespace diamond {

enum class ScanParameter { Temperature, Field };

enum class Measure { Concurrence, QuantumDiscord, Gmqd, Gqd1 };

inline Measure parse_measure(std::string_view name) {
  if (name == "concurrence") return Measure::Concurrence;
  if (name == "qd") return Measure::QuantumDiscord;
  if (name == "gmqd") return Measure::Gmqd;
  if (name == "gqd1") return Measure::Gqd1;
  throw Error(ErrorKind::InvalidArgument, "unknown measure '" + std::string(name) + "'");
}

inline ScanParameter parse_scan_parameter(std::string_view name) {
  if (name == "T") return ScanParameter::Temperature;
  if (name == "H") return ScanParameter::Field;
  throw Error(ErrorKind::InvalidArgument, "scan parameter must be T or H, got '" + std::string(name) + "'");
}

/// A single measure at one point. Gqd1 requires a Bell-diagonal state and
/// raises NotBellDiagonal otherwise.
inline double evaluate_measure(Measure measure, const ChainParams& p, const GridSpec& grid = {}) {
  const Density4 rho = thermal_state_exact(p);
  switch (measure) {
    case Measure::Concurrence: return concurrence_wootters(rho);
    case Measure::QuantumDiscord: return quantum_discord_definitional(rho, grid);
    case Measure::Gmqd: return gmqd(rho);
    case Measure::Gqd1: return gqd_1norm_bell(bell_diagonal_coeffs(rho));
  }
  return 0.0;
}

struct ThresholdQuery {
  ScanParameter scan = ScanParameter::Field;
  double lo = 0.0;
  double hi = 1.0;
  Measure measure = Measure::Concurrence;
  double dead_threshold = 1e-9;
  double tolerance = 1e-4;
  int scan_points = 64;
  GridSpec grid{};

  void validate() const {
    if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "threshold bracket needs lo < hi");
    if (!(tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "bisection tolerance must be positive");
    if (scan_points < 1) throw Error(ErrorKind::InvalidArgument, "scan_points must be >= 1");
    if (scan == ScanParameter::Temperature && !(lo > 0.0))
      throw Error(ErrorKind::TemperatureTooLow, "temperature bracket must be strictly positive");
  }
};

struct ThresholdResult {
  /// False when the measure stays above the dead threshold over the whole
  /// bracket (it never dies there).
  bool found = false;
  double location = 0.0;
  double alive_side = 0.0;  // bracket end of the final interval where the measure is alive
  double dead_side = 0.0;
  int bisection_steps = 0;
};

inline ThresholdResult find_threshold(const ThresholdQuery& q, const ChainParams& fixed) {
  q.validate();
  auto at = [&](double x) {
    ChainParams p = fixed;
    (q.scan == ScanParameter::Temperature ? p.temperature : p.field) = x;
    return evaluate_measure(q.measure, p, q.grid);
  };
  auto alive = [&](double x) { return at(x) > q.dead_threshold; };

  const int n = q.scan_points;
  auto node = [&](int i) { return i == n ? q.hi : q.lo + (q.hi - q.lo) * i / n; };
  std::vector<char> status(static_cast<std::size_t>(n) + 1);
  bool any_alive = false;
  bool any_dead = false;
  for (int i = 0; i <= n; ++i) {
    status[i] = alive(node(i));
    (status[i] ? any_alive : any_dead) = true;
  }
  ThresholdResult result;
  if (!any_dead) return result;
  if (!any_alive)
    throw Error(ErrorKind::NoBracket, "measure is at or below the dead threshold across the whole bracket");

  int i = 0;
  while (status[i] == status[i + 1]) ++i;
  double a = node(i);
  double b = node(i + 1);
  const bool a_alive = status[i];
  while (b - a > q.tolerance) {
    const double mid = 0.5 * (a + b);
    (alive(mid) == a_alive ? a : b) = mid;
    ++result.bisection_steps;
  }
  result.found = true;
  result.location = 0.5 * (a + b);
  result.alive_side = a_alive ? a : b;
  result.dead_side = a_alive ? b : a;
  return result;
}

}  // namespace diamond
