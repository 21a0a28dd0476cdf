#pragma once

// Invariant sweep over a deterministic sample of parameter space: the two
// state constructions, oracle-vs-closed-form agreement, symmetries and
// information identities. Known discrepancies of the published closed forms
// (the v-element exponent, the conditional-entropy theta) are collected as
// documented deviations, separately from genuine failures.

#include "diamond/correlations.hpp"
#include "diamond/model.hpp"
#include "diamond/oracles.hpp"
#include "diamond/sweep.hpp"

#include <array>
#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace diamond {

struct Tolerances {
  double construction = 1e-12;
  double concurrence = 1e-10;
  double identity = 1e-9;
  double grid_doubling = 1e-8;
  double monotone = 1e-12;
  double gmqd_oracle = 1e-4;
  double gmqd_oracle_floor = 1e-6;
  double gqd1_oracle = 1e-3;
  double fast_path_deviation = 1e-6;
};

/// Ranges sampled by the validation grid.
struct SampleBox {
  std::array<double, 2> j{-2.0, 2.0};
  std::array<double, 2> j2{-2.0, 2.0};
  std::array<double, 2> jm{0.0, 3.0};
  std::array<double, 2> field{-4.0, 4.0};
  std::array<double, 2> temperature{0.05, 5.0};
};

namespace detail {

inline double radical_inverse(std::size_t index, std::size_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

inline double lerp(const std::array<double, 2>& range, double t) { return range[0] + (range[1] - range[0]) * t; }

}  // namespace detail

/// Point 0 is the reference point (J = 0, J2 = 1, Jm = 0, H = 0, T = 1);
/// the rest follow a Halton sequence (bases 2, 3, 5, 7, 11) over the box.
inline std::vector<ChainParams> sample_grid(std::size_t count, const SampleBox& box = {}) {
  std::vector<ChainParams> points;
  points.reserve(count);
  if (count == 0) return points;
  points.push_back({0.0, 1.0, 0.0, 0.0, 1.0});
  for (std::size_t i = 1; i < count; ++i) {
    points.push_back({detail::lerp(box.j, detail::radical_inverse(i, 2)),
                      detail::lerp(box.j2, detail::radical_inverse(i, 3)),
                      detail::lerp(box.jm, detail::radical_inverse(i, 5)),
                      detail::lerp(box.field, detail::radical_inverse(i, 7)),
                      detail::lerp(box.temperature, detail::radical_inverse(i, 11))});
  }
  return points;
}

struct Finding {
  std::string check;
  ChainParams params;
  double value = 0.0;      // observed discrepancy
  double tolerance = 0.0;  // bound it was held to
};

struct ValidationOptions {
  std::size_t grid_cap = 200;
  VElement v_variant = VElement::Corrected;
  GridSpec grid{};
  SearchBudget budget{};
  bool run_variational = true;
  Tolerances tol{};
};

struct ValidationSummary {
  std::size_t points = 0;
  std::size_t checks = 0;
  std::vector<Finding> failures;
  std::vector<Finding> deviations;  // documented closed-form discrepancies
  std::vector<Finding> warnings;    // findings downgraded by --use-verbatim-v

  bool passed() const { return failures.empty(); }
};

namespace detail {

class Recorder {
 public:
  Recorder(ValidationSummary& s, const ChainParams& p) : summary_(s), params_(p) {}

  /// Records a failure when value > tol. Returns true on pass.
  bool bound(const std::string& check, double value, double tol, bool downgrade = false) {
    ++summary_.checks;
    if (value <= tol) return true;
    (downgrade ? summary_.warnings : summary_.failures).push_back({check, params_, value, tol});
    return false;
  }

  void deviation(const std::string& check, double value, double tol) {
    summary_.deviations.push_back({check, params_, value, tol});
  }

 private:
  ValidationSummary& summary_;
  ChainParams params_;
};

inline double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

inline void validate_point(const ChainParams& p, const ValidationOptions& opt, ValidationSummary& summary) {
  const Tolerances& tol = opt.tol;
  const bool verbatim = opt.v_variant == VElement::Verbatim;
  Recorder rec(summary, p);

  // Construction equivalence.
  const ConstructionReport cons = validate_constructions(p);
  rec.bound("construction.u_w_y", std::max({cons.corrected.du, cons.corrected.dw, cons.corrected.dy}), tol.construction);
  rec.bound("construction.corrected_v", std::max(cons.corrected.dv, cons.corrected.max_matrix_diff), tol.construction);
  const double verbatim_diff = std::max(cons.verbatim.max_element_diff(), cons.verbatim.max_matrix_diff);
  if (p.j == 0.0) {
    rec.bound("construction.verbatim_v_at_J0", verbatim_diff, tol.construction, verbatim);
  } else if (!cons.verbatim.agrees(tol.construction)) {
    if (verbatim) rec.bound("construction.verbatim_v", verbatim_diff, tol.construction, true);
    else rec.deviation("published v-element exponent disagrees with the Hamiltonian trace-out", verbatim_diff, tol.construction);
  }

  const Density4 rho = thermal_state_exact(p);
  const Mat4& m = rho.matrix();

  // X-state pattern and qubit-exchange symmetry.
  double outside = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool allowed = i == j || (i == 1 && j == 2) || (i == 2 && j == 1);
      if (!allowed) outside = std::max(outside, std::abs(m(i, j)));
    }
  rec.bound("state.x_pattern", outside, tol.construction);
  rec.bound("state.swap_symmetry", max_abs(m - swap_qubits(m)), tol.construction);
  rec.bound("bloch.reconstruction", max_abs(bloch_decompose(rho).reconstruct() - m), tol.construction);

  // Concurrence: spectral vs closed form.
  const ClusterElements el = boltzmann_elements(p, opt.v_variant);
  const double c_w = concurrence_wootters(rho);
  rec.bound("concurrence.wootters_vs_closed", std::abs(c_w - concurrence_closed_form(el)), tol.concurrence, verbatim);

  // Discord identities and oracle stability.
  const auto d = discord_decomposition(rho, opt.grid);
  rec.bound("discord.additivity",
            std::abs(d.mutual_information - d.classical_correlation - d.quantum_discord), tol.identity);
  rec.bound("discord.non_negative", -d.quantum_discord, tol.identity);
  const auto d_swap = discord_decomposition(rho, opt.grid, Subsystem::Second);
  rec.bound("discord.measured_side", std::abs(d.quantum_discord - d_swap.quantum_discord), tol.identity);
  const auto d_fine = discord_decomposition(rho, opt.grid.doubled());
  rec.bound("discord.grid_doubling", std::abs(d.quantum_discord - d_fine.quantum_discord), tol.grid_doubling);
  rec.bound("oracle.monotone_refinement", d_fine.min_conditional_entropy - d.min_conditional_entropy, tol.monotone);

  const double fast = min_conditional_entropy_closed(el);
  rec.bound("theta.fast_path_lower_bound", d.min_conditional_entropy - fast, tol.identity, verbatim);
  if (fast > d.min_conditional_entropy + tol.fast_path_deviation)
    rec.deviation("published theta fast path exceeds the oracle minimum", fast - d.min_conditional_entropy,
                  tol.fast_path_deviation);

  // Geometric discord.
  const double g = gmqd(rho);
  rec.bound("gmqd.range", std::max(-g, g - 0.5), tol.identity);
  if (opt.run_variational) {
    const double g_var = gmqd_variational(rho, opt.budget).value;
    rec.bound("gmqd.variational_vs_closed", std::abs(g_var - g), tol.gmqd_oracle);
    rec.bound("gmqd.variational_floor", g - g_var, tol.gmqd_oracle_floor);
  }

  // Field-free projection: Bell-diagonal structure and J -> -J symmetry.
  ChainParams p0 = p;
  p0.field = 0.0;
  ChainParams p0_flip = p0;
  p0_flip.j = -p0.j;
  const Density4 rho0 = thermal_state_exact(p0);
  const Density4 rho0_flip = thermal_state_exact(p0_flip);
  rec.bound("symmetry.state_J_sign", max_abs(rho0.matrix() - rho0_flip.matrix()), tol.construction);
  try {
    const BellCoeffs c = bell_diagonal_coeffs(rho0);
    rec.bound("bell.c1_eq_c2", std::abs(c.c1 - c.c2), tol.construction);
    const double g1 = gqd_1norm_bell(c);
    rec.bound("gqd1.range", std::max(-g1, g1 - 1.0), tol.identity);
    rec.bound("symmetry.gqd1_J_sign", std::abs(g1 - gqd_1norm_bell(bell_diagonal_coeffs(rho0_flip))), tol.identity);
    if (opt.run_variational) {
      rec.bound("gqd1.variational_vs_median", std::abs(gqd_1norm_variational(rho0, opt.budget).value - g1),
                tol.gqd1_oracle);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotBellDiagonal) throw;
    rec.bound("bell.field_free_structure", 1.0, 0.0);
  }
  rec.bound("symmetry.concurrence_J_sign", std::abs(concurrence_wootters(rho0) - concurrence_wootters(rho0_flip)),
            tol.identity);
  rec.bound("symmetry.qd_J_sign",
            std::abs(quantum_discord_definitional(rho0, opt.grid) - quantum_discord_definitional(rho0_flip, opt.grid)),
            tol.identity);
  rec.bound("symmetry.gmqd_J_sign", std::abs(gmqd(rho0) - gmqd(rho0_flip)), tol.identity);
}

}  // namespace detail

inline ValidationSummary run_validation(const ValidationOptions& opt = {}) {
  opt.grid.validate();
  ValidationSummary summary;
  for (const ChainParams& p : sample_grid(opt.grid_cap)) {
    detail::validate_point(p, opt, summary);
    ++summary.points;
  }
  return summary;
}

namespace detail {

inline std::string describe(const ChainParams& p) {
  return "J=" + format_real(p.j) + " J2=" + format_real(p.j2) + " Jm=" + format_real(p.jm) +
         " H=" + format_real(p.field) + " T=" + format_real(p.temperature);
}

/// One line per distinct check: count, worst value and where it occurred.
inline void print_findings(std::ostream& out, const char* title, const std::vector<Finding>& findings) {
  out << title << ": " << findings.size() << '\n';
  std::vector<std::string> order;
  std::map<std::string, std::pair<std::size_t, const Finding*>> groups;
  for (const auto& f : findings) {
    auto [it, inserted] = groups.try_emplace(f.check, 0, &f);
    if (inserted) order.push_back(f.check);
    ++it->second.first;
    if (f.value > it->second.second->value) it->second.second = &f;
  }
  for (const auto& check : order) {
    const auto& [count, worst] = groups.at(check);
    out << "  " << check << ": " << count << " point(s), worst " << format_real(worst->value) << " (tolerance "
        << format_real(worst->tolerance) << ") at " << describe(worst->params) << '\n';
  }
}

}  // namespace detail

inline void print_summary(std::ostream& out, const ValidationSummary& s) {
  out << "validated " << s.points << " points, " << s.checks << " checks\n";
  detail::print_findings(out, "failures", s.failures);
  detail::print_findings(out, "documented deviations", s.deviations);
  detail::print_findings(out, "warnings", s.warnings);
  out << (s.passed() ? "PASS" : "FAIL") << '\n';
}

}  // namespace diamond
