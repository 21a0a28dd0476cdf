#pragma once

// Brute-force reference computations. Everything here works directly on
// 4x4 matrices and projectors (no Bloch-vector algebra) so that it stays
// independent of the closed forms it is used to check.
//
// All searches are deterministic: a fixed coarse grid over measurement axes
// followed by a shrinking stencil refinement. Ties keep the earliest point
// in (theta, phi) order.

#include "diamond/linalg.hpp"
#include "diamond/model.hpp"
#include "diamond/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace diamond {

/// Discretisation of the measurement-axis search. The polar grid has
/// theta_steps intervals on [0, pi/2] (endpoints included) and phi_steps
/// points on [0, pi); doubling both yields a superset of the original grid.
struct GridSpec {
  int theta_steps = 64;
  int phi_steps = 128;
  int refine_iters = 40;
  double refine_shrink = 0.5;

  void validate() const {
    if (theta_steps < 8 || phi_steps < 8) throw Error(ErrorKind::InvalidArgument, "grid steps must be >= 8");
    if (refine_iters < 0) throw Error(ErrorKind::InvalidArgument, "refine_iters must be >= 0");
    if (!(refine_shrink > 0.0 && refine_shrink < 1.0))
      throw Error(ErrorKind::InvalidArgument, "refine_shrink must lie in (0, 1)");
  }

  GridSpec doubled() const { return {2 * theta_steps, 2 * phi_steps, refine_iters, refine_shrink}; }
};

/// Rank-1 projective measurement {(I + n.sigma)/2, (I - n.sigma)/2}.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;
  Vec3 axis = Vec3::UnitZ();

  static MeasurementBasis from_angles(double theta, double phi) {
    return {theta, phi,
            Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta))};
  }

  Mat2 projector(int sign) const {
    const double s = sign >= 0 ? 1.0 : -1.0;
    Mat2 n_sigma = axis(0) * pauli(1) + axis(1) * pauli(2) + axis(2) * pauli(3);
    return 0.5 * (pauli(0) + s * n_sigma);
  }
};

namespace detail {

/// Tr_A[(P (x) I) rho] for a 2x2 operator P acting on the first qubit.
inline Mat2 conditional_block(const Mat4& rho, const Mat2& p) {
  Mat2 out = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap) out += p(a, ap) * rho.block<2, 2>(2 * ap, 2 * a);
  return out;
}

/// p S(M/p) for an unnormalised conditional state M with trace p.
inline double weighted_conditional_entropy(const Mat2& m) {
  auto eigs = hermitian_eigenvalues_2x2(m);
  for (double& e : eigs) e = std::max(e, 0.0);
  const double p = eigs[0] + eigs[1];
  if (p <= 0.0) return 0.0;
  double sum = 0.0;
  for (double e : eigs)
    if (e > 0.0) sum -= e * std::log2(e / p);
  return sum;
}

/// Classical-quantum state Pi_+ (x) sigma_plus + Pi_- (x) sigma_minus.
inline Mat4 cq_state(const MeasurementBasis& basis, const Mat2& sigma_plus, const Mat2& sigma_minus) {
  return kron(basis.projector(+1), sigma_plus) + kron(basis.projector(-1), sigma_minus);
}

/// Visits the coarse axis grid in (theta, phi) order: upper hemisphere with
/// theta ascending, then the lower-hemisphere labelling pi - theta.
template <typename Visit>
void for_each_grid_axis(const GridSpec& grid, Visit&& visit) {
  const double dtheta = (std::numbers::pi / 2) / grid.theta_steps;
  const double dphi = std::numbers::pi / grid.phi_steps;
  for (int i = 0; i <= grid.theta_steps; ++i)
    for (int j = 0; j < grid.phi_steps; ++j) visit(i * dtheta, j * dphi);
  for (int i = grid.theta_steps - 1; i >= 0; --i)
    for (int j = 0; j < grid.phi_steps; ++j) visit(std::numbers::pi - i * dtheta, j * dphi);
}

struct AxisPoint {
  double theta = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

/// Shrinking 3x3 stencil around a starting point; moves only on strict
/// improvement, shrinks after every iteration.
template <typename Objective>
AxisPoint refine_axis(Objective&& f, AxisPoint start, const GridSpec& grid, long& evaluations) {
  double dtheta = (std::numbers::pi / 2) / grid.theta_steps;
  double dphi = std::numbers::pi / grid.phi_steps;
  AxisPoint best = start;
  for (int it = 0; it < grid.refine_iters; ++it) {
    AxisPoint candidate = best;
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        const double th = best.theta + di * dtheta;
        const double ph = best.phi + dj * dphi;
        const double value = f(th, ph);
        ++evaluations;
        if (value < candidate.value) candidate = {th, ph, value};
      }
    }
    best = candidate;
    dtheta *= grid.refine_shrink;
    dphi *= grid.refine_shrink;
  }
  return best;
}

}  // namespace detail

struct ConditionalEntropyMinimum {
  double bits = 0.0;
  MeasurementBasis basis;
  long evaluations = 0;
};

/// Sum_k p_k S(rho_{B|k}) for a projective measurement on the first qubit.
inline double conditional_entropy(const Density4& rho, const MeasurementBasis& basis) {
  const Mat2 plus = detail::conditional_block(rho.matrix(), basis.projector(+1));
  const Mat2 minus = trace_out_first(rho.matrix()) - plus;
  return detail::weighted_conditional_entropy(plus) + detail::weighted_conditional_entropy(minus);
}

/// Minimum over rank-1 projective measurements on `measured` of the
/// average entropy left on the other qubit.
inline ConditionalEntropyMinimum minimize_conditional_entropy(const Density4& rho,
                                                              const GridSpec& grid = {},
                                                              Subsystem measured = Subsystem::First) {
  grid.validate();
  const Density4 state = measured == Subsystem::First ? rho : rho.swapped();
  const Mat4& m = state.matrix();
  const Mat2 marginal = trace_out_first(m);

  // The block decomposition is fixed; only the projector changes per axis.
  auto objective = [&](double theta, double phi) {
    const double st = std::sin(theta);
    const double nx = st * std::cos(phi);
    const double ny = st * std::sin(phi);
    const double nz = std::cos(theta);
    Mat2 proj;
    proj << 0.5 * (1.0 + nz), 0.5 * cplx(nx, -ny), 0.5 * cplx(nx, ny), 0.5 * (1.0 - nz);
    const Mat2 plus = detail::conditional_block(m, proj);
    return detail::weighted_conditional_entropy(plus) +
           detail::weighted_conditional_entropy(marginal - plus);
  };

  ConditionalEntropyMinimum result;
  detail::AxisPoint best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  detail::for_each_grid_axis(grid, [&](double theta, double phi) {
    const double value = objective(theta, phi);
    ++result.evaluations;
    if (value < best.value) best = {theta, phi, value};
  });
  best = detail::refine_axis(objective, best, grid, result.evaluations);
  result.bits = best.value;
  result.basis = MeasurementBasis::from_angles(best.theta, best.phi);
  return result;
}

// ---------------------------------------------------------------------------
// Closest classical-quantum state searches

/// Budget for the nested geometric-discord searches: a coarse axis grid,
/// the number of best coarse axes that get a full local search, and the
/// inner pattern-search limits over the conditional operators.
struct SearchBudget {
  GridSpec axis_grid{16, 32, 30, 0.5};
  int candidates = 3;
  long inner_max_evals = 20000;
  double inner_initial_step = 0.125;
  double inner_min_step = 1e-9;
};

struct VariationalResult {
  double value = 0.0;
  MeasurementBasis basis;
  bool upper_bound = false;  // inner search stopped on the evaluation budget
  long evaluations = 0;
};

namespace detail {

/// Unnormalised conditional operators sigma_+ = (a I + b.sigma)/2 and
/// sigma_- = ((1 - a) I + c.sigma)/2, packed as (a, b, c).
using CqParams = Eigen::Matrix<double, 7, 1>;

inline bool cq_feasible(const CqParams& q) {
  const double a = q(0);
  return a >= 0.0 && a <= 1.0 && q.segment<3>(1).norm() <= a && q.segment<3>(4).norm() <= 1.0 - a;
}

inline Mat2 qubit_operator(double trace, const Eigen::Vector3d& bloch) {
  return 0.5 * (trace * pauli(0) + bloch(0) * pauli(1) + bloch(1) * pauli(2) + bloch(2) * pauli(3));
}

inline CqParams pinched_params(const Mat4& rho, const MeasurementBasis& basis) {
  const Mat2 plus = conditional_block(rho, basis.projector(+1));
  const Mat2 minus = conditional_block(rho, basis.projector(-1));
  CqParams q;
  q(0) = plus.trace().real();
  for (int i = 0; i < 3; ++i) {
    q(1 + i) = (pauli(i + 1) * plus).trace().real();
    q(4 + i) = (pauli(i + 1) * minus).trace().real();
  }
  return q;
}

inline Mat4 cq_from_params(const MeasurementBasis& basis, const CqParams& q) {
  return cq_state(basis, qubit_operator(q(0), q.segment<3>(1)), qubit_operator(1.0 - q(0), q.segment<3>(4)));
}

/// Opportunistic pattern search on coordinate and pairwise-diagonal
/// directions with step halving; infeasible trial points are rejected.
template <typename Distance>
double inner_search(const Mat4& rho, const MeasurementBasis& basis, const SearchBudget& budget,
                    Distance&& distance, long& evaluations, bool& exhausted) {
  static const std::vector<CqParams> directions = [] {
    std::vector<CqParams> dirs;
    for (int i = 0; i < 7; ++i) {
      for (double s : {1.0, -1.0}) {
        CqParams d = CqParams::Zero();
        d(i) = s;
        dirs.push_back(d);
      }
    }
    for (int i = 0; i < 7; ++i) {
      for (int j = i + 1; j < 7; ++j) {
        for (double si : {1.0, -1.0}) {
          for (double sj : {1.0, -1.0}) {
            CqParams d = CqParams::Zero();
            d(i) = si;
            d(j) = sj;
            dirs.push_back(d / std::sqrt(2.0));
          }
        }
      }
    }
    return dirs;
  }();

  CqParams q = pinched_params(rho, basis);
  double best = distance(rho - cq_from_params(basis, q));
  ++evaluations;
  const long start = evaluations;
  double step = budget.inner_initial_step;
  while (step >= budget.inner_min_step) {
    bool improved = false;
    for (const auto& d : directions) {
      const CqParams trial = q + step * d;
      if (!cq_feasible(trial)) continue;
      const double value = distance(rho - cq_from_params(basis, trial));
      ++evaluations;
      if (value < best) {
        best = value;
        q = trial;
        improved = true;
        break;
      }
      if (evaluations - start >= budget.inner_max_evals) break;
    }
    if (evaluations - start >= budget.inner_max_evals) {
      exhausted = true;
      break;
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

template <typename Distance>
VariationalResult closest_classical_search(const Density4& rho, const SearchBudget& budget,
                                           Distance&& distance) {
  budget.axis_grid.validate();
  const Mat4& m = rho.matrix();
  auto pinched_distance = [&](double theta, double phi) {
    const auto basis = MeasurementBasis::from_angles(theta, phi);
    return distance(m - cq_from_params(basis, pinched_params(m, basis)));
  };

  VariationalResult result;
  std::vector<AxisPoint> coarse;
  for_each_grid_axis(budget.axis_grid, [&](double theta, double phi) {
    coarse.push_back({theta, phi, pinched_distance(theta, phi)});
    ++result.evaluations;
  });
  std::stable_sort(coarse.begin(), coarse.end(),
                   [](const AxisPoint& a, const AxisPoint& b) { return a.value < b.value; });

  result.value = std::numeric_limits<double>::infinity();
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(std::max(budget.candidates, 1)), coarse.size());
  for (std::size_t k = 0; k < count; ++k) {
    const AxisPoint refined = refine_axis(pinched_distance, coarse[k], budget.axis_grid, result.evaluations);
    const auto basis = MeasurementBasis::from_angles(refined.theta, refined.phi);
    bool exhausted = false;
    const double value = inner_search(m, basis, budget, distance, result.evaluations, exhausted);
    result.upper_bound = result.upper_bound || exhausted;
    if (value < result.value) {
      result.value = value;
      result.basis = basis;
    }
  }
  return result;
}

}  // namespace detail

/// Trace distance from rho to the nearest state classical on the first
/// qubit. An upper-bound estimate; exact on Bell-diagonal inputs.
inline VariationalResult gqd_1norm_variational(const Density4& rho, const SearchBudget& budget = {}) {
  return detail::closest_classical_search(rho, budget, [](const Mat4& d) { return trace_norm_hermitian(d); });
}

/// Squared Hilbert-Schmidt distance to the nearest state classical on the
/// first qubit.
inline VariationalResult gmqd_variational(const Density4& rho, const SearchBudget& budget = {}) {
  return detail::closest_classical_search(rho, budget, [](const Mat4& d) { return frobenius_squared(d); });
}

}  // namespace diamond
