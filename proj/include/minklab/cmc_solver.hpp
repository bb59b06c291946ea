#pragma once

#include <Eigen/Dense>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "minklab/domain.hpp"
#include "minklab/graphgeom.hpp"

namespace minklab {

/// Settings for the Dirichlet problem
/// div(Du / sqrt(1 - |Du|^2)) = rhs in Omega, u = c on the boundary.
struct SolverConfig {
  double rhs = 2.0;  ///< target curvature trace S_1
  double c = 0.0;    ///< boundary value
  int max_newton_iters = 50;
  double residual_tol = 1e-10;  ///< interior max-norm stopping threshold
  double damping = 0.5;         ///< backtracking factor, in (0, 1)
  double eps_space = GraphSurface::eps_space;  ///< spacelike margin
  enum class Guess { flat, scaled_cap, custom };
  Guess guess = Guess::flat;
  Eigen::ArrayXd custom_u0;  ///< initial samples when guess == custom
};

/// Outcome of one Newton solve.  The last iterate is always carried in
/// `surface`, converged or not, for diagnosis.
struct SolveReport {
  enum class Status { ok, non_convergence, spacelike_breakdown };
  Status status = Status::ok;
  bool converged = false;
  int iterations = 0;
  double final_residual = std::numeric_limits<double>::quiet_NaN();
  int damping_events = 0;  ///< total backtracking halvings
  double min_w = 0.0;
  std::vector<double> residual_history;  ///< max-norm per accepted iterate
  std::string message;
  GraphSurface surface;
};

/// Per-node curvature residual S_1(A) - rhs, assembled from the same
/// differenced derivatives the curvature field uses; zero rows at the
/// Dirichlet boundary nodes.  Throws std::domain_error on a
/// non-spacelike surface.
Eigen::ArrayXd cmc_residual(const GraphSurface& surf, double rhs);

/// Damped Newton iteration with the exact Jacobian of the quasilinear
/// operator.  Every accepted iterate keeps max |Du| <= 1 - eps_space;
/// steps are halved until both that constraint and a strict residual
/// decrease hold.  Step factors below 1e-8 abort with
/// spacelike_breakdown.
SolveReport newton_solve(std::shared_ptr<const PolarGrid> grid,
                         const SolverConfig& cfg);

/// Samples the exact rotationally symmetric solution on a disk grid:
///   u(r) = c + sqrt(a^2 + r^2) - sqrt(a^2 + R^2),  a = 2 / rhs,
/// which has S_1 = rhs everywhere and boundary angle
/// theta = -sqrt(a^2 + R^2)/a.  Requires a disk domain.
Eigen::ArrayXd radial_exact(const PolarGrid& grid, double c,
                            double rhs = 2.0);

}  // namespace minklab
