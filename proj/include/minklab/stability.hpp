#pragma once

#include <string>
#include <vector>

#include "minklab/cmc_solver.hpp"
#include "minklab/domain.hpp"
#include "minklab/graphgeom.hpp"

namespace minklab {

/// Quantitative almost-umbilicity data for one solved surface: the L2 norm
/// of the trace-free second fundamental form against several computable
/// upper bounds built from boundary data alone.
struct StabilityReport {
  /// L2 norm of the trace-free second fundamental form over the domain.
  double hbar_L2 = 0.0;

  /// Boundary curvature deficit |H0 - kappa| in L1 and sup norm.
  double deficit_L1 = 0.0;
  double deficit_inf = 0.0;

  /// Inverse-curvature deficit: boundary integral of 1/kappa minus n|Omega|.
  /// NaN when the boundary is not strictly mean-convex.
  double hk_deficit = 0.0;

  /// Maximum boundary tilt factor 1/w and the gradient gap 1 - max |Du|.
  double tilt_max = 0.0;
  double gradient_gap = 0.0;

  /// Minimum boundary curvature and whether it is strictly positive.
  double min_boundary_curvature = 0.0;
  bool mean_convex = false;

  /// Tilt-weighted bound sqrt(n-1) K (1-G) sqrt(deficit_L1) with
  /// K = tilt_max and G = gradient_gap, and its margin over hbar_L2.
  double bound_tilt = 0.0;
  double margin_tilt = 0.0;

  /// Inverse-curvature deficit bounds, in the two bracketings of the
  /// (n-1) factor, which coincide in the planar case.
  double bound_deficit = 0.0;
  double margin_deficit = 0.0;
  double bound_deficit_alt = 0.0;
  double margin_deficit_alt = 0.0;

  /// Bound from the L1 distance between 1/kappa and the boundary
  /// gradient ratio |Du|/w.
  double bound_gradient = 0.0;
  double margin_gradient = 0.0;

  /// Bound from the sup-norm deficit scaled by n(n-1)|Omega| over the
  /// minimum boundary curvature.
  double bound_sup = 0.0;
  double margin_sup = 0.0;

  /// Residual of the fundamental integral identity on this surface,
  /// recorded as a consistency check of the inputs.
  double id_residual = 0.0;

  /// False when the surface generation behind this row failed.
  bool converged = true;

  ReferenceConstants ref;
};

/// Computes the full stability report for a solved surface. Bounds that
/// require a mean-convex boundary are NaN when that fails.
StabilityReport stability_report(const GraphSurface& surf,
                                 const CurvatureField& cf,
                                 const PFieldGraph& pf, double c);

/// One member of a domain family sweep.
struct SweepMember {
  double family_param = 0.0;
  StarDomain domain = StarDomain::disk(1.0);
};

/// One output row of a sweep: the parameter and the stability data of the
/// surface solved on that domain.
struct SweepRow {
  double family_param = 0.0;
  StabilityReport rep;
};

/// Solves the prescribed-curvature problem on every member domain and
/// reports the stability data, in member order. Members run concurrently;
/// a failed solve yields a row with converged=false and NaN entries.
std::vector<SweepRow> domain_sweep(const std::vector<SweepMember>& members,
                                   int n_r, int n_phi,
                                   const SolverConfig& cfg);

/// Renders sweep rows as CSV with a fixed column set.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace minklab
