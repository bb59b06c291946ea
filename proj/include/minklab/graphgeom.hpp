#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "minklab/domain.hpp"

namespace minklab {

/// Lorentzian bilinear form with signature (n, 1), last coordinate
/// timelike: sum x_i y_i - x_{n+1} y_{n+1}.
double minkowski_inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Nodal first and second derivatives produced by the grid operators.
struct Derivatives {
  Eigen::ArrayXd ux, uy, uxx, uxy, uyy;
};
Derivatives differentiate(const Eigen::ArrayXd& u, const PolarGrid& grid);

/// Space-like graph x_3 = u(x) over a polar grid, with per-node
/// gradient, Hessian, and tilt factor w = sqrt(1 - |Du|^2).
/// Analytic sources carry closed-form derivatives; sampled sources are
/// finite-differenced through the grid operators.
struct GraphSurface {
  enum class Source { analytic_cap, analytic_flat, solved, sampled };

  std::shared_ptr<const PolarGrid> grid;
  Source source = Source::sampled;
  Eigen::ArrayXd u, ux, uy, uxx, uxy, uyy, w;
  bool spacelike = true;  ///< max |Du| <= 1 - eps_space over all nodes
  double min_w = 1.0;
  double cap_theta0 = std::numeric_limits<double>::quiet_NaN();

  static constexpr double eps_space = 1e-6;

  /// Differences the samples through the grid operators.  A grid point
  /// with |Du| >= 1 leaves NaN in w and clears the spacelike flag; no
  /// exception is thrown so that solver line searches can probe
  /// inadmissible iterates.
  static GraphSurface from_samples(std::shared_ptr<const PolarGrid> grid,
                                   Eigen::ArrayXd u,
                                   Source source = Source::sampled);
};

/// Exact hyperboloid cap u = c + theta0 + sqrt(1 + |x - a|^2) with
/// closed-form derivatives, over a disk grid of radius
/// R = sqrt(theta0^2 - 1) centered at a.  Requires theta0 < -1 and a
/// matching disk domain (radius checked to 1e-10).
GraphSurface hyperboloid_cap(double c, double theta0,
                             std::shared_ptr<const PolarGrid> grid);

/// Flat graph u = c with closed-form (zero) derivatives.
GraphSurface flat_surface(double c, std::shared_ptr<const PolarGrid> grid);

/// Per-node metric, shape operator, principal curvatures, symmetric
/// functions, and trace-free norm of a space-like graph (ambient n = 2).
struct CurvatureField {
  Eigen::ArrayXd g11, g12, g22;     ///< induced metric
  Eigen::ArrayXd gi11, gi12, gi22;  ///< inverse metric
  Eigen::ArrayXd a11, a12, a21, a22;  ///< shape operator A(row, col)
  Eigen::ArrayXd lambda1, lambda2;    ///< principal curvatures, sorted
  Eigen::ArrayXd S1, S2;
  Eigen::ArrayXd hbar2;  ///< tr(A^2) - S1^2/n
};

/// Eigenvalues come from the symmetric conjugation M = C h C with
/// C = (g^{ij})^{1/2}, which is similar to A and keeps the spectrum
/// real in floating point.
CurvatureField curvature_field(const GraphSurface& surf);

/// Max nodal residual of the algebraic identity
/// |hbar|^2 = (n-1)/n S1^2 - 2 S2 (pure algebra, always <= 1e-10).
double trace_free_identity_check(const CurvatureField& cf);

/// Graph P-function P = -u + 1/w with its analytic coordinate
/// derivatives P_i = -u_i + h^s_i u_s (no differencing of P), plus both
/// gradient-norm interpretations.
struct PFieldGraph {
  Eigen::ArrayXd P, Px, Py;
  Eigen::ArrayXd gnorm2;  ///< g^{ij} P_i P_j
  Eigen::ArrayXd enorm2;  ///< sum_i P_i^2
};
PFieldGraph p_field_graph(const GraphSurface& surf);

/// Convex-body P-function on the position vector phi = (x, u):
/// P = (1/2) <phi, phi> - <phi, e_3> with e_3 = (Du, 1)/w.
struct PFieldConvex {
  Eigen::ArrayXd phi_sq;     ///< <phi, phi>
  Eigen::ArrayXd phi_dot_e;  ///< <phi, e_3>
  Eigen::ArrayXd P;
  Eigen::Array<bool, Eigen::Dynamic, 1> upper_timelike;  ///< <phi, e_3> < 0
};
PFieldConvex p_field_convex(const GraphSurface& surf);

/// Gamma_k cone membership per node.
struct GammaReport {
  Eigen::Array<bool, Eigen::Dynamic, 1> per_node;
  bool all = false;
};
GammaReport gamma_k_report(const CurvatureField& cf, int k);

/// CSV dump: comment header (domain, grid, source, boundary value, any
/// caller-provided lines) followed by
/// s,phi,x1,x2,u,u_x1,u_x2,w,lambda1,lambda2,S1,S2,P rows per node.
void dump_surface(std::ostream& os, const GraphSurface& surf,
                  const CurvatureField& cf, const PFieldGraph& pf, double c,
                  const std::vector<std::string>& extra_header = {});

struct LoadedSurface {
  GraphSurface surf;
  double c = 0.0;
};
/// Rebuilds the surface from a dump: analytic sources are regenerated
/// from their closed forms, sampled/solved sources are re-differenced
/// from the u column.
LoadedSurface load_surface(std::istream& is);

}  // namespace minklab
