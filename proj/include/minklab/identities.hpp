#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "minklab/domain.hpp"
#include "minklab/graphgeom.hpp"

namespace minklab {

/// Interpretation of the squared P-gradient in the volume terms:
/// Euclidean sum of squares, or the inverse-metric contraction
/// g^{ij} P_i P_j.  Both are reported; g_metric is the default.
enum class GradFlag { euclidean, g_metric };

std::string to_string(GradFlag flag);

/// Term-by-term record of one identity evaluation.
struct IdentityReport {
  std::string id;
  std::vector<std::pair<std::string, double>> terms;
  double residual = 0.0;  ///< |LHS - RHS|
  double scale = 0.0;     ///< max(|LHS|, |RHS|, n |Omega|)
  double rel_residual = 0.0;
  GradFlag flag = GradFlag::g_metric;
  bool valid = true;  ///< preconditions held
  std::string note;
  int n_r = 0, n_phi = 0;

  /// Value of a named term; throws std::out_of_range if absent.
  double term(const std::string& name) const;
  bool has_term(const std::string& name) const;
};

/// Green-identity balance for the P-function of a curvature-normalized
/// graph: volume terms |grad P|^2 and (2 S_2 - ((n-1)/n) S_1^2) theta
/// (P + c) against the boundary flux (P + c) P_nu, the latter in both
/// its raw and its simplified boundary-curvature form.  Also evaluates
/// the tilt-weighted variant (volume density w g^{ij} P_i P_j, flux
/// (P + c) P_nu / w), which is the discretely convergent form, as
/// diagnostic terms.
IdentityReport eval_fundamental(const GraphSurface& surf,
                                const CurvatureField& cf,
                                const PFieldGraph& pf, double c,
                                GradFlag flag = GradFlag::g_metric);

/// Soap-bubble rearrangement: volume term plus the boundary quadratic
/// (1/R0) int (|Du|/w - R0)^2 against the curvature-deficit integral
/// int (H0 - H_bnd) (|Du|/w)^2.  The volume term is also re-expressed
/// through |hbar|^2 (P + c) / w as a nonnegativity diagnostic.
IdentityReport eval_soap_bubble(const GraphSurface& surf,
                                const CurvatureField& cf,
                                const PFieldGraph& pf, double c,
                                GradFlag flag = GradFlag::g_metric);

/// Heintze-Karcher rearrangement: volume term plus
/// int (1 - (|Du|/w) H_bnd)^2 / H_bnd against int 1/H_bnd - n |Omega|.
/// Requires a strictly mean-convex boundary.
IdentityReport eval_heintze_karcher(const GraphSurface& surf,
                                    const CurvatureField& cf,
                                    const PFieldGraph& pf, double c,
                                    GradFlag flag = GradFlag::g_metric);

/// The Heintze-Karcher inequality itself, a pure domain quantity:
/// deficit = int 1/H_bnd - n |Omega| >= 0, equality on disks.  The
/// report's residual is the constraint violation max(0, -deficit).
IdentityReport eval_hk_deficit(const PolarGrid& grid);

/// Pointwise ingredients of the height/angle balance for
/// quotient-constrained surfaces: M = k C(n,l) S_k - l C(n,k) S_l and
/// Q = (n-k+1) C(n,l) S_{k-1} - (n-l+1) C(n,k) S_{l-1}, with the
/// conventions S_{-1} = 0, S_0 = 1.
struct MQValues {
  double M = 0.0, Q = 0.0;
};
MQValues cap_balance_pointwise(int n, int k, int l,
                               const std::vector<double>& s_values);

/// Integrated height/angle balance on a quotient-constrained surface:
///   0 = int M (u - c) dx + int Q (theta + 1/sqrt(1 - c2^2)) dx
/// with c2 the boundary gradient modulus.  Valid only when
/// S_k/S_l = C(n,k)/C(n,l) holds pointwise (exact caps); the quotient
/// defect is checked and reported.
IdentityReport eval_cap_balance(const GraphSurface& surf,
                                const CurvatureField& cf, double c, int k,
                                int l);

/// Pointwise value of the quotient operator applied to the P-function,
/// via its closed form
///   F (k - l + (k+1) S_{k+1}/S_k - (l+1) S_{l+1}/S_l) (-1/w),
/// F = S_k/S_l.  Nonnegative wherever the quotient constraint holds.
struct EllipticityReport {
  double min_value = 0.0;    ///< minimum over nodes where the equation holds
  bool quotient_ok = false;  ///< S_k/S_l = C(n,k)/C(n,l) at interior nodes
  Eigen::ArrayXd per_node;
};
EllipticityReport pointwise_ellipticity(const GraphSurface& surf,
                                        const CurvatureField& cf, int k,
                                        int l);

/// Inverse-matrix symmetric-function identity
/// S_k(A) S_n(B) = S_{n-k}(B) with B = A^{-1}: returns the maximum
/// over k of the relative defect.  Throws on singular input.
double gauss_map_identity(const Eigen::MatrixXd& A);

}  // namespace minklab
