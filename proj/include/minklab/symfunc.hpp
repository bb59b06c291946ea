#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace minklab {

/// Binomial coefficient as a double (exact for the small n used here).
double binomial(int n, int k);

/// Values [S_0, ..., S_n] of the elementary symmetric polynomials of
/// lambda, accumulated by the one-pass product recurrence on
/// prod_i (t + lambda_i).
std::vector<double> elem_sym_values(const Eigen::VectorXd& lambda);

/// All [S_0(A), ..., S_n(A)]: eigenvalue route for symmetric A,
/// characteristic-polynomial trace recurrence otherwise.  Symmetry is
/// detected to 1e-12 relative tolerance.
std::vector<double> elem_sym_matrix_values(const Eigen::MatrixXd& A);

/// S_k(A) for a single k in [0, n].
double elem_sym_matrix(const Eigen::MatrixXd& A, int k);

/// Derivative tensor (S_k)^j_i = dS_k / da^i_j, stored with the upper
/// index as the row: result(j, i) pairs with A(i, j).  Built from the
/// recurrence (S_k)^j_i = S_{k-1} delta^j_i - sum_l (S_{k-1})^l_i a^j_l,
/// i.e. T_k = S_{k-1} I - A T_{k-1} with T_1 = I.
///
/// Contractions: tr T_k = (n-k+1) S_{k-1}, tr(T_k A) = k S_k,
/// tr(T_k A^2) = S_1 S_k - (k+1) S_{k+1}.
Eigen::MatrixXd newton_tensor(const Eigen::MatrixXd& A, int k);

/// Cone membership summary: k_max is the largest k with S_1..S_k all
/// positive (0 when S_1 <= 0).  Positivity cutoff scales with the
/// entry magnitudes so that near-zero values do not flip the flag.
struct GardingFlags {
  int k_max = 0;
  std::vector<double> values;
};
GardingFlags garding_membership(const Eigen::VectorXd& lambda);

/// Newton-MacLaurin quotient margin
///   [ (S_r/C(n,r)) / (S_s/C(n,s)) ]^{1/(r-s)}
///     - [ (S_k/C(n,k)) / (S_l/C(n,l)) ]^{1/(k-l)}
/// for 0 <= l < k <= n, 0 <= s < r <= n, r <= k, s <= l.  Nonnegative
/// on the Garding cone Gamma_k; zero exactly for constant lambda.
/// Throws std::invalid_argument on index violations or lambda outside
/// Gamma_k.
double newton_maclaurin_margin(const Eigen::VectorXd& lambda,
                               int k, int l, int r, int s);

/// Quotient pinching bounds for A in Gamma_k, evaluated after
/// rescaling A -> tA so that S_k/S_l = C(n,k)/C(n,l).  All four are
/// nonnegative there and vanish together exactly at A = cI:
///   around_k_low  = S_{k-1}/S_k - k/(n-k+1)
///   around_l_high = S_{l+1}/S_l - (n-l)/(l+1)
///   around_k_high = (n-k)/(k+1) - S_{k+1}/S_k
///   around_l_low  = l/(n-l+1) - S_{l-1}/S_l
/// with S_{-1} = 0 and S_{j > n} = 0.
struct PinchingMargins {
  double around_k_low = 0.0;
  double around_l_high = 0.0;
  double around_k_high = 0.0;
  double around_l_low = 0.0;
  double t = 1.0;  ///< normalization scale applied to A
  std::array<double, 4> as_array() const {
    return {around_k_low, around_l_high, around_k_high, around_l_low};
  }
};
PinchingMargins pinching_margins(const Eigen::MatrixXd& A, int k, int l);

/// Derivative of the quotient F = S_k/S_l with respect to the shape
/// operator: F^j_i = F ( (S_k)^j_i/S_k - (S_l)^j_i/S_l ), row = upper
/// index as in newton_tensor.  Positive definite (after symmetrizing)
/// for symmetric A in Gamma_k.
Eigen::MatrixXd quotient_derivative(const Eigen::MatrixXd& A, int k, int l);

}  // namespace minklab
