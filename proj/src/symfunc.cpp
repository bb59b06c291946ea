#include "minklab/symfunc.hpp"

#include <cmath>
#include <stdexcept>

namespace minklab {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return std::round(v);
}

std::vector<double> elem_sym_values(const Eigen::VectorXd& lambda) {
  const int n = static_cast<int>(lambda.size());
  std::vector<double> s(n + 1, 0.0);
  s[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int k = std::min(i + 1, n); k >= 1; --k)
      s[k] += lambda[i] * s[k - 1];
  return s;
}

namespace {

bool is_symmetric(const Eigen::MatrixXd& A) {
  const double scale = 1.0 + A.cwiseAbs().maxCoeff();
  return (A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

// Newton's identities: k S_k = sum_{m=1..k} (-1)^{m-1} S_{k-m} tr(A^m).
std::vector<double> char_poly_values(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  std::vector<double> t(n + 1, 0.0);
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n);
  for (int m = 1; m <= n; ++m) {
    P = P * A;
    t[m] = P.trace();
  }
  std::vector<double> s(n + 1, 0.0);
  s[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    double sign = 1.0;
    for (int m = 1; m <= k; ++m) {
      acc += sign * s[k - m] * t[m];
      sign = -sign;
    }
    s[k] = acc / k;
  }
  return s;
}

}  // namespace

std::vector<double> elem_sym_matrix_values(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("elem_sym_matrix_values: matrix not square");
  if (is_symmetric(A)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    return elem_sym_values(es.eigenvalues());
  }
  return char_poly_values(A);
}

double elem_sym_matrix(const Eigen::MatrixXd& A, int k) {
  const int n = static_cast<int>(A.rows());
  if (k < 0 || k > n)
    throw std::invalid_argument("elem_sym_matrix: k outside [0, n]");
  return elem_sym_matrix_values(A)[k];
}

Eigen::MatrixXd newton_tensor(const Eigen::MatrixXd& A, int k) {
  const int n = static_cast<int>(A.rows());
  if (A.rows() != A.cols())
    throw std::invalid_argument("newton_tensor: matrix not square");
  if (k < 1 || k > n)
    throw std::invalid_argument("newton_tensor: k outside [1, n]");
  const std::vector<double> s = elem_sym_matrix_values(A);
  Eigen::MatrixXd T = Eigen::MatrixXd::Identity(n, n);
  for (int m = 2; m <= k; ++m)
    T = s[m - 1] * Eigen::MatrixXd::Identity(n, n) - A * T;
  return T;
}

GardingFlags garding_membership(const Eigen::VectorXd& lambda) {
  GardingFlags f;
  f.values = elem_sym_values(lambda);
  const int n = static_cast<int>(lambda.size());
  const double norm = lambda.norm();
  double cutoff = 1e-12;
  for (int k = 1; k <= n; ++k) {
    cutoff *= std::max(norm, 1.0);
    if (f.values[k] > 1e-12 + cutoff)
      f.k_max = k;
    else
      break;
  }
  return f;
}

namespace {

double normalized_ratio(const std::vector<double>& s, int n, int hi, int lo) {
  const double num = s[hi] / binomial(n, hi);
  const double den = s[lo] / binomial(n, lo);
  return std::pow(num / den, 1.0 / (hi - lo));
}

}  // namespace

double newton_maclaurin_margin(const Eigen::VectorXd& lambda,
                               int k, int l, int r, int s) {
  const int n = static_cast<int>(lambda.size());
  if (!(0 <= l && l < k && k <= n && 0 <= s && s < r && r <= n && r <= k &&
        s <= l))
    throw std::invalid_argument("newton_maclaurin_margin: bad indices");
  if (garding_membership(lambda).k_max < k)
    throw std::invalid_argument(
        "newton_maclaurin_margin: lambda outside Gamma_k");
  const std::vector<double> sv = elem_sym_values(lambda);
  return normalized_ratio(sv, n, r, s) - normalized_ratio(sv, n, k, l);
}

PinchingMargins pinching_margins(const Eigen::MatrixXd& A, int k, int l) {
  const int n = static_cast<int>(A.rows());
  if (!(0 <= l && l < k && k <= n))
    throw std::invalid_argument("pinching_margins: bad indices");
  std::vector<double> s = elem_sym_matrix_values(A);
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        0.5 * (A + A.transpose()));
    if (garding_membership(es.eigenvalues()).k_max < k)
      throw std::invalid_argument("pinching_margins: A outside Gamma_k");
  }
  // Rescale so that S_k/S_l matches the binomial ratio; S_j scales as t^j.
  const double target = binomial(n, k) / binomial(n, l);
  const double t = std::pow(target * s[l] / s[k], 1.0 / (k - l));
  double tp = 1.0;
  for (int j = 1; j <= n; ++j) {
    tp *= t;
    s[j] *= tp;
  }
  auto S = [&](int j) { return (j < 0 || j > n) ? 0.0 : s[j]; };
  PinchingMargins m;
  m.t = t;
  m.around_k_low = S(k - 1) / S(k) - static_cast<double>(k) / (n - k + 1);
  m.around_l_high = S(l + 1) / S(l) - static_cast<double>(n - l) / (l + 1);
  m.around_k_high = static_cast<double>(n - k) / (k + 1) - S(k + 1) / S(k);
  m.around_l_low = static_cast<double>(l) / (n - l + 1) - S(l - 1) / S(l);
  return m;
}

Eigen::MatrixXd quotient_derivative(const Eigen::MatrixXd& A, int k, int l) {
  const int n = static_cast<int>(A.rows());
  if (!(0 <= l && l < k && k <= n))
    throw std::invalid_argument("quotient_derivative: bad indices");
  const std::vector<double> s = elem_sym_matrix_values(A);
  const double scale = 1.0 + std::pow(A.norm(), l);
  if (std::abs(s[l]) <= 1e-14 * scale)
    throw std::invalid_argument("quotient_derivative: S_l vanishes");
  const double F = s[k] / s[l];
  Eigen::MatrixXd D = newton_tensor(A, k) / s[k];
  if (l >= 1) D -= newton_tensor(A, l) / s[l];
  return F * D;
}

}  // namespace minklab
