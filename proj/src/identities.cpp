#include "minklab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "minklab/symfunc.hpp"

namespace minklab {

namespace {

constexpr int kN = 2;          // ambient dimension of the grid pipeline
constexpr double kCmcTol = 1e-6;
constexpr double kQuotientTol = 1e-6;

double s_value(const std::vector<double>& s, int j) {
  if (j < 0 || j >= static_cast<int>(s.size())) return 0.0;
  return s[static_cast<std::size_t>(j)];
}

/// Shared integrands of the volume side and the boundary data.
struct EvalContext {
  const PolarGrid* grid = nullptr;
  ReferenceConstants ref;
  BoundaryGeometry bg;
  Eigen::ArrayXd q;        // boundary |Du|/w per angle
  Eigen::ArrayXd P_b;      // boundary P per angle
  double cmc_defect = 0.0; // max interior |S1 - n|
  double vol_e = 0.0, vol_g = 0.0, vol_second = 0.0;
  Eigen::ArrayXd theta;    // -1/w per node
};

EvalContext make_context(const GraphSurface& surf, const CurvatureField& cf,
                         const PFieldGraph& pf, double c) {
  EvalContext ctx;
  const PolarGrid& g = *surf.grid;
  ctx.grid = &g;
  ctx.ref = reference_constants(g);
  ctx.bg = boundary_geometry(g.domain(), g.n_phi());
  const Eigen::ArrayXd ux_b = g.boundary_values(surf.ux);
  const Eigen::ArrayXd uy_b = g.boundary_values(surf.uy);
  const Eigen::ArrayXd w_b = g.boundary_values(surf.w);
  ctx.q = (ux_b.square() + uy_b.square()).sqrt() / w_b;
  ctx.P_b = g.boundary_values(pf.P);
  ctx.cmc_defect =
      (cf.S1.head(g.first_boundary_dof()) - static_cast<double>(kN))
          .abs()
          .maxCoeff();
  ctx.theta = -1.0 / surf.w;
  const Eigen::ArrayXd second =
      2.0 * cf.S2 - (kN - 1.0) / kN * cf.S1.square();
  ctx.vol_e = g.integrate(pf.enorm2);
  ctx.vol_g = g.integrate(pf.gnorm2);
  ctx.vol_second = g.integrate(second * ctx.theta * (pf.P + c));
  return ctx;
}

void finalize(IdentityReport& rep, double lhs, double rhs, double n_omega) {
  rep.residual = std::abs(lhs - rhs);
  rep.scale = std::max({std::abs(lhs), std::abs(rhs), n_omega});
  rep.rel_residual = rep.scale > 0.0 ? rep.residual / rep.scale : 0.0;
}

void stamp_grid(IdentityReport& rep, const PolarGrid& g) {
  rep.n_r = g.n_r();
  rep.n_phi = g.n_phi();
}

void check_cmc(IdentityReport& rep, double defect) {
  rep.terms.emplace_back("cmc_defect", defect);
  if (defect > kCmcTol) {
    rep.valid = false;
    rep.note = "curvature trace deviates from the target at interior nodes";
  }
}

}  // namespace

std::string to_string(GradFlag flag) {
  return flag == GradFlag::euclidean ? "euclidean" : "g_metric";
}

double IdentityReport::term(const std::string& name) const {
  for (const auto& [key, value] : terms)
    if (key == name) return value;
  throw std::out_of_range("IdentityReport: no term named " + name);
}

bool IdentityReport::has_term(const std::string& name) const {
  for (const auto& [key, value] : terms)
    if (key == name) return true;
  return false;
}

IdentityReport eval_fundamental(const GraphSurface& surf,
                                const CurvatureField& cf,
                                const PFieldGraph& pf, double c,
                                GradFlag flag) {
  const EvalContext ctx = make_context(surf, cf, pf, c);
  const PolarGrid& g = *ctx.grid;
  IdentityReport rep;
  rep.id = "fundamental";
  rep.flag = flag;
  stamp_grid(rep, g);

  const Eigen::ArrayXd Px_b = g.boundary_values(pf.Px);
  const Eigen::ArrayXd Py_b = g.boundary_values(pf.Py);
  const Eigen::ArrayXd w_b = g.boundary_values(surf.w);
  const Eigen::ArrayXd P_nu = Px_b * ctx.bg.nu_x + Py_b * ctx.bg.nu_y;

  const double vol_grad = flag == GradFlag::euclidean ? ctx.vol_e : ctx.vol_g;
  const double b_raw = g.integrate_boundary((ctx.P_b + c) * P_nu);
  const double b_simpl = g.integrate_boundary(
      (kN - 1.0) * (1.0 - ctx.q * ctx.bg.kappa) * ctx.q);

  // Tilt-weighted variant: density w g^{ij} P_i P_j, flux (P+c) P_nu / w.
  const Eigen::ArrayXd second =
      2.0 * cf.S2 - (kN - 1.0) / kN * cf.S1.square();
  const double vol_grad_w = g.integrate(surf.w * pf.gnorm2);
  const double vol_second_w = -g.integrate(second * (pf.P + c));
  const double b_conormal =
      g.integrate_boundary((ctx.P_b + c) * P_nu / w_b);

  rep.terms.emplace_back("volume_gradient", vol_grad);
  rep.terms.emplace_back("volume_second_order", ctx.vol_second);
  rep.terms.emplace_back("boundary_raw", b_raw);
  rep.terms.emplace_back("boundary_simplified", b_simpl);
  rep.terms.emplace_back("boundary_deviation", b_raw - b_simpl);
  rep.terms.emplace_back("volume_gradient_weighted", vol_grad_w);
  rep.terms.emplace_back("volume_second_weighted", vol_second_w);
  rep.terms.emplace_back("boundary_conormal", b_conormal);
  rep.terms.emplace_back("residual_weighted",
                         vol_grad_w + vol_second_w - b_conormal);

  // Pointwise positivity minima used by the stability chain: the
  // position product as printed and the angle-factor variant.
  const Eigen::ArrayXd inv_w2 = 1.0 / surf.w.square();
  rep.terms.emplace_back(
      "position_product_min",
      (surf.u * (pf.P + c) - inv_w2).minCoeff());
  rep.terms.emplace_back(
      "angle_product_min",
      ((pf.P + c) / surf.w - inv_w2).minCoeff());

  check_cmc(rep, ctx.cmc_defect);
  finalize(rep, vol_grad + ctx.vol_second, b_raw, kN * ctx.ref.area);
  return rep;
}

IdentityReport eval_soap_bubble(const GraphSurface& surf,
                                const CurvatureField& cf,
                                const PFieldGraph& pf, double c,
                                GradFlag flag) {
  const EvalContext ctx = make_context(surf, cf, pf, c);
  const PolarGrid& g = *ctx.grid;
  IdentityReport rep;
  rep.id = "soap_bubble";
  rep.flag = flag;
  stamp_grid(rep, g);

  const double vol_grad = flag == GradFlag::euclidean ? ctx.vol_e : ctx.vol_g;
  const double t1 = (vol_grad + ctx.vol_second) / (kN - 1.0);
  const double t2 =
      g.integrate_boundary((ctx.q - ctx.ref.R0).square()) / ctx.ref.R0;
  const double rhs = g.integrate_boundary(
      (ctx.ref.H0 - ctx.bg.kappa) * ctx.q.square());
  const double t1_resub =
      (vol_grad + g.integrate(cf.hbar2 * (pf.P + c) / surf.w)) / (kN - 1.0);

  rep.terms.emplace_back("volume_term", t1);
  rep.terms.emplace_back("boundary_quadratic", t2);
  rep.terms.emplace_back("curvature_deficit_rhs", rhs);
  rep.terms.emplace_back("volume_term_resubstituted", t1_resub);

  check_cmc(rep, ctx.cmc_defect);
  finalize(rep, t1 + t2, rhs, kN * ctx.ref.area);
  return rep;
}

IdentityReport eval_heintze_karcher(const GraphSurface& surf,
                                    const CurvatureField& cf,
                                    const PFieldGraph& pf, double c,
                                    GradFlag flag) {
  const EvalContext ctx = make_context(surf, cf, pf, c);
  const PolarGrid& g = *ctx.grid;
  IdentityReport rep;
  rep.id = "heintze_karcher";
  rep.flag = flag;
  stamp_grid(rep, g);

  const double min_kappa = ctx.bg.kappa.minCoeff();
  rep.terms.emplace_back("min_boundary_curvature", min_kappa);
  if (!(min_kappa > 0.0)) {
    rep.valid = false;
    rep.note = "boundary is not strictly mean-convex";
    check_cmc(rep, ctx.cmc_defect);
    finalize(rep, 0.0, 0.0, kN * ctx.ref.area);
    return rep;
  }

  const double vol_grad = flag == GradFlag::euclidean ? ctx.vol_e : ctx.vol_g;
  const double t1 = (vol_grad + ctx.vol_second) / (kN - 1.0);
  const double t2 = g.integrate_boundary(
      (1.0 - ctx.q * ctx.bg.kappa).square() / ctx.bg.kappa);
  const double deficit =
      g.integrate_boundary(1.0 / ctx.bg.kappa) - kN * ctx.ref.area;

  rep.terms.emplace_back("volume_term", t1);
  rep.terms.emplace_back("boundary_quadratic", t2);
  rep.terms.emplace_back("deficit_rhs", deficit);

  check_cmc(rep, ctx.cmc_defect);
  finalize(rep, t1 + t2, deficit, kN * ctx.ref.area);
  return rep;
}

IdentityReport eval_hk_deficit(const PolarGrid& grid) {
  IdentityReport rep;
  rep.id = "hk_deficit";
  stamp_grid(rep, grid);
  const ReferenceConstants ref = reference_constants(grid);
  const BoundaryGeometry bg =
      boundary_geometry(grid.domain(), grid.n_phi());
  const double min_kappa = bg.kappa.minCoeff();
  rep.terms.emplace_back("min_boundary_curvature", min_kappa);
  if (!(min_kappa > 0.0)) {
    rep.valid = false;
    rep.note = "boundary is not strictly mean-convex";
    rep.scale = kN * ref.area;
    return rep;
  }
  const double integral = grid.integrate_boundary(1.0 / bg.kappa);
  const double n_omega = kN * ref.area;
  const double deficit = integral - n_omega;
  rep.terms.emplace_back("boundary_inverse_curvature", integral);
  rep.terms.emplace_back("volume_multiple", n_omega);
  rep.terms.emplace_back("deficit", deficit);
  rep.residual = std::max(0.0, -deficit);
  rep.scale = n_omega;
  rep.rel_residual = rep.residual / rep.scale;
  return rep;
}

MQValues cap_balance_pointwise(int n, int k, int l,
                               const std::vector<double>& s_values) {
  if (n < 1 || l < 0 || k <= l || k > n)
    throw std::invalid_argument(
        "cap_balance_pointwise: need 0 <= l < k <= n");
  MQValues mq;
  mq.M = k * binomial(n, l) * s_value(s_values, k) -
         l * binomial(n, k) * s_value(s_values, l);
  mq.Q = (n - k + 1) * binomial(n, l) * s_value(s_values, k - 1) -
         (n - l + 1) * binomial(n, k) * s_value(s_values, l - 1);
  return mq;
}

IdentityReport eval_cap_balance(const GraphSurface& surf,
                                const CurvatureField& cf, double c, int k,
                                int l) {
  if (l < 0 || k <= l || k > kN)
    throw std::invalid_argument("eval_cap_balance: need 0 <= l < k <= 2");
  const PolarGrid& g = *surf.grid;
  IdentityReport rep;
  rep.id = "cap_balance";
  stamp_grid(rep, g);
  const ReferenceConstants ref = reference_constants(g);

  const int N = g.size();
  auto s_at = [&](int j, int d) -> double {
    switch (j) {
      case 0:
        return 1.0;
      case 1:
        return cf.S1[d];
      case 2:
        return cf.S2[d];
      default:
        return 0.0;
    }
  };

  // The constraint gate looks at interior nodes only: boundary-ring
  // curvatures come from one-sided stencils and carry O(h^2) error even
  // when the equation is satisfied exactly.
  const int nb = g.first_boundary_dof();
  const double ck = binomial(kN, k), cl = binomial(kN, l);
  double quotient_defect = 0.0;
  Eigen::ArrayXd M(N), Q(N);
  for (int d = 0; d < N; ++d) {
    const double sk = s_at(k, d), sl = s_at(l, d);
    if (d < nb) {
      const double num = std::abs(cl * sk - ck * sl);
      const double den =
          std::max({std::abs(cl * sk), std::abs(ck * sl), 1e-12});
      quotient_defect = std::max(quotient_defect, num / den);
    }
    M[d] = k * cl * sk - l * ck * sl;
    Q[d] = (kN - k + 1) * cl * s_at(k - 1, d) -
           (kN - l + 1) * ck * s_at(l - 1, d);
  }

  const Eigen::ArrayXd ux_b = g.boundary_values(surf.ux);
  const Eigen::ArrayXd uy_b = g.boundary_values(surf.uy);
  const double c2 = (ux_b.square() + uy_b.square()).sqrt().mean();
  const double beta = 1.0 / std::sqrt(1.0 - c2 * c2);

  const double I1 = g.integrate(M * (surf.u - c));
  const double I2 = g.integrate(Q * (-1.0 / surf.w + beta));

  rep.terms.emplace_back("weighted_height", I1);
  rep.terms.emplace_back("weighted_angle", I2);
  rep.terms.emplace_back("min_M", M.minCoeff());
  rep.terms.emplace_back("min_Q", Q.minCoeff());
  rep.terms.emplace_back("max_M_minus_Q", (M - Q).maxCoeff());
  rep.terms.emplace_back("boundary_gradient", c2);
  rep.terms.emplace_back("quotient_defect", quotient_defect);

  if (quotient_defect > kQuotientTol) {
    rep.valid = false;
    rep.note = "curvature quotient is not constant at the target ratio";
  }
  finalize(rep, I1 + I2, 0.0, kN * ref.area);
  return rep;
}

EllipticityReport pointwise_ellipticity(const GraphSurface& surf,
                                        const CurvatureField& cf, int k,
                                        int l) {
  if (l < 0 || k <= l || k > kN)
    throw std::invalid_argument(
        "pointwise_ellipticity: need 0 <= l < k <= 2");
  const GammaReport gamma = gamma_k_report(cf, k);
  if (!gamma.all)
    throw std::domain_error(
        "pointwise_ellipticity: some node leaves the Garding cone");

  const int N = static_cast<int>(cf.S1.size());
  auto s_at = [&](int j, int d) -> double {
    switch (j) {
      case 0:
        return 1.0;
      case 1:
        return cf.S1[d];
      case 2:
        return cf.S2[d];
      default:
        return 0.0;
    }
  };

  EllipticityReport out;
  out.per_node.resize(N);
  const int nb = surf.grid->first_boundary_dof();
  const double ck = binomial(kN, k), cl = binomial(kN, l);
  double defect = 0.0;
  for (int d = 0; d < N; ++d) {
    const double sk = s_at(k, d), sl = s_at(l, d);
    const double F = sk / sl;
    const double bracket = (k - l) + (k + 1) * s_at(k + 1, d) / sk -
                           (l + 1) * s_at(l + 1, d) / sl;
    out.per_node[d] = F * bracket * (-1.0 / surf.w[d]);
    if (d < nb) {
      const double num = std::abs(cl * sk - ck * sl);
      const double den =
          std::max({std::abs(cl * sk), std::abs(ck * sl), 1e-12});
      defect = std::max(defect, num / den);
    }
  }
  out.min_value = out.per_node.head(nb).minCoeff();
  out.quotient_ok = defect <= kQuotientTol;
  return out;
}

double gauss_map_identity(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols() || A.rows() < 1)
    throw std::invalid_argument("gauss_map_identity: need a square matrix");
  const int n = static_cast<int>(A.rows());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible())
    throw std::invalid_argument("gauss_map_identity: matrix is singular");
  const Eigen::MatrixXd B = lu.inverse();
  const std::vector<double> sa = elem_sym_matrix_values(A);
  const std::vector<double> sb = elem_sym_matrix_values(B);
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double defect = std::abs(sa[k] * sb[n] - sb[n - k]) /
                          (1.0 + std::abs(sb[n - k]));
    worst = std::max(worst, defect);
  }
  return worst;
}

}  // namespace minklab
