#include "minklab/stability.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "minklab/identities.hpp"

namespace minklab {

namespace {

constexpr int kN = 2;

StabilityReport failed_report() {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  StabilityReport rep;
  rep.hbar_L2 = rep.deficit_L1 = rep.deficit_inf = rep.hk_deficit = nan;
  rep.tilt_max = rep.gradient_gap = rep.min_boundary_curvature = nan;
  rep.bound_tilt = rep.margin_tilt = nan;
  rep.bound_deficit = rep.margin_deficit = nan;
  rep.bound_deficit_alt = rep.margin_deficit_alt = nan;
  rep.bound_gradient = rep.margin_gradient = nan;
  rep.bound_sup = rep.margin_sup = nan;
  rep.id_residual = nan;
  rep.mean_convex = false;
  rep.converged = false;
  return rep;
}

}  // namespace

StabilityReport stability_report(const GraphSurface& surf,
                                 const CurvatureField& cf,
                                 const PFieldGraph& pf, double c) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const PolarGrid& g = *surf.grid;
  StabilityReport rep;
  rep.ref = reference_constants(g);
  const BoundaryGeometry bg = boundary_geometry(g.domain(), g.n_phi());

  rep.hbar_L2 = std::sqrt(g.integrate(cf.hbar2));

  const Eigen::ArrayXd ux_b = g.boundary_values(surf.ux);
  const Eigen::ArrayXd uy_b = g.boundary_values(surf.uy);
  const Eigen::ArrayXd w_b = g.boundary_values(surf.w);
  const Eigen::ArrayXd grad_b = (ux_b.square() + uy_b.square()).sqrt();
  const Eigen::ArrayXd q = grad_b / w_b;

  const Eigen::ArrayXd deficit = rep.ref.H0 - bg.kappa;
  rep.deficit_L1 = g.integrate_boundary(deficit.abs());
  rep.deficit_inf = deficit.abs().maxCoeff();

  rep.min_boundary_curvature = bg.kappa.minCoeff();
  rep.mean_convex = rep.min_boundary_curvature > 0.0;

  rep.tilt_max = (1.0 / w_b).maxCoeff();
  rep.gradient_gap = 1.0 - grad_b.maxCoeff();

  const double sqrt_nm1 = std::sqrt(kN - 1.0);
  rep.bound_tilt = sqrt_nm1 * rep.tilt_max * (1.0 - rep.gradient_gap) *
                   std::sqrt(rep.deficit_L1);

  if (rep.mean_convex) {
    const double inv_kappa = g.integrate_boundary(1.0 / bg.kappa);
    const double n_omega = kN * rep.ref.area;
    rep.hk_deficit = inv_kappa - n_omega;
    rep.bound_deficit =
        std::sqrt(std::max((kN - 1.0) * inv_kappa - n_omega, 0.0));
    rep.bound_deficit_alt =
        std::sqrt(std::max((kN - 1.0) * (inv_kappa - n_omega), 0.0));
    rep.bound_gradient =
        sqrt_nm1 *
        std::sqrt(g.integrate_boundary((1.0 / bg.kappa - q).abs()));
    rep.bound_sup = std::sqrt(kN * (kN - 1.0) * rep.ref.area /
                              rep.min_boundary_curvature) *
                    std::sqrt(rep.deficit_inf);
  } else {
    rep.hk_deficit = nan;
    rep.bound_deficit = rep.bound_deficit_alt = nan;
    rep.bound_gradient = rep.bound_sup = nan;
  }

  rep.margin_tilt = rep.bound_tilt - rep.hbar_L2;
  rep.margin_deficit = rep.bound_deficit - rep.hbar_L2;
  rep.margin_deficit_alt = rep.bound_deficit_alt - rep.hbar_L2;
  rep.margin_gradient = rep.bound_gradient - rep.hbar_L2;
  rep.margin_sup = rep.bound_sup - rep.hbar_L2;

  rep.id_residual =
      eval_fundamental(surf, cf, pf, c, GradFlag::g_metric).residual;
  rep.converged = true;
  return rep;
}

std::vector<SweepRow> domain_sweep(const std::vector<SweepMember>& members,
                                   int n_r, int n_phi,
                                   const SolverConfig& cfg) {
  std::vector<std::future<SweepRow>> futures;
  futures.reserve(members.size());
  for (const SweepMember& member : members) {
    futures.push_back(std::async(std::launch::async, [member, n_r, n_phi,
                                                      cfg]() -> SweepRow {
      SweepRow row;
      row.family_param = member.family_param;
      try {
        auto grid =
            std::make_shared<const PolarGrid>(member.domain, n_r, n_phi);
        const SolveReport sr = newton_solve(grid, cfg);
        if (!sr.converged) {
          row.rep = failed_report();
          return row;
        }
        const CurvatureField cf = curvature_field(sr.surface);
        const PFieldGraph pf = p_field_graph(sr.surface);
        row.rep = stability_report(sr.surface, cf, pf, cfg.c);
      } catch (const std::exception&) {
        row.rep = failed_report();
      }
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(members.size());
  for (auto& fut : futures) rows.push_back(fut.get());
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  os << "family_param,area,perimeter,R0,H0,hbar_L2,deficit_L1,deficit_inf,"
        "hk_deficit,tilt_max,gradient_gap,bound_tilt,margin_tilt,"
        "bound_deficit,margin_deficit,bound_sup,margin_sup,converged\n";
  for (const SweepRow& row : rows) {
    const StabilityReport& r = row.rep;
    os << row.family_param << ',' << r.ref.area << ',' << r.ref.perimeter
       << ',' << r.ref.R0 << ',' << r.ref.H0 << ',' << r.hbar_L2 << ','
       << r.deficit_L1 << ',' << r.deficit_inf << ',' << r.hk_deficit << ','
       << r.tilt_max << ',' << r.gradient_gap << ',' << r.bound_tilt << ','
       << r.margin_tilt << ',' << r.bound_deficit << ',' << r.margin_deficit
       << ',' << r.bound_sup << ',' << r.margin_sup << ','
       << (r.converged ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace minklab
