#include "minklab/cmc_solver.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace minklab {

namespace {

struct Jet {
  Eigen::ArrayXd ux, uy, uxx, uxy, uyy;
  double grad_max = 0.0;
};

Jet evaluate_jet(const Eigen::ArrayXd& u, const PolarGrid& grid) {
  Derivatives d = differentiate(u, grid);
  Jet j{std::move(d.ux), std::move(d.uy), std::move(d.uxx),
        std::move(d.uxy), std::move(d.uyy)};
  j.grad_max = std::sqrt((j.ux.square() + j.uy.square()).maxCoeff());
  return j;
}

Eigen::ArrayXd interior_residual(const Jet& j, double rhs, int nb) {
  const Eigen::ArrayXd w = (1.0 - j.ux.square() - j.uy.square()).sqrt();
  const Eigen::ArrayXd w3 = w * w * w;
  const Eigen::ArrayXd lap = j.uxx + j.uyy;
  const Eigen::ArrayXd quad =
      j.ux.square() * j.uxx + 2.0 * j.ux * j.uy * j.uxy +
      j.uy.square() * j.uyy;
  return (lap / w + quad / w3 - rhs).head(nb);
}

}  // namespace

Eigen::ArrayXd cmc_residual(const GraphSurface& surf, double rhs) {
  if (!surf.spacelike)
    throw std::domain_error("cmc_residual: surface is not space-like");
  const Eigen::ArrayXd w3 = surf.w * surf.w * surf.w;
  const Eigen::ArrayXd quad =
      surf.ux.square() * surf.uxx + 2.0 * surf.ux * surf.uy * surf.uxy +
      surf.uy.square() * surf.uyy;
  Eigen::ArrayXd F = (surf.uxx + surf.uyy) / surf.w + quad / w3 - rhs;
  F.tail(surf.grid->size() - surf.grid->first_boundary_dof()).setZero();
  return F;
}

SolveReport newton_solve(std::shared_ptr<const PolarGrid> grid,
                         const SolverConfig& cfg) {
  if (!(cfg.residual_tol > 0.0))
    throw std::invalid_argument("newton_solve: residual_tol must be positive");
  if (!(cfg.damping > 0.0 && cfg.damping < 1.0))
    throw std::invalid_argument("newton_solve: damping must be in (0, 1)");
  if (cfg.max_newton_iters < 1)
    throw std::invalid_argument("newton_solve: max_newton_iters must be >= 1");

  const PolarGrid& g = *grid;
  const int N = g.size();
  const int nb = g.first_boundary_dof();

  Eigen::ArrayXd u;
  switch (cfg.guess) {
    case SolverConfig::Guess::flat:
      u = Eigen::ArrayXd::Constant(N, cfg.c);
      break;
    case SolverConfig::Guess::scaled_cap: {
      const double rbar = g.rho_nodes().mean();
      const double a = 2.0 / cfg.rhs;
      const double edge = std::sqrt(a * a + rbar * rbar);
      u.resize(N);
      for (int d = 0; d < N; ++d) {
        const double r = g.s()[d] * rbar;
        u[d] = cfg.c + std::sqrt(a * a + r * r) - edge;
      }
      break;
    }
    case SolverConfig::Guess::custom:
      if (cfg.custom_u0.size() != N)
        throw std::invalid_argument(
            "newton_solve: custom_u0 length does not match the grid");
      u = cfg.custom_u0;
      u.tail(N - nb) = cfg.c;
      break;
  }

  SolveReport rep;
  auto finish = [&](SolveReport::Status status, std::string message) {
    rep.status = status;
    rep.message = std::move(message);
    rep.surface = GraphSurface::from_samples(grid, u,
                                             GraphSurface::Source::solved);
    rep.min_w = rep.surface.min_w;
    return rep;
  };

  Jet jet = evaluate_jet(u, g);
  if (jet.grad_max > 1.0 - cfg.eps_space)
    return finish(SolveReport::Status::spacelike_breakdown,
                  "initial guess is not space-like");
  Eigen::ArrayXd F = interior_residual(jet, cfg.rhs, nb);
  double res = F.abs().maxCoeff();
  rep.residual_history.push_back(res);
  rep.final_residual = res;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  while (res > cfg.residual_tol) {
    if (rep.iterations >= cfg.max_newton_iters)
      return finish(SolveReport::Status::non_convergence,
                    "Newton iteration limit reached");

    // Exact linearization of F(u) = lap/w + quad/w^3 - rhs.
    const Eigen::ArrayXd w = (1.0 - jet.ux.square() - jet.uy.square()).sqrt();
    const Eigen::ArrayXd w3 = w * w * w;
    const Eigen::ArrayXd w5 = w3 * w * w;
    const Eigen::ArrayXd lap = jet.uxx + jet.uyy;
    const Eigen::ArrayXd quad =
        jet.ux.square() * jet.uxx + 2.0 * jet.ux * jet.uy * jet.uxy +
        jet.uy.square() * jet.uyy;
    const Eigen::ArrayXd c11 = 1.0 / w + jet.ux.square() / w3;
    const Eigen::ArrayXd c12 = 2.0 * jet.ux * jet.uy / w3;
    const Eigen::ArrayXd c22 = 1.0 / w + jet.uy.square() / w3;
    const Eigen::ArrayXd d1 = lap * jet.ux / w3 +
                              2.0 * (jet.ux * jet.uxx + jet.uy * jet.uxy) / w3 +
                              quad * 3.0 * jet.ux / w5;
    const Eigen::ArrayXd d2 = lap * jet.uy / w3 +
                              2.0 * (jet.ux * jet.uxy + jet.uy * jet.uyy) / w3 +
                              quad * 3.0 * jet.uy / w5;

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(5 * 16 * static_cast<std::size_t>(nb));
    auto accumulate = [&](const Eigen::SparseMatrix<double>& M,
                          const Eigen::ArrayXd& coef) {
      for (int k = 0; k < M.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(M, k); it; ++it)
          if (it.row() < nb && it.col() < nb)
            trips.emplace_back(static_cast<int>(it.row()),
                               static_cast<int>(it.col()),
                               coef[it.row()] * it.value());
    };
    const DiffOps& o = g.ops();
    accumulate(o.hxx, c11);
    accumulate(o.hxy, c12);
    accumulate(o.hyy, c22);
    accumulate(o.gx, d1);
    accumulate(o.gy, d2);
    Eigen::SparseMatrix<double> Jii(nb, nb);
    Jii.setFromTriplets(trips.begin(), trips.end());
    Jii.makeCompressed();

    lu.compute(Jii);
    if (lu.info() != Eigen::Success)
      return finish(SolveReport::Status::non_convergence,
                    "Jacobian factorization failed");
    const Eigen::VectorXd du = lu.solve(-F.matrix());
    if (lu.info() != Eigen::Success)
      return finish(SolveReport::Status::non_convergence,
                    "Jacobian solve failed");

    double alpha = 1.0;
    Eigen::ArrayXd u_next;
    Jet jet_next;
    Eigen::ArrayXd F_next;
    double res_next = 0.0;
    for (;;) {
      if (alpha < 1e-8)
        return finish(SolveReport::Status::spacelike_breakdown,
                      "no admissible step length above 1e-8");
      u_next = u;
      u_next.head(nb) += alpha * du.array();
      jet_next = evaluate_jet(u_next, g);
      if (jet_next.grad_max <= 1.0 - cfg.eps_space) {
        F_next = interior_residual(jet_next, cfg.rhs, nb);
        res_next = F_next.abs().maxCoeff();
        if (res_next < res) break;
      }
      alpha *= cfg.damping;
      ++rep.damping_events;
    }

    u = std::move(u_next);
    jet = std::move(jet_next);
    F = std::move(F_next);
    res = res_next;
    ++rep.iterations;
    rep.residual_history.push_back(res);
    rep.final_residual = res;
  }

  rep.converged = true;
  return finish(SolveReport::Status::ok, "converged");
}

Eigen::ArrayXd radial_exact(const PolarGrid& grid, double c, double rhs) {
  const StarDomain& dom = grid.domain();
  if (dom.kind() != StarDomain::Kind::disk)
    throw std::invalid_argument("radial_exact: domain must be a disk");
  if (!(rhs > 0.0))
    throw std::invalid_argument("radial_exact: rhs must be positive");
  const double a = 2.0 / rhs;
  const double R = dom.param_a();
  const double edge = std::sqrt(a * a + R * R);
  Eigen::ArrayXd u(grid.size());
  for (int d = 0; d < grid.size(); ++d) {
    const double dx = grid.x1()[d] - dom.center().x();
    const double dy = grid.x2()[d] - dom.center().y();
    u[d] = c + std::sqrt(a * a + dx * dx + dy * dy) - edge;
  }
  return u;
}

}  // namespace minklab
