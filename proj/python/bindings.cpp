#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>
#include <stdexcept>

#include "minklab/cmc_solver.hpp"
#include "minklab/domain.hpp"
#include "minklab/graphgeom.hpp"
#include "minklab/identities.hpp"
#include "minklab/runconfig.hpp"
#include "minklab/stability.hpp"
#include "minklab/symfunc.hpp"

namespace py = pybind11;
using namespace minklab;

namespace {

std::string source_name(GraphSurface::Source source) {
  switch (source) {
    case GraphSurface::Source::analytic_cap:
      return "analytic_cap";
    case GraphSurface::Source::analytic_flat:
      return "analytic_flat";
    case GraphSurface::Source::solved:
      return "solved";
    case GraphSurface::Source::sampled:
      return "sampled";
  }
  return "unknown";
}

std::string status_name(SolveReport::Status status) {
  switch (status) {
    case SolveReport::Status::ok:
      return "ok";
    case SolveReport::Status::non_convergence:
      return "non_convergence";
    case SolveReport::Status::spacelike_breakdown:
      return "spacelike_breakdown";
  }
  return "unknown";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curvature laboratory for space-like graphs over star-shaped "
            "planar domains";
  m.def("version", &version);

  // ------------------------------------------------------------ domain
  py::class_<StarDomain>(m, "StarDomain")
      .def_static("disk", &StarDomain::disk, py::arg("R"),
                  py::arg("center") = Eigen::Vector2d(0.0, 0.0))
      .def_static("ellipse", &StarDomain::ellipse, py::arg("a"),
                  py::arg("b"), py::arg("center") = Eigen::Vector2d(0.0, 0.0))
      .def_static("fourier", &StarDomain::fourier, py::arg("c0"),
                  py::arg("cos_coeffs"),
                  py::arg("sin_coeffs") = std::vector<double>{},
                  py::arg("center") = Eigen::Vector2d(0.0, 0.0))
      .def("rho", &StarDomain::rho)
      .def("describe", &StarDomain::describe)
      .def_property_readonly("center", &StarDomain::center)
      .def("__repr__", [](const StarDomain& d) {
        return "<StarDomain " + d.describe() + ">";
      });

  py::class_<PolarGrid, std::shared_ptr<PolarGrid>>(m, "PolarGrid")
      .def(py::init([](const StarDomain& dom, int n_r, int n_phi) {
             return std::make_shared<PolarGrid>(dom, n_r, n_phi);
           }),
           py::arg("domain"), py::arg("n_r"), py::arg("n_phi"))
      .def_property_readonly("n_r", &PolarGrid::n_r)
      .def_property_readonly("n_phi", &PolarGrid::n_phi)
      .def_property_readonly("size", &PolarGrid::size)
      .def("dof", &PolarGrid::dof, py::arg("i"), py::arg("j"))
      .def_property_readonly("domain", &PolarGrid::domain,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("s", &PolarGrid::s,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("phi", &PolarGrid::phi,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("x1", &PolarGrid::x1,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("x2", &PolarGrid::x2,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("quad_weights", &PolarGrid::quad_weights,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("boundary_weights", &PolarGrid::boundary_weights,
                             py::return_value_policy::reference_internal)
      .def("integrate", &PolarGrid::integrate, py::arg("nodal"))
      .def("integrate_boundary", &PolarGrid::integrate_boundary,
           py::arg("per_angle"))
      .def("boundary_values", &PolarGrid::boundary_values, py::arg("nodal"))
      .def_property_readonly("first_boundary_dof",
                             &PolarGrid::first_boundary_dof);

  py::class_<BoundaryGeometry>(m, "BoundaryGeometry")
      .def_readonly("kappa", &BoundaryGeometry::kappa)
      .def_readonly("nu_x", &BoundaryGeometry::nu_x)
      .def_readonly("nu_y", &BoundaryGeometry::nu_y)
      .def_readonly("arclen", &BoundaryGeometry::arclen);
  m.def("boundary_geometry", &boundary_geometry, py::arg("domain"),
        py::arg("n_phi"));

  py::class_<ReferenceConstants>(m, "ReferenceConstants")
      .def_readonly("area", &ReferenceConstants::area)
      .def_readonly("perimeter", &ReferenceConstants::perimeter)
      .def_readonly("R0", &ReferenceConstants::R0)
      .def_readonly("H0", &ReferenceConstants::H0);
  m.def("reference_constants", &reference_constants, py::arg("grid"));

  // ----------------------------------------------------------- symfunc
  m.def("binomial", &binomial, py::arg("n"), py::arg("k"));
  m.def("elem_sym_values", &elem_sym_values, py::arg("lambda_"));
  m.def("elem_sym_matrix_values", &elem_sym_matrix_values, py::arg("A"));
  m.def("elem_sym_matrix", &elem_sym_matrix, py::arg("A"), py::arg("k"));
  m.def("newton_tensor", &newton_tensor, py::arg("A"), py::arg("k"));
  m.def("newton_maclaurin_margin", &newton_maclaurin_margin,
        py::arg("lambda_"), py::arg("k"), py::arg("l"), py::arg("r"),
        py::arg("s"));
  m.def("quotient_derivative", &quotient_derivative, py::arg("A"),
        py::arg("k"), py::arg("l"));

  py::class_<GardingFlags>(m, "GardingFlags")
      .def_readonly("k_max", &GardingFlags::k_max)
      .def_readonly("values", &GardingFlags::values);
  m.def("garding_membership", &garding_membership, py::arg("lambda_"));

  py::class_<PinchingMargins>(m, "PinchingMargins")
      .def_readonly("around_k_low", &PinchingMargins::around_k_low)
      .def_readonly("around_l_high", &PinchingMargins::around_l_high)
      .def_readonly("around_k_high", &PinchingMargins::around_k_high)
      .def_readonly("around_l_low", &PinchingMargins::around_l_low)
      .def_readonly("t", &PinchingMargins::t);
  m.def("pinching_margins", &pinching_margins, py::arg("A"), py::arg("k"),
        py::arg("l"));

  // ---------------------------------------------------------- graphgeom
  m.def("minkowski_inner", &minkowski_inner, py::arg("x"), py::arg("y"));

  py::class_<GraphSurface>(m, "GraphSurface")
      .def_static(
          "from_samples",
          [](std::shared_ptr<PolarGrid> grid, const Eigen::ArrayXd& u) {
            return GraphSurface::from_samples(std::move(grid), u);
          },
          py::arg("grid"), py::arg("u"))
      .def_property_readonly("grid",
                             [](const GraphSurface& s) -> const PolarGrid& {
                               return *s.grid;
                             },
                             py::return_value_policy::reference_internal)
      .def_property_readonly("source", [](const GraphSurface& s) {
        return source_name(s.source);
      })
      .def_readonly("u", &GraphSurface::u)
      .def_readonly("ux", &GraphSurface::ux)
      .def_readonly("uy", &GraphSurface::uy)
      .def_readonly("uxx", &GraphSurface::uxx)
      .def_readonly("uxy", &GraphSurface::uxy)
      .def_readonly("uyy", &GraphSurface::uyy)
      .def_readonly("w", &GraphSurface::w)
      .def_readonly("spacelike", &GraphSurface::spacelike)
      .def_readonly("min_w", &GraphSurface::min_w)
      .def_readonly("cap_theta0", &GraphSurface::cap_theta0);

  m.def(
      "hyperboloid_cap",
      [](double c, double theta0, std::shared_ptr<PolarGrid> grid) {
        return hyperboloid_cap(c, theta0, std::move(grid));
      },
      py::arg("c"), py::arg("theta0"), py::arg("grid"));
  m.def(
      "flat_surface",
      [](double c, std::shared_ptr<PolarGrid> grid) {
        return flat_surface(c, std::move(grid));
      },
      py::arg("c"), py::arg("grid"));

  py::class_<CurvatureField>(m, "CurvatureField")
      .def_readonly("g11", &CurvatureField::g11)
      .def_readonly("g12", &CurvatureField::g12)
      .def_readonly("g22", &CurvatureField::g22)
      .def_readonly("gi11", &CurvatureField::gi11)
      .def_readonly("gi12", &CurvatureField::gi12)
      .def_readonly("gi22", &CurvatureField::gi22)
      .def_readonly("a11", &CurvatureField::a11)
      .def_readonly("a12", &CurvatureField::a12)
      .def_readonly("a21", &CurvatureField::a21)
      .def_readonly("a22", &CurvatureField::a22)
      .def_readonly("lambda1", &CurvatureField::lambda1)
      .def_readonly("lambda2", &CurvatureField::lambda2)
      .def_readonly("S1", &CurvatureField::S1)
      .def_readonly("S2", &CurvatureField::S2)
      .def_readonly("hbar2", &CurvatureField::hbar2);
  m.def("curvature_field", &curvature_field, py::arg("surface"));
  m.def("trace_free_identity_check", &trace_free_identity_check,
        py::arg("field"));

  py::class_<PFieldGraph>(m, "PFieldGraph")
      .def_readonly("P", &PFieldGraph::P)
      .def_readonly("Px", &PFieldGraph::Px)
      .def_readonly("Py", &PFieldGraph::Py)
      .def_readonly("gnorm2", &PFieldGraph::gnorm2)
      .def_readonly("enorm2", &PFieldGraph::enorm2);
  m.def("p_field_graph", &p_field_graph, py::arg("surface"));

  py::class_<PFieldConvex>(m, "PFieldConvex")
      .def_readonly("phi_sq", &PFieldConvex::phi_sq)
      .def_readonly("phi_dot_e", &PFieldConvex::phi_dot_e)
      .def_readonly("P", &PFieldConvex::P)
      .def_readonly("upper_timelike", &PFieldConvex::upper_timelike);
  m.def("p_field_convex", &p_field_convex, py::arg("surface"));

  py::class_<GammaReport>(m, "GammaReport")
      .def_readonly("per_node", &GammaReport::per_node)
      .def_readonly("all", &GammaReport::all);
  m.def("gamma_k_report", &gamma_k_report, py::arg("field"), py::arg("k"));

  m.def(
      "dump_surface",
      [](const GraphSurface& surf, const CurvatureField& cf,
         const PFieldGraph& pf, double c,
         const std::vector<std::string>& extra_header) {
        std::ostringstream os;
        dump_surface(os, surf, cf, pf, c, extra_header);
        return os.str();
      },
      py::arg("surface"), py::arg("field"), py::arg("p_field"), py::arg("c"),
      py::arg("extra_header") = std::vector<std::string>{});

  py::class_<LoadedSurface>(m, "LoadedSurface")
      .def_readonly("surf", &LoadedSurface::surf)
      .def_readonly("c", &LoadedSurface::c);
  m.def(
      "load_surface",
      [](const std::string& text) {
        std::istringstream is(text);
        return load_surface(is);
      },
      py::arg("text"));

  // ------------------------------------------------------------ solver
  py::class_<SolverConfig> solver_config(m, "SolverConfig");
  solver_config.def(py::init<>())
      .def_readwrite("rhs", &SolverConfig::rhs)
      .def_readwrite("c", &SolverConfig::c)
      .def_readwrite("max_newton_iters", &SolverConfig::max_newton_iters)
      .def_readwrite("residual_tol", &SolverConfig::residual_tol)
      .def_readwrite("damping", &SolverConfig::damping)
      .def_readwrite("custom_u0", &SolverConfig::custom_u0)
      .def_property(
          "guess",
          [](const SolverConfig& cfg) {
            switch (cfg.guess) {
              case SolverConfig::Guess::flat:
                return "flat";
              case SolverConfig::Guess::scaled_cap:
                return "scaled_cap";
              case SolverConfig::Guess::custom:
                return "custom";
            }
            return "flat";
          },
          [](SolverConfig& cfg, const std::string& name) {
            if (name == "flat")
              cfg.guess = SolverConfig::Guess::flat;
            else if (name == "scaled_cap")
              cfg.guess = SolverConfig::Guess::scaled_cap;
            else if (name == "custom")
              cfg.guess = SolverConfig::Guess::custom;
            else
              throw std::invalid_argument("guess must be flat, scaled_cap, "
                                          "or custom");
          });

  py::class_<SolveReport>(m, "SolveReport")
      .def_property_readonly("status", [](const SolveReport& rep) {
        return status_name(rep.status);
      })
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("final_residual", &SolveReport::final_residual)
      .def_readonly("damping_events", &SolveReport::damping_events)
      .def_readonly("min_w", &SolveReport::min_w)
      .def_readonly("residual_history", &SolveReport::residual_history)
      .def_readonly("message", &SolveReport::message)
      .def_readonly("surface", &SolveReport::surface);

  m.def(
      "newton_solve",
      [](std::shared_ptr<PolarGrid> grid, const SolverConfig& cfg) {
        return newton_solve(std::move(grid), cfg);
      },
      py::arg("grid"), py::arg("config") = SolverConfig{});
  m.def("cmc_residual", &cmc_residual, py::arg("surface"), py::arg("rhs"));
  m.def("radial_exact", &radial_exact, py::arg("grid"), py::arg("c"),
        py::arg("rhs") = 2.0);

  // -------------------------------------------------------- identities
  py::enum_<GradFlag>(m, "GradFlag")
      .value("euclidean", GradFlag::euclidean)
      .value("g_metric", GradFlag::g_metric);

  py::class_<IdentityReport>(m, "IdentityReport")
      .def_readonly("id", &IdentityReport::id)
      .def_readonly("terms", &IdentityReport::terms)
      .def_readonly("residual", &IdentityReport::residual)
      .def_readonly("scale", &IdentityReport::scale)
      .def_readonly("rel_residual", &IdentityReport::rel_residual)
      .def_readonly("flag", &IdentityReport::flag)
      .def_readonly("valid", &IdentityReport::valid)
      .def_readonly("note", &IdentityReport::note)
      .def_readonly("n_r", &IdentityReport::n_r)
      .def_readonly("n_phi", &IdentityReport::n_phi)
      .def("term", &IdentityReport::term, py::arg("name"))
      .def("has_term", &IdentityReport::has_term, py::arg("name"))
      .def("__repr__", [](const IdentityReport& rep) {
        std::ostringstream os;
        os << "<IdentityReport " << rep.id << " residual=" << rep.residual
           << " rel=" << rep.rel_residual << (rep.valid ? "" : " invalid")
           << ">";
        return os.str();
      });

  m.def("eval_fundamental", &eval_fundamental, py::arg("surface"),
        py::arg("field"), py::arg("p_field"), py::arg("c"),
        py::arg("flag") = GradFlag::g_metric);
  m.def("eval_soap_bubble", &eval_soap_bubble, py::arg("surface"),
        py::arg("field"), py::arg("p_field"), py::arg("c"),
        py::arg("flag") = GradFlag::g_metric);
  m.def("eval_heintze_karcher", &eval_heintze_karcher, py::arg("surface"),
        py::arg("field"), py::arg("p_field"), py::arg("c"),
        py::arg("flag") = GradFlag::g_metric);
  m.def("eval_hk_deficit", &eval_hk_deficit, py::arg("grid"));
  m.def("eval_cap_balance", &eval_cap_balance, py::arg("surface"),
        py::arg("field"), py::arg("c"), py::arg("k"), py::arg("l"));

  py::class_<MQValues>(m, "MQValues")
      .def_readonly("M", &MQValues::M)
      .def_readonly("Q", &MQValues::Q);
  m.def("cap_balance_pointwise", &cap_balance_pointwise, py::arg("n"),
        py::arg("k"), py::arg("l"), py::arg("s_values"));

  py::class_<EllipticityReport>(m, "EllipticityReport")
      .def_readonly("min_value", &EllipticityReport::min_value)
      .def_readonly("quotient_ok", &EllipticityReport::quotient_ok)
      .def_readonly("per_node", &EllipticityReport::per_node);
  m.def("pointwise_ellipticity", &pointwise_ellipticity, py::arg("surface"),
        py::arg("field"), py::arg("k"), py::arg("l"));

  m.def("gauss_map_identity", &gauss_map_identity, py::arg("A"));

  // --------------------------------------------------------- stability
  py::class_<StabilityReport>(m, "StabilityReport")
      .def_readonly("hbar_L2", &StabilityReport::hbar_L2)
      .def_readonly("deficit_L1", &StabilityReport::deficit_L1)
      .def_readonly("deficit_inf", &StabilityReport::deficit_inf)
      .def_readonly("hk_deficit", &StabilityReport::hk_deficit)
      .def_readonly("tilt_max", &StabilityReport::tilt_max)
      .def_readonly("gradient_gap", &StabilityReport::gradient_gap)
      .def_readonly("min_boundary_curvature",
                    &StabilityReport::min_boundary_curvature)
      .def_readonly("mean_convex", &StabilityReport::mean_convex)
      .def_readonly("bound_tilt", &StabilityReport::bound_tilt)
      .def_readonly("margin_tilt", &StabilityReport::margin_tilt)
      .def_readonly("bound_deficit", &StabilityReport::bound_deficit)
      .def_readonly("margin_deficit", &StabilityReport::margin_deficit)
      .def_readonly("bound_deficit_alt", &StabilityReport::bound_deficit_alt)
      .def_readonly("margin_deficit_alt",
                    &StabilityReport::margin_deficit_alt)
      .def_readonly("bound_gradient", &StabilityReport::bound_gradient)
      .def_readonly("margin_gradient", &StabilityReport::margin_gradient)
      .def_readonly("bound_sup", &StabilityReport::bound_sup)
      .def_readonly("margin_sup", &StabilityReport::margin_sup)
      .def_readonly("id_residual", &StabilityReport::id_residual)
      .def_readonly("converged", &StabilityReport::converged)
      .def_readonly("ref", &StabilityReport::ref);
  m.def("stability_report", &stability_report, py::arg("surface"),
        py::arg("field"), py::arg("p_field"), py::arg("c"));

  py::class_<SweepMember>(m, "SweepMember")
      .def(py::init<>())
      .def_readwrite("family_param", &SweepMember::family_param)
      .def_readwrite("domain", &SweepMember::domain);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("family_param", &SweepRow::family_param)
      .def_readonly("rep", &SweepRow::rep);
  m.def("domain_sweep", &domain_sweep, py::arg("members"), py::arg("n_r"),
        py::arg("n_phi"), py::arg("config"));
  m.def("sweep_csv", &sweep_csv, py::arg("rows"));
}
