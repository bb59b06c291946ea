#include "minklab/graphgeom.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "minklab/symfunc.hpp"

namespace minklab {

double minkowski_inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size() || x.size() < 1)
    throw std::invalid_argument("minkowski_inner: length mismatch");
  const auto m = x.size() - 1;
  return x.head(m).dot(y.head(m)) - x[m] * y[m];
}

Derivatives differentiate(const Eigen::ArrayXd& u, const PolarGrid& grid) {
  if (u.size() != grid.size())
    throw std::invalid_argument("differentiate: sample length mismatch");
  const DiffOps& o = grid.ops();
  Derivatives d;
  d.ux = o.gx * u.matrix();
  d.uy = o.gy * u.matrix();
  d.uxx = o.hxx * u.matrix();
  d.uxy = o.hxy * u.matrix();
  d.uyy = o.hyy * u.matrix();
  return d;
}

GraphSurface GraphSurface::from_samples(std::shared_ptr<const PolarGrid> grid,
                                        Eigen::ArrayXd u, Source source) {
  GraphSurface s;
  s.grid = std::move(grid);
  s.source = source;
  Derivatives d = differentiate(u, *s.grid);
  s.u = std::move(u);
  s.ux = std::move(d.ux);
  s.uy = std::move(d.uy);
  s.uxx = std::move(d.uxx);
  s.uxy = std::move(d.uxy);
  s.uyy = std::move(d.uyy);
  const Eigen::ArrayXd grad2 = s.ux.square() + s.uy.square();
  s.w = (1.0 - grad2).sqrt();
  const double gmax = std::sqrt(grad2.maxCoeff());
  s.spacelike = gmax <= 1.0 - eps_space;
  s.min_w = s.spacelike ? s.w.minCoeff() : 0.0;
  return s;
}

GraphSurface hyperboloid_cap(double c, double theta0,
                             std::shared_ptr<const PolarGrid> grid) {
  if (!(theta0 < -1.0))
    throw std::invalid_argument("hyperboloid_cap: theta0 must be < -1");
  const StarDomain& dom = grid->domain();
  const double R = std::sqrt(theta0 * theta0 - 1.0);
  if (dom.kind() != StarDomain::Kind::disk ||
      std::abs(dom.param_a() - R) > 1e-10)
    throw std::invalid_argument(
        "hyperboloid_cap: domain must be the disk of radius "
        "sqrt(theta0^2 - 1)");
  GraphSurface s;
  s.grid = std::move(grid);
  s.source = GraphSurface::Source::analytic_cap;
  s.cap_theta0 = theta0;
  const PolarGrid& g = *s.grid;
  const int N = g.size();
  s.u.resize(N);
  s.ux.resize(N);
  s.uy.resize(N);
  s.uxx.resize(N);
  s.uxy.resize(N);
  s.uyy.resize(N);
  s.w.resize(N);
  for (int d = 0; d < N; ++d) {
    const double dx = g.x1()[d] - dom.center().x();
    const double dy = g.x2()[d] - dom.center().y();
    const double q = std::sqrt(1.0 + dx * dx + dy * dy);
    s.u[d] = c + theta0 + q;
    s.ux[d] = dx / q;
    s.uy[d] = dy / q;
    s.uxx[d] = 1.0 / q - dx * dx / (q * q * q);
    s.uxy[d] = -dx * dy / (q * q * q);
    s.uyy[d] = 1.0 / q - dy * dy / (q * q * q);
    s.w[d] = 1.0 / q;
  }
  s.spacelike = true;
  s.min_w = s.w.minCoeff();
  return s;
}

GraphSurface flat_surface(double c, std::shared_ptr<const PolarGrid> grid) {
  GraphSurface s;
  s.grid = std::move(grid);
  s.source = GraphSurface::Source::analytic_flat;
  const int N = s.grid->size();
  s.u = Eigen::ArrayXd::Constant(N, c);
  s.ux = s.uy = s.uxx = s.uxy = s.uyy = Eigen::ArrayXd::Zero(N);
  s.w = Eigen::ArrayXd::Ones(N);
  s.spacelike = true;
  s.min_w = 1.0;
  return s;
}

CurvatureField curvature_field(const GraphSurface& surf) {
  if (!surf.spacelike)
    throw std::domain_error("curvature_field: surface is not space-like");
  const int N = surf.grid->size();
  CurvatureField cf;
  const Eigen::ArrayXd& ux = surf.ux;
  const Eigen::ArrayXd& uy = surf.uy;
  const Eigen::ArrayXd& w = surf.w;
  const Eigen::ArrayXd w2 = w.square();

  cf.g11 = 1.0 - ux.square();
  cf.g12 = -ux * uy;
  cf.g22 = 1.0 - uy.square();
  cf.gi11 = 1.0 + ux.square() / w2;
  cf.gi12 = ux * uy / w2;
  cf.gi22 = 1.0 + uy.square() / w2;

  const Eigen::ArrayXd h11 = surf.uxx / w;
  const Eigen::ArrayXd h12 = surf.uxy / w;
  const Eigen::ArrayXd h22 = surf.uyy / w;
  cf.a11 = cf.gi11 * h11 + cf.gi12 * h12;
  cf.a12 = cf.gi11 * h12 + cf.gi12 * h22;
  cf.a21 = cf.gi12 * h11 + cf.gi22 * h12;
  cf.a22 = cf.gi12 * h12 + cf.gi22 * h22;
  cf.S1 = cf.a11 + cf.a22;
  cf.S2 = cf.a11 * cf.a22 - cf.a12 * cf.a21;
  cf.hbar2 = cf.a11.square() + 2.0 * cf.a12 * cf.a21 + cf.a22.square() -
             0.5 * cf.S1.square();

  // Symmetric conjugation M = C h C, C = I + Du Du^T / (w (1 + w)),
  // which squares to the inverse metric; M is similar to A.
  cf.lambda1.resize(N);
  cf.lambda2.resize(N);
  for (int d = 0; d < N; ++d) {
    const double f = 1.0 / (w[d] * (1.0 + w[d]));
    const double c11 = 1.0 + ux[d] * ux[d] * f;
    const double c12 = ux[d] * uy[d] * f;
    const double c22 = 1.0 + uy[d] * uy[d] * f;
    // B = h C, M = C B
    const double b11 = h11[d] * c11 + h12[d] * c12;
    const double b12 = h11[d] * c12 + h12[d] * c22;
    const double b21 = h12[d] * c11 + h22[d] * c12;
    const double b22 = h12[d] * c12 + h22[d] * c22;
    const double m11 = c11 * b11 + c12 * b21;
    const double m12 = c11 * b12 + c12 * b22;
    const double m22 = c12 * b12 + c22 * b22;
    const double mean = 0.5 * (m11 + m22);
    const double disc = std::hypot(0.5 * (m11 - m22), m12);
    cf.lambda1[d] = mean - disc;
    cf.lambda2[d] = mean + disc;
  }
  return cf;
}

double trace_free_identity_check(const CurvatureField& cf) {
  return (cf.hbar2 - (0.5 * cf.S1.square() - 2.0 * cf.S2))
      .abs()
      .maxCoeff();
}

PFieldGraph p_field_graph(const GraphSurface& surf) {
  if (!surf.spacelike)
    throw std::domain_error("p_field_graph: surface is not space-like");
  PFieldGraph pf;
  const Eigen::ArrayXd w3 = surf.w * surf.w * surf.w;
  pf.P = -surf.u + 1.0 / surf.w;
  pf.Px = -surf.ux + (surf.uxx * surf.ux + surf.uxy * surf.uy) / w3;
  pf.Py = -surf.uy + (surf.uxy * surf.ux + surf.uyy * surf.uy) / w3;
  pf.enorm2 = pf.Px.square() + pf.Py.square();
  pf.gnorm2 = pf.enorm2 +
              (surf.ux * pf.Px + surf.uy * pf.Py).square() / surf.w.square();
  return pf;
}

PFieldConvex p_field_convex(const GraphSurface& surf) {
  PFieldConvex pc;
  const PolarGrid& g = *surf.grid;
  const Eigen::ArrayXd r2 = g.x1().square() + g.x2().square();
  pc.phi_sq = r2 - surf.u.square();
  pc.phi_dot_e =
      (g.x1() * surf.ux + g.x2() * surf.uy - surf.u) / surf.w;
  pc.P = 0.5 * pc.phi_sq - pc.phi_dot_e;
  pc.upper_timelike = pc.phi_dot_e < 0.0;
  return pc;
}

GammaReport gamma_k_report(const CurvatureField& cf, int k) {
  if (k < 1 || k > 2)
    throw std::invalid_argument("gamma_k_report: k outside [1, 2]");
  GammaReport rep;
  const int N = static_cast<int>(cf.S1.size());
  rep.per_node.resize(N);
  for (int d = 0; d < N; ++d) {
    Eigen::Vector2d lam(cf.lambda1[d], cf.lambda2[d]);
    rep.per_node[d] = garding_membership(lam).k_max >= k;
  }
  rep.all = rep.per_node.all();
  return rep;
}

namespace {

std::string source_name(GraphSurface::Source s) {
  switch (s) {
    case GraphSurface::Source::analytic_cap:
      return "analytic_cap";
    case GraphSurface::Source::analytic_flat:
      return "analytic_flat";
    case GraphSurface::Source::solved:
      return "solved";
    case GraphSurface::Source::sampled:
      return "sampled";
  }
  return "sampled";
}

}  // namespace

void dump_surface(std::ostream& os, const GraphSurface& surf,
                  const CurvatureField& cf, const PFieldGraph& pf, double c,
                  const std::vector<std::string>& extra_header) {
  const PolarGrid& g = *surf.grid;
  const StarDomain& dom = g.domain();
  os.precision(17);
  os << "# surface dump\n";
  for (const std::string& line : extra_header) os << "# " << line << "\n";
  os << "# domain_kind=";
  switch (dom.kind()) {
    case StarDomain::Kind::disk:
      os << "disk R=" << dom.param_a();
      break;
    case StarDomain::Kind::ellipse:
      os << "ellipse a=" << dom.param_a() << " b=" << dom.param_b();
      break;
    case StarDomain::Kind::fourier: {
      os << "fourier c0=" << dom.param_a();
      for (double v : dom.cos_coeffs()) os << " cos=" << v;
      for (double v : dom.sin_coeffs()) os << " sin=" << v;
      break;
    }
  }
  os << " cx=" << dom.center().x() << " cy=" << dom.center().y() << "\n";
  os << "# grid=" << g.n_r() << "x" << g.n_phi() << "\n";
  os << "# source=" << source_name(surf.source);
  if (surf.source == GraphSurface::Source::analytic_cap)
    os << " theta0=" << surf.cap_theta0;
  os << "\n";
  os << "# c=" << c << "\n";
  os << "s,phi,x1,x2,u,u_x1,u_x2,w,lambda1,lambda2,S1,S2,P\n";
  for (int d = 0; d < g.size(); ++d) {
    os << g.s()[d] << "," << g.phi()[d] << "," << g.x1()[d] << ","
       << g.x2()[d] << "," << surf.u[d] << "," << surf.ux[d] << ","
       << surf.uy[d] << "," << surf.w[d] << "," << cf.lambda1[d] << ","
       << cf.lambda2[d] << "," << cf.S1[d] << "," << cf.S2[d] << ","
       << pf.P[d] << "\n";
  }
}

LoadedSurface load_surface(std::istream& is) {
  std::map<std::string, std::string> meta;
  std::vector<double> u_col;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        auto key_start = line.find_first_not_of("# ");
        std::string key = line.substr(key_start, eq - key_start);
        if (key.find(' ') == std::string::npos)
          meta[key] = line.substr(eq + 1);
      }
      continue;
    }
    if (!header_seen && line.rfind("s,phi", 0) == 0) {
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != 13)
      throw std::runtime_error("load_surface: malformed data row");
    u_col.push_back(row[4]);
  }
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = meta.find(k);
    if (it == meta.end())
      throw std::runtime_error("load_surface: missing header key " + k);
    return it->second;
  };

  // Rebuild the domain.
  std::stringstream ds(need("domain_kind"));
  std::string kind;
  ds >> kind;
  std::map<std::string, double> dp;
  std::vector<double> cosc, sinc;
  std::string tok;
  while (ds >> tok) {
    const auto eq = tok.find('=');
    const std::string k = tok.substr(0, eq);
    const double v = std::stod(tok.substr(eq + 1));
    if (k == "cos")
      cosc.push_back(v);
    else if (k == "sin")
      sinc.push_back(v);
    else
      dp[k] = v;
  }
  const Eigen::Vector2d center(dp.count("cx") ? dp["cx"] : 0.0,
                               dp.count("cy") ? dp["cy"] : 0.0);
  StarDomain dom = StarDomain::disk(1.0);
  if (kind == "disk")
    dom = StarDomain::disk(dp.at("R"), center);
  else if (kind == "ellipse")
    dom = StarDomain::ellipse(dp.at("a"), dp.at("b"), center);
  else if (kind == "fourier")
    dom = StarDomain::fourier(dp.at("c0"), cosc, sinc, center);
  else
    throw std::runtime_error("load_surface: unknown domain kind " + kind);

  int n_r = 0, n_phi = 0;
  {
    std::stringstream gs(need("grid"));
    char x;
    gs >> n_r >> x >> n_phi;
  }
  auto grid = std::make_shared<const PolarGrid>(dom, n_r, n_phi);
  if (static_cast<int>(u_col.size()) != grid->size())
    throw std::runtime_error("load_surface: node count mismatch");

  LoadedSurface out;
  out.c = std::stod(need("c"));
  std::stringstream ss(need("source"));
  std::string src;
  ss >> src;
  if (src == "analytic_cap") {
    double theta0 = 0.0;
    std::string t;
    while (ss >> t)
      if (t.rfind("theta0=", 0) == 0) theta0 = std::stod(t.substr(7));
    out.surf = hyperboloid_cap(out.c, theta0, grid);
  } else if (src == "analytic_flat") {
    out.surf = flat_surface(out.c, grid);
  } else {
    Eigen::ArrayXd u = Eigen::Map<Eigen::ArrayXd>(u_col.data(), u_col.size());
    out.surf = GraphSurface::from_samples(
        grid, u,
        src == "solved" ? GraphSurface::Source::solved
                        : GraphSurface::Source::sampled);
  }
  return out;
}

}  // namespace minklab
