#include "minklab/domain.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace minklab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

StarDomain StarDomain::disk(double R, Eigen::Vector2d center) {
  if (!(R > 0.0)) throw std::invalid_argument("disk: radius must be positive");
  StarDomain d;
  d.kind_ = Kind::disk;
  d.a_ = d.b_ = R;
  d.center_ = std::move(center);
  return d;
}

StarDomain StarDomain::ellipse(double a, double b, Eigen::Vector2d center) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("ellipse: semi-axes must be positive");
  StarDomain d;
  d.kind_ = Kind::ellipse;
  d.a_ = a;
  d.b_ = b;
  d.center_ = std::move(center);
  return d;
}

StarDomain StarDomain::fourier(double c0, std::vector<double> cos_coeffs,
                               std::vector<double> sin_coeffs,
                               Eigen::Vector2d center) {
  StarDomain d;
  d.kind_ = Kind::fourier;
  d.a_ = c0;
  d.cos_ = std::move(cos_coeffs);
  d.sin_ = std::move(sin_coeffs);
  d.center_ = std::move(center);
  for (int j = 0; j < 4096; ++j)
    if (!(d.rho(j * kTwoPi / 4096) > 0.0))
      throw std::invalid_argument("fourier: rho must stay positive");
  return d;
}

double StarDomain::rho(double phi) const {
  switch (kind_) {
    case Kind::disk:
      return a_;
    case Kind::ellipse: {
      const double c = std::cos(phi), s = std::sin(phi);
      return a_ * b_ / std::sqrt(b_ * b_ * c * c + a_ * a_ * s * s);
    }
    case Kind::fourier: {
      double r = a_;
      for (size_t m = 0; m < cos_.size(); ++m)
        r += cos_[m] * std::cos((m + 1) * phi);
      for (size_t m = 0; m < sin_.size(); ++m)
        r += sin_[m] * std::sin((m + 1) * phi);
      return r;
    }
  }
  return a_;
}

double StarDomain::drho(double phi) const {
  switch (kind_) {
    case Kind::disk:
      return 0.0;
    case Kind::ellipse: {
      const double c = std::cos(phi), s = std::sin(phi);
      const double D = b_ * b_ * c * c + a_ * a_ * s * s;
      const double Dp = (a_ * a_ - b_ * b_) * std::sin(2 * phi);
      return -0.5 * a_ * b_ * Dp / (D * std::sqrt(D));
    }
    case Kind::fourier: {
      double r = 0.0;
      for (size_t m = 0; m < cos_.size(); ++m)
        r -= cos_[m] * (m + 1) * std::sin((m + 1) * phi);
      for (size_t m = 0; m < sin_.size(); ++m)
        r += sin_[m] * (m + 1) * std::cos((m + 1) * phi);
      return r;
    }
  }
  return 0.0;
}

double StarDomain::ddrho(double phi) const {
  switch (kind_) {
    case Kind::disk:
      return 0.0;
    case Kind::ellipse: {
      const double c = std::cos(phi), s = std::sin(phi);
      const double D = b_ * b_ * c * c + a_ * a_ * s * s;
      const double Dp = (a_ * a_ - b_ * b_) * std::sin(2 * phi);
      const double Dpp = 2 * (a_ * a_ - b_ * b_) * std::cos(2 * phi);
      return a_ * b_ *
             (0.75 * Dp * Dp / (D * D * std::sqrt(D)) -
              0.5 * Dpp / (D * std::sqrt(D)));
    }
    case Kind::fourier: {
      double r = 0.0;
      for (size_t m = 0; m < cos_.size(); ++m)
        r -= cos_[m] * (m + 1) * (m + 1) * std::cos((m + 1) * phi);
      for (size_t m = 0; m < sin_.size(); ++m)
        r -= sin_[m] * (m + 1) * (m + 1) * std::sin((m + 1) * phi);
      return r;
    }
  }
  return 0.0;
}

std::string StarDomain::describe() const {
  switch (kind_) {
    case Kind::disk:
      return "disk(R=" + std::to_string(a_) + ")";
    case Kind::ellipse:
      return "ellipse(a=" + std::to_string(a_) + ",b=" + std::to_string(b_) +
             ")";
    case Kind::fourier: {
      std::string s = "fourier(c0=" + std::to_string(a_);
      for (double c : cos_) s += ",cos=" + std::to_string(c);
      for (double c : sin_) s += ",sin=" + std::to_string(c);
      return s + ")";
    }
  }
  return "?";
}

namespace {

// A linear combination of nodal values, keyed by (ring, angle).
using Stencil = std::map<std::pair<int, int>, double>;

void axpy(Stencil& dst, const Stencil& src, double c) {
  for (const auto& [key, v] : src) dst[key] += c * v;
}

DiffOps build_ops(const PolarGrid& g) {
  const int nr = g.n_r(), nphi = g.n_phi(), N = g.size();
  const double ds = g.ds(), dphi = g.dphi();
  const Eigen::ArrayXd& rho = g.rho_nodes();
  const Eigen::ArrayXd& drho = g.drho_nodes();
  const Eigen::ArrayXd& ddrho = g.ddrho_nodes();

  enum { GX, GY, HXX, HXY, HYY, NOPS };
  std::array<std::vector<Eigen::Triplet<double>>, NOPS> trip;
  for (auto& t : trip) t.reserve(16 * N);
  auto add = [&](int op, int row, int i, int j, double v) {
    trip[op].emplace_back(row, g.dof(i, j), v);
  };

  // Center row: least-squares fit of gradient and Hessian over the
  // diameters through the center, using the nonuniform three-point
  // formulas on (-b, 0, a) with a = ds rho(phi_j), b = ds rho(phi_j+pi).
  const int J = nphi / 2;
  for (int j = 0; j < J; ++j) {
    const int jo = j + J;
    const double a = ds * rho[j], b = ds * rho[jo];
    const double den = a * b * (a + b);
    const double phij = g.dphi() * j;
    const double ca = std::cos(phij), sa = std::sin(phij);
    const double cd = 4.0 / nphi;
    // directional derivative d_j = [b^2 u+ - a^2 u- - (b^2-a^2) u0]/den
    for (auto [op, comp] : {std::pair{GX, ca}, {GY, sa}}) {
      add(op, 0, 1, j, cd * comp * b * b / den);
      add(op, 0, 1, jo, -cd * comp * a * a / den);
      add(op, 0, 0, 0, -cd * comp * (b * b - a * a) / den);
    }
    // second directional derivative q_j = 2[b u+ + a u- - (a+b) u0]/den;
    // H11 = A0 + Ac, H22 = A0 - Ac, H12 = As with A0 = mean q,
    // Ac = 2 mean(q cos 2phi), As = 2 mean(q sin 2phi) over the J diameters.
    const double c2 = std::cos(2 * phij), s2 = std::sin(2 * phij);
    const double w0 = 1.0 / J, wc = 2.0 * c2 / J, ws = 2.0 * s2 / J;
    for (auto [op, cw] :
         {std::pair{HXX, w0 + wc}, {HYY, w0 - wc}, {HXY, ws}}) {
      add(op, 0, 1, j, cw * 2 * b / den);
      add(op, 0, 1, jo, cw * 2 * a / den);
      add(op, 0, 0, 0, -cw * 2 * (a + b) / den);
    }
  }

  // Ring rows: central stencils in the mapped (s, phi) coordinates,
  // one-sided in s on the boundary ring, chain-ruled to Cartesian.
  for (int i = 1; i <= nr; ++i) {
    const double si = i * ds;
    for (int j = 0; j < nphi; ++j) {
      const int row = g.dof(i, j);
      const double rh = rho[j], dr = drho[j], ddr = ddrho[j];
      const double phij = dphi * j;
      const double ca = std::cos(phij), sa = std::sin(phij);
      const Eigen::Vector2d er(ca, sa), ep(-sa, ca);

      Eigen::Matrix2d F;
      F.col(0) = rh * er;                     // dx/ds
      F.col(1) = si * dr * er + si * rh * ep; // dx/dphi
      const Eigen::Matrix2d Fi = F.inverse();
      const Eigen::Vector2d Css = Eigen::Vector2d::Zero();
      const Eigen::Vector2d Csp = dr * er + rh * ep;
      const Eigen::Vector2d Cpp = si * (ddr - rh) * er + 2 * si * dr * ep;

      Stencil Ss, Sp, Sss, Spp, Ssp;
      if (i < nr) {
        Ss = {{{i + 1, j}, 0.5 / ds}, {{i - 1, j}, -0.5 / ds}};
        Sss = {{{i + 1, j}, 1 / (ds * ds)},
               {{i, j}, -2 / (ds * ds)},
               {{i - 1, j}, 1 / (ds * ds)}};
        for (auto [di, dj, v] : {std::tuple{1, 1, 1.0},
                                 {1, -1, -1.0},
                                 {-1, 1, -1.0},
                                 {-1, -1, 1.0}})
          Ssp[{i + di, j + dj}] += v / (4 * ds * dphi);
      } else {
        Ss = {{{i, j}, 1.5 / ds}, {{i - 1, j}, -2.0 / ds}, {{i - 2, j}, 0.5 / ds}};
        Sss = {{{i, j}, 2 / (ds * ds)},
               {{i - 1, j}, -5 / (ds * ds)},
               {{i - 2, j}, 4 / (ds * ds)},
               {{i - 3, j}, -1 / (ds * ds)}};
        for (auto [ii, cs] : {std::pair{i, 1.5 / ds},
                              {i - 1, -2.0 / ds},
                              {i - 2, 0.5 / ds}}) {
          Ssp[{ii, j + 1}] += cs * 0.5 / dphi;
          Ssp[{ii, j - 1}] -= cs * 0.5 / dphi;
        }
      }
      Sp = {{{i, j + 1}, 0.5 / dphi}, {{i, j - 1}, -0.5 / dphi}};
      Spp = {{{i, j + 1}, 1 / (dphi * dphi)},
             {{i, j}, -2 / (dphi * dphi)},
             {{i, j - 1}, 1 / (dphi * dphi)}};

      // Gradient: grad_x u = Fi^T (u_s, u_phi).
      for (const auto& [key, v] : Ss) {
        add(GX, row, key.first, key.second, Fi(0, 0) * v);
        add(GY, row, key.first, key.second, Fi(0, 1) * v);
      }
      for (const auto& [key, v] : Sp) {
        add(GX, row, key.first, key.second, Fi(1, 0) * v);
        add(GY, row, key.first, key.second, Fi(1, 1) * v);
      }

      // Hessian: H_x = Fi^T (H_c - sum_k (grad u)_k C_k) Fi where C_k
      // collects the second derivatives of the coordinate map.
      const int targets[3][3] = {{0, 0, HXX}, {0, 1, HXY}, {1, 1, HYY}};
      for (const auto& t : targets) {
        const int p = t[0], q = t[1], op = t[2];
        Stencil st;
        axpy(st, Sss, Fi(0, p) * Fi(0, q));
        axpy(st, Ssp, Fi(0, p) * Fi(1, q) + Fi(1, p) * Fi(0, q));
        axpy(st, Spp, Fi(1, p) * Fi(1, q));
        for (int k = 0; k < 2; ++k) {
          const double ck = Fi(0, p) * Csp[k] * Fi(1, q) +
                            Fi(1, p) * Csp[k] * Fi(0, q) +
                            Fi(1, p) * Cpp[k] * Fi(1, q) +
                            Fi(0, p) * Css[k] * Fi(0, q);
          axpy(st, Ss, -ck * Fi(0, k));
          axpy(st, Sp, -ck * Fi(1, k));
        }
        for (const auto& [key, v] : st)
          add(op, row, key.first, key.second, v);
      }
    }
  }

  DiffOps ops;
  Eigen::SparseMatrix<double>* mats[NOPS] = {&ops.gx, &ops.gy, &ops.hxx,
                                             &ops.hxy, &ops.hyy};
  for (int m = 0; m < NOPS; ++m) {
    mats[m]->resize(N, N);
    mats[m]->setFromTriplets(trip[m].begin(), trip[m].end());
    mats[m]->makeCompressed();
  }
  return ops;
}

}  // namespace

PolarGrid::PolarGrid(StarDomain dom, int n_r, int n_phi)
    : dom_(std::move(dom)), n_r_(n_r), n_phi_(n_phi) {
  if (n_r < 8) throw std::invalid_argument("PolarGrid: n_r must be >= 8");
  if (n_phi < 16 || n_phi % 2 != 0)
    throw std::invalid_argument("PolarGrid: n_phi must be even and >= 16");
  ds_ = 1.0 / n_r_;
  dphi_ = kTwoPi / n_phi_;

  rho_.resize(n_phi_);
  drho_.resize(n_phi_);
  ddrho_.resize(n_phi_);
  for (int j = 0; j < n_phi_; ++j) {
    const double p = j * dphi_;
    rho_[j] = dom_.rho(p);
    drho_[j] = dom_.drho(p);
    ddrho_[j] = dom_.ddrho(p);
  }

  const int N = size();
  s_.resize(N);
  phi_.resize(N);
  x1_.resize(N);
  x2_.resize(N);
  wq_.resize(N);
  s_[0] = 0.0;
  phi_[0] = 0.0;
  x1_[0] = dom_.center().x();
  x2_[0] = dom_.center().y();
  wq_[0] = 0.0;
  for (int i = 1; i <= n_r_; ++i) {
    const double si = i * ds_;
    const double ci = (i == n_r_) ? 0.5 : 1.0;
    for (int j = 0; j < n_phi_; ++j) {
      const int d = dof(i, j);
      s_[d] = si;
      phi_[d] = j * dphi_;
      x1_[d] = dom_.center().x() + si * rho_[j] * std::cos(phi_[d]);
      x2_[d] = dom_.center().y() + si * rho_[j] * std::sin(phi_[d]);
      wq_[d] = ci * ds_ * dphi_ * si * rho_[j] * rho_[j];
    }
  }
  wb_ = dphi_ * (rho_ * rho_ + drho_ * drho_).sqrt();

  ops_ = build_ops(*this);
}

double PolarGrid::integrate(const Eigen::ArrayXd& nodal) const {
  return (wq_ * nodal).sum();
}

double PolarGrid::integrate_boundary(const Eigen::ArrayXd& per_angle) const {
  return (wb_ * per_angle).sum();
}

Eigen::ArrayXd PolarGrid::boundary_values(const Eigen::ArrayXd& nodal) const {
  Eigen::ArrayXd out(n_phi_);
  for (int j = 0; j < n_phi_; ++j) out[j] = nodal[dof(n_r_, j)];
  return out;
}

BoundaryGeometry boundary_geometry(const StarDomain& dom, int n_phi) {
  BoundaryGeometry bg;
  bg.kappa.resize(n_phi);
  bg.nu_x.resize(n_phi);
  bg.nu_y.resize(n_phi);
  bg.arclen.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) {
    const double p = j * kTwoPi / n_phi;
    const double r = dom.rho(p), dr = dom.drho(p), ddr = dom.ddrho(p);
    const double sp2 = r * r + dr * dr;
    bg.kappa[j] = (r * r + 2 * dr * dr - r * ddr) / (sp2 * std::sqrt(sp2));
    // tangent t = rho' e_r + rho e_phi; outward normal = (t_y, -t_x)/|t|
    const double ca = std::cos(p), sa = std::sin(p);
    const double tx = dr * ca - r * sa;
    const double ty = dr * sa + r * ca;
    bg.nu_x[j] = ty / std::sqrt(sp2);
    bg.nu_y[j] = -tx / std::sqrt(sp2);
    bg.arclen[j] = std::sqrt(sp2);
  }
  return bg;
}

ReferenceConstants reference_constants(const PolarGrid& grid) {
  ReferenceConstants rc;
  rc.area = grid.quad_weights().sum();
  rc.perimeter = grid.boundary_weights().sum();
  rc.R0 = grid.domain().n_ambient() * rc.area / rc.perimeter;
  rc.H0 = 1.0 / rc.R0;
  return rc;
}

}  // namespace minklab
