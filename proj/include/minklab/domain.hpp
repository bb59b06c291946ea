#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

namespace minklab {

/// Star-shaped planar domain described by a positive 2-pi-periodic
/// boundary radius rho(phi) about a center, with closed-form first and
/// second derivatives for the three presets.
class StarDomain {
 public:
  enum class Kind { disk, ellipse, fourier };

  static StarDomain disk(double R, Eigen::Vector2d center = {0.0, 0.0});
  static StarDomain ellipse(double a, double b,
                            Eigen::Vector2d center = {0.0, 0.0});
  /// rho = c0 + sum_m (cos_coeffs[m-1] cos(m phi) + sin_coeffs[m-1] sin(m phi)).
  static StarDomain fourier(double c0, std::vector<double> cos_coeffs,
                            std::vector<double> sin_coeffs = {},
                            Eigen::Vector2d center = {0.0, 0.0});

  double rho(double phi) const;
  double drho(double phi) const;
  double ddrho(double phi) const;

  Kind kind() const { return kind_; }
  const Eigen::Vector2d& center() const { return center_; }
  int n_ambient() const { return n_ambient_; }

  /// Disk radius / ellipse semi-axes, for dumps and config echoes.
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  std::string describe() const;

 private:
  StarDomain() = default;
  Kind kind_ = Kind::disk;
  Eigen::Vector2d center_{0.0, 0.0};
  int n_ambient_ = 2;
  double a_ = 1.0;  // disk R or ellipse a or fourier c0
  double b_ = 1.0;
  std::vector<double> cos_, sin_;
};

/// Sparse first- and second-derivative operators in Cartesian
/// coordinates, acting on nodal vectors of a PolarGrid.
struct DiffOps {
  Eigen::SparseMatrix<double> gx, gy, hxx, hxy, hyy;
};

/// Mapped polar grid on a StarDomain.  Node (i, j) sits at
/// x = center + s_i rho(phi_j) (cos phi_j, sin phi_j) with s_i = i/n_r;
/// the center appears once in the unknown vector (index 0) and ring
/// i >= 1, angle j maps to index 1 + (i-1) n_phi + j.
class PolarGrid {
 public:
  PolarGrid(StarDomain dom, int n_r, int n_phi);

  int n_r() const { return n_r_; }
  int n_phi() const { return n_phi_; }
  int size() const { return 1 + n_r_ * n_phi_; }
  int dof(int i, int j) const {
    if (i == 0) return 0;
    j %= n_phi_;
    if (j < 0) j += n_phi_;
    return 1 + (i - 1) * n_phi_ + j;
  }
  const StarDomain& domain() const { return dom_; }
  const DiffOps& ops() const { return ops_; }

  double ds() const { return ds_; }
  double dphi() const { return dphi_; }

  /// Per-node coordinates and interior quadrature weights (length size()).
  const Eigen::ArrayXd& s() const { return s_; }
  const Eigen::ArrayXd& phi() const { return phi_; }
  const Eigen::ArrayXd& x1() const { return x1_; }
  const Eigen::ArrayXd& x2() const { return x2_; }
  const Eigen::ArrayXd& quad_weights() const { return wq_; }
  /// Boundary quadrature weights per angle (length n_phi).
  const Eigen::ArrayXd& boundary_weights() const { return wb_; }

  /// rho and derivatives sampled at the angular nodes (length n_phi).
  const Eigen::ArrayXd& rho_nodes() const { return rho_; }
  const Eigen::ArrayXd& drho_nodes() const { return drho_; }
  const Eigen::ArrayXd& ddrho_nodes() const { return ddrho_; }

  double integrate(const Eigen::ArrayXd& nodal) const;
  double integrate_boundary(const Eigen::ArrayXd& per_angle) const;
  /// Values of a nodal vector on the boundary ring, indexed by angle.
  Eigen::ArrayXd boundary_values(const Eigen::ArrayXd& nodal) const;

  int first_boundary_dof() const { return 1 + (n_r_ - 1) * n_phi_; }

 private:
  StarDomain dom_;
  int n_r_ = 0, n_phi_ = 0;
  double ds_ = 0.0, dphi_ = 0.0;
  Eigen::ArrayXd s_, phi_, x1_, x2_, wq_, wb_;
  Eigen::ArrayXd rho_, drho_, ddrho_;
  DiffOps ops_;
};

/// Outward normal, curve curvature, and arclength element per
/// boundary node (all length n_phi).
struct BoundaryGeometry {
  Eigen::ArrayXd kappa, nu_x, nu_y, arclen;
};
BoundaryGeometry boundary_geometry(const StarDomain& dom, int n_phi);

/// Area, perimeter, and the reference radius/curvature
/// R0 = n |Omega| / |boundary|, H0 = 1/R0.
struct ReferenceConstants {
  double area = 0.0, perimeter = 0.0, R0 = 0.0, H0 = 0.0;
};
ReferenceConstants reference_constants(const PolarGrid& grid);

}  // namespace minklab
