#pragma once

#include <map>
#include <memory>
#include <string>

#include "minklab/cmc_solver.hpp"
#include "minklab/domain.hpp"

namespace minklab {

/// Library and CLI version.
std::string version();

/// Flat key=value run configuration.  Lines are `key = value`, blank, or
/// `#` comments; later assignments override earlier ones.
class RunConfig {
 public:
  RunConfig() = default;
  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string get(const std::string& key,
                  const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;

  /// FNV-1a hash over the sorted key=value pairs, as 16 hex digits.
  /// Stamped into dumps so outputs can be traced to their settings.
  std::string hash() const;

  const std::map<std::string, std::string>& entries() const {
    return map_;
  }

 private:
  std::map<std::string, std::string> map_;
};

/// Domain from keys: domain (disk|ellipse|fourier), R, a, b, c0,
/// cos_coeffs, sin_coeffs (comma lists), cx, cy.
StarDomain make_domain(const RunConfig& cfg);

/// Grid from keys n_r, n_phi over the configured domain.
std::shared_ptr<const PolarGrid> make_grid(const RunConfig& cfg);

/// Solver settings from keys rhs, c, max_iters, tol, damping,
/// guess (flat|scaled_cap).
SolverConfig make_solver_config(const RunConfig& cfg);

}  // namespace minklab
