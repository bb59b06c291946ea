#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "minklab/cmc_solver.hpp"
#include "minklab/domain.hpp"
#include "minklab/graphgeom.hpp"
#include "minklab/identities.hpp"
#include "minklab/runconfig.hpp"
#include "minklab/stability.hpp"
#include "minklab/symfunc.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace minklab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitSpacelike = 4;
constexpr int kExitVerify = 5;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    out.push_back(std::stod(item.substr(first)));
  }
  return out;
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

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output file " + path);
  os << content;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string out;
  std::string kind = "cap";
  double theta0 = -2.0;
  double c = 0.0;
  std::string R = "auto";
  int n_r = 32, n_phi = 64;
};

int run_gen(const GenArgs& a) {
  RunConfig cfg;
  cfg.set("tool", "gen");
  cfg.set("kind", a.kind);
  cfg.set("c", std::to_string(a.c));
  cfg.set("n_r", std::to_string(a.n_r));
  cfg.set("n_phi", std::to_string(a.n_phi));

  double radius = 0.0;
  if (a.kind == "cap") {
    if (!(a.theta0 < -1.0))
      throw std::invalid_argument("gen: cap needs theta0 < -1");
    cfg.set("theta0", std::to_string(a.theta0));
    radius = a.R == "auto" ? std::sqrt(a.theta0 * a.theta0 - 1.0)
                           : std::stod(a.R);
  } else if (a.kind == "flat") {
    radius = a.R == "auto" ? 1.0 : std::stod(a.R);
  } else {
    throw std::invalid_argument("gen: kind must be cap or flat");
  }
  cfg.set("R", std::to_string(radius));

  auto grid = std::make_shared<const PolarGrid>(StarDomain::disk(radius),
                                                a.n_r, a.n_phi);
  const GraphSurface surf = a.kind == "cap"
                                ? hyperboloid_cap(a.c, a.theta0, grid)
                                : flat_surface(a.c, grid);
  const CurvatureField cf = curvature_field(surf);
  const PFieldGraph pf = p_field_graph(surf);

  std::ostringstream os;
  dump_surface(os, surf, cf, pf, a.c,
               {"tool=gen", "version=" + version(),
                "config_hash=" + cfg.hash()});
  write_file(a.out, os.str());
  std::cout << "wrote " << a.out << " (" << a.kind << ", grid " << a.n_r
            << "x" << a.n_phi << ")\n";
  return kExitOk;
}

// -------------------------------------------------------------- solve

struct SolveArgs {
  std::string config_path;
  std::map<std::string, std::string> overrides;
  std::string out;
  std::string report_path;
};

int run_solve(const SolveArgs& a) {
  RunConfig cfg = a.config_path.empty() ? RunConfig()
                                        : RunConfig::from_file(a.config_path);
  for (const auto& [key, value] : a.overrides) cfg.set(key, value);

  auto grid = make_grid(cfg);
  const SolverConfig sc = make_solver_config(cfg);
  const SolveReport rep = newton_solve(grid, sc);

  json j;
  j["version"] = version();
  j["config_hash"] = cfg.hash();
  j["status"] = status_name(rep.status);
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["final_residual"] = rep.final_residual;
  j["damping_events"] = rep.damping_events;
  j["min_w"] = rep.min_w;
  j["message"] = rep.message;
  j["residual_history"] = rep.residual_history;
  j["domain"] = grid->domain().describe();
  j["n_r"] = grid->n_r();
  j["n_phi"] = grid->n_phi();
  j["rhs"] = sc.rhs;
  j["c"] = sc.c;
  if (!a.report_path.empty()) write_file(a.report_path, j.dump(2) + "\n");

  if (!a.out.empty()) {
    if (rep.surface.spacelike) {
      const CurvatureField cf = curvature_field(rep.surface);
      const PFieldGraph pf = p_field_graph(rep.surface);
      std::ostringstream os;
      char res[32];
      std::snprintf(res, sizeof(res), "%.3e", rep.final_residual);
      dump_surface(os, rep.surface, cf, pf, sc.c,
                   {"tool=solve", "version=" + version(),
                    "config_hash=" + cfg.hash(),
                    "status=" + status_name(rep.status),
                    "iterations=" + std::to_string(rep.iterations),
                    "final_residual=" + std::string(res)});
      write_file(a.out, os.str());
    } else {
      std::cerr << "final iterate is not space-like; no dump written\n";
    }
  }

  std::cout << "status=" << status_name(rep.status)
            << " iterations=" << rep.iterations
            << " final_residual=" << rep.final_residual
            << " min_w=" << rep.min_w << "\n";
  if (!rep.message.empty()) std::cout << rep.message << "\n";

  switch (rep.status) {
    case SolveReport::Status::ok:
      return kExitOk;
    case SolveReport::Status::non_convergence:
      return kExitNonConvergence;
    case SolveReport::Status::spacelike_breakdown:
      return kExitSpacelike;
  }
  return kExitConfig;
}

// ------------------------------------------------------------- verify

struct VerifyArgs {
  std::string surface_path;
  std::string id = "all";
  std::string flag = "both";
  double tol = 1e-6;
  int k = 1, l = 0;
  std::string report_path;
};

struct VerifyLine {
  std::string label;
  bool pass = true;
  bool skipped = false;
  std::string detail;
  json data;
};

VerifyLine line_for(const IdentityReport& rep, double tol,
                    bool with_flag) {
  VerifyLine line;
  line.label = rep.id + (with_flag ? " (" + to_string(rep.flag) + ")" : "");
  line.pass = rep.valid && rep.rel_residual <= tol;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "residual=%.6e rel=%.6e", rep.residual,
                rep.rel_residual);
  line.detail = buf;
  if (!rep.valid) line.detail += " [" + rep.note + "]";
  line.data["id"] = rep.id;
  if (with_flag) line.data["flag"] = to_string(rep.flag);
  line.data["residual"] = rep.residual;
  line.data["rel_residual"] = rep.rel_residual;
  line.data["scale"] = rep.scale;
  line.data["valid"] = rep.valid;
  if (!rep.note.empty()) line.data["note"] = rep.note;
  json terms;
  for (const auto& [key, value] : rep.terms) terms[key] = value;
  line.data["terms"] = terms;
  return line;
}

VerifyLine gauss_line(const CurvatureField& cf, double tol) {
  VerifyLine line;
  line.label = "gauss";
  double worst = 0.0;
  int evaluated = 0;
  for (int d = 0; d < cf.S1.size(); ++d) {
    if (std::abs(cf.S2[d]) < 1e-8) continue;
    Eigen::Matrix2d A;
    A << cf.a11[d], cf.a12[d], cf.a21[d], cf.a22[d];
    worst = std::max(worst, gauss_map_identity(A));
    ++evaluated;
  }
  if (evaluated == 0) {
    line.skipped = true;
    line.detail = "no nodes with invertible shape operator";
  } else {
    line.pass = worst <= tol;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max_defect=%.6e over %d nodes", worst,
                  evaluated);
    line.detail = buf;
  }
  line.data["id"] = "gauss";
  line.data["max_defect"] = worst;
  line.data["nodes"] = evaluated;
  return line;
}

VerifyLine ellipticity_line(const GraphSurface& surf,
                            const CurvatureField& cf, int k, int l,
                            double tol) {
  VerifyLine line;
  line.label =
      "ellipticity(" + std::to_string(k) + "," + std::to_string(l) + ")";
  line.data["id"] = "ellipticity";
  line.data["k"] = k;
  line.data["l"] = l;
  try {
    const EllipticityReport rep = pointwise_ellipticity(surf, cf, k, l);
    line.pass = rep.min_value >= -tol;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "min_value=%.6e quotient_ok=%s",
                  rep.min_value, rep.quotient_ok ? "yes" : "no");
    line.detail = buf;
    line.data["min_value"] = rep.min_value;
    line.data["quotient_ok"] = rep.quotient_ok;
  } catch (const std::domain_error& e) {
    line.pass = false;
    line.detail = e.what();
    line.data["error"] = e.what();
  }
  return line;
}

int run_verify(const VerifyArgs& a) {
  std::ifstream is(a.surface_path);
  if (!is)
    throw std::invalid_argument("cannot open surface file " +
                                a.surface_path);
  const LoadedSurface loaded = load_surface(is);
  const GraphSurface& surf = loaded.surf;
  if (!surf.spacelike) {
    std::cerr << "loaded surface is not space-like\n";
    return kExitSpacelike;
  }
  const CurvatureField cf = curvature_field(surf);
  const PFieldGraph pf = p_field_graph(surf);
  const double c = loaded.c;

  std::vector<GradFlag> flags;
  if (a.flag == "both") {
    flags = {GradFlag::g_metric, GradFlag::euclidean};
  } else if (a.flag == "g" || a.flag == "g_metric") {
    flags = {GradFlag::g_metric};
  } else if (a.flag == "euclidean") {
    flags = {GradFlag::euclidean};
  } else {
    throw std::invalid_argument("verify: flag must be g, euclidean, or both");
  }

  const bool all = a.id == "all";
  std::vector<VerifyLine> lines;
  auto want = [&](const std::string& id) { return all || a.id == id; };

  if (want("fundamental"))
    for (const GradFlag f : flags)
      lines.push_back(line_for(eval_fundamental(surf, cf, pf, c, f), a.tol,
                               true));
  if (want("soap_bubble"))
    for (const GradFlag f : flags)
      lines.push_back(line_for(eval_soap_bubble(surf, cf, pf, c, f), a.tol,
                               true));
  if (want("heintze_karcher"))
    for (const GradFlag f : flags)
      lines.push_back(line_for(eval_heintze_karcher(surf, cf, pf, c, f),
                               a.tol, true));
  if (want("hk_deficit"))
    lines.push_back(line_for(eval_hk_deficit(*surf.grid), a.tol, false));
  if (want("cap_balance")) {
    if (all) {
      lines.push_back(
          line_for(eval_cap_balance(surf, cf, c, 1, 0), a.tol, false));
      lines.push_back(
          line_for(eval_cap_balance(surf, cf, c, 2, 1), a.tol, false));
    } else {
      lines.push_back(
          line_for(eval_cap_balance(surf, cf, c, a.k, a.l), a.tol, false));
    }
  }
  if (want("gauss")) lines.push_back(gauss_line(cf, a.tol));
  if (want("ellipticity")) {
    if (all)
      lines.push_back(ellipticity_line(surf, cf, 1, 0, a.tol));
    else
      lines.push_back(ellipticity_line(surf, cf, a.k, a.l, a.tol));
  }
  if (lines.empty())
    throw std::invalid_argument("verify: unknown id '" + a.id + "'");

  bool ok = true;
  json out = json::array();
  for (VerifyLine& line : lines) {
    const char* tag =
        line.skipped ? "[SKIP]" : (line.pass ? "[ OK ]" : "[FAIL]");
    std::cout << tag << " " << line.label << ": " << line.detail << "\n";
    line.data["pass"] = line.pass;
    line.data["skipped"] = line.skipped;
    out.push_back(line.data);
    if (!line.skipped && !line.pass) ok = false;
  }
  std::cout << "verify: " << (ok ? "PASS" : "FAIL") << " (tol=" << a.tol
            << ")\n";
  if (!a.report_path.empty()) {
    json wrapper;
    wrapper["version"] = version();
    wrapper["surface"] = a.surface_path;
    wrapper["tol"] = a.tol;
    wrapper["pass"] = ok;
    wrapper["checks"] = out;
    write_file(a.report_path, wrapper.dump(2) + "\n");
  }
  return ok ? kExitOk : kExitVerify;
}

// -------------------------------------------------------------- sweep

struct SweepArgs {
  std::string family = "ellipse";
  double min = 1.05, max = 1.5;
  int steps = 10;
  std::string params;
  int n_r = 32, n_phi = 64;
  double rhs = 2.0, c = 0.0, tol = 1e-8;
  std::string out;
  std::string plot_prefix;
};

int run_sweep(const SweepArgs& a) {
  std::vector<double> params;
  if (!a.params.empty()) {
    params = parse_list(a.params);
  } else {
    if (a.steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
    for (int i = 0; i < a.steps; ++i)
      params.push_back(a.steps == 1 ? a.min
                                    : a.min + (a.max - a.min) * i /
                                                  (a.steps - 1.0));
  }

  std::vector<SweepMember> members;
  for (const double p : params) {
    SweepMember m;
    m.family_param = p;
    if (a.family == "ellipse")
      m.domain = StarDomain::ellipse(1.0, p);
    else if (a.family == "fourier")
      m.domain = StarDomain::fourier(1.0, {0.0, p});
    else if (a.family == "disk")
      m.domain = StarDomain::disk(p);
    else
      throw std::invalid_argument(
          "sweep: family must be ellipse, fourier, or disk");
    members.push_back(std::move(m));
  }

  SolverConfig sc;
  sc.rhs = a.rhs;
  sc.c = a.c;
  sc.residual_tol = a.tol;
  const std::vector<SweepRow> rows =
      domain_sweep(members, a.n_r, a.n_phi, sc);

  const std::string csv = sweep_csv(rows);
  if (a.out.empty())
    std::cout << csv;
  else
    write_file(a.out, csv);

  if (!a.plot_prefix.empty()) {
    auto write_plot = [&](const std::string& name, auto value) {
      std::ostringstream os;
      os.precision(12);
      for (const SweepRow& row : rows)
        if (row.rep.converged)
          os << value(row).first << " " << value(row).second << "\n";
      write_file(a.plot_prefix + "_" + name + ".dat", os.str());
    };
    write_plot("hbar", [](const SweepRow& r) {
      return std::pair<double, double>(r.family_param, r.rep.hbar_L2);
    });
    write_plot("deficit", [](const SweepRow& r) {
      return std::pair<double, double>(r.family_param, r.rep.deficit_L1);
    });
    write_plot("scaling", [](const SweepRow& r) {
      return std::pair<double, double>(r.rep.deficit_L1, r.rep.hbar_L2);
    });
  }

  int converged = 0;
  for (const SweepRow& row : rows) converged += row.rep.converged ? 1 : 0;
  std::cerr << converged << "/" << rows.size() << " members converged\n";
  return converged > 0 ? kExitOk : kExitNonConvergence;
}

// ----------------------------------------------------------- selftest

struct SelftestArgs {
  std::uint64_t seed = 12345;
  int samples = 200;
};

struct SelftestFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bool cond, const std::string& what) {
  if (!cond) throw SelftestFailure(what);
}

void suite_newton_tensor(std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(2, 5);
  for (int it = 0; it < samples; ++it) {
    const int n = dim(rng);
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = entry(rng);
    const Eigen::MatrixXd A = 0.5 * (M + M.transpose());
    const std::vector<double> S = elem_sym_matrix_values(A);
    for (int k = 1; k <= n; ++k) {
      const Eigen::MatrixXd T = newton_tensor(A, k);
      const double skp1 = k + 1 <= n ? S[k + 1] : 0.0;
      const double scale = 1.0 + std::abs(S[k]) + std::abs(S[k - 1]);
      check(std::abs(T.trace() - (n - k + 1) * S[k - 1]) <= 1e-8 * scale,
            "newton tensor trace mismatch");
      check(std::abs((T * A).trace() - k * S[k]) <= 1e-8 * scale,
            "newton tensor A-contraction mismatch");
      check(std::abs((T * A * A).trace() - (S[1] * S[k] - (k + 1) * skp1)) <=
                1e-7 * (scale + std::abs(S[1] * S[k])),
            "newton tensor A^2-contraction mismatch");
    }
  }
}

void suite_gauss(std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(2, 5);
  for (int it = 0; it < samples; ++it) {
    const int n = dim(rng);
    Eigen::MatrixXd A(n, n);
    do {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = entry(rng);
    } while (std::abs(A.determinant()) < 1e-3);
    check(gauss_map_identity(A) <= 1e-9, "inverse symmetric-function defect");
  }
}

void suite_maclaurin(std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> entry(0.05, 2.0);
  std::uniform_int_distribution<int> dim(2, 5);
  for (int it = 0; it < samples; ++it) {
    const int n = dim(rng);
    Eigen::VectorXd lambda(n);
    for (int i = 0; i < n; ++i) lambda[i] = entry(rng);
    check(newton_maclaurin_margin(lambda, 2, 0, 1, 0) >= -1e-10,
          "quotient chain margin (2,0)/(1,0)");
    if (n >= 3) {
      check(newton_maclaurin_margin(lambda, 3, 1, 2, 1) >= -1e-10,
            "quotient chain margin (3,1)/(2,1)");
      check(newton_maclaurin_margin(lambda, 3, 0, 2, 0) >= -1e-10,
            "quotient chain margin (3,0)/(2,0)");
    }
    if (n >= 4)
      check(newton_maclaurin_margin(lambda, 4, 2, 3, 2) >= -1e-10,
            "quotient chain margin (4,2)/(3,2)");
  }
}

void suite_cap_balance(std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> entry(0.05, 2.0);
  const int cases[3][3] = {{3, 2, 1}, {4, 2, 1}, {4, 3, 1}};
  for (int it = 0; it < samples; ++it) {
    for (const auto& kc : cases) {
      const int n = kc[0], k = kc[1], l = kc[2];
      Eigen::VectorXd lambda(n);
      for (int i = 0; i < n; ++i) lambda[i] = entry(rng);
      std::vector<double> S = elem_sym_values(lambda);
      const double t = std::pow(
          binomial(n, k) * S[l] / (binomial(n, l) * S[k]), 1.0 / (k - l));
      for (int j = 0; j <= n; ++j) S[j] *= std::pow(t, j);
      const MQValues mq = cap_balance_pointwise(n, k, l, S);
      const double scale = std::max({1.0, std::abs(mq.M), std::abs(mq.Q)});
      check(mq.M > 0.0, "balance weight M not positive under constraint");
      check(mq.M - mq.Q <= 1e-10 * scale,
            "balance difference M - Q not nonpositive under constraint");
    }
  }
}

void suite_pinching(std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> entry(0.05, 2.0);
  std::uniform_int_distribution<int> dim(2, 5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int it = 0; it < samples; ++it) {
    const int n = dim(rng);
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = gauss(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
    const Eigen::MatrixXd Q = qr.householderQ();
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d[i] = entry(rng);
    const Eigen::MatrixXd A = Q * d.asDiagonal() * Q.transpose();
    std::uniform_int_distribution<int> pick_k(1, n);
    const int k = pick_k(rng);
    std::uniform_int_distribution<int> pick_l(0, k - 1);
    const int l = pick_l(rng);
    const PinchingMargins pm = pinching_margins(A, k, l);
    for (const double margin : pm.as_array())
      check(margin >= -1e-9, "pinching margin negative on the cone");
  }
}

int run_selftest(const SelftestArgs& a) {
  std::mt19937_64 rng(a.seed);
  struct Suite {
    const char* name;
    void (*fn)(std::mt19937_64&, int);
  };
  const Suite suites[] = {
      {"newton tensor contractions", suite_newton_tensor},
      {"inverse symmetric functions", suite_gauss},
      {"quotient chain margins", suite_maclaurin},
      {"balance weights under constraint", suite_cap_balance},
      {"quotient pinching margins", suite_pinching},
  };
  for (const Suite& suite : suites) {
    try {
      suite.fn(rng, a.samples);
      std::cout << "ok   " << suite.name << " (" << a.samples
                << " samples)\n";
    } catch (const SelftestFailure& e) {
      std::cout << "FAIL " << suite.name << ": " << e.what() << "\n";
      std::cout << "selftest FAIL (seed=" << a.seed << ")\n";
      return kExitVerify;
    }
  }
  std::cout << "selftest ok (seed=" << a.seed << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Curvature, integral identities, and stability estimates for "
      "space-like constant-mean-curvature graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  GenArgs gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Generate an analytic surface dump");
  gen_cmd->add_option("--out", gen.out, "Output CSV path")->required();
  gen_cmd->add_option("--kind", gen.kind, "cap or flat");
  gen_cmd->add_option("--theta0", gen.theta0,
                      "Hyperboloid angle parameter (< -1)");
  gen_cmd->add_option("--c", gen.c, "Boundary value");
  gen_cmd->add_option("--R", gen.R, "Disk radius, or auto");
  gen_cmd->add_option("--n-r", gen.n_r, "Radial intervals");
  gen_cmd->add_option("--n-phi", gen.n_phi, "Angular intervals");

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand(
      "solve", "Solve the prescribed-curvature Dirichlet problem");
  solve_cmd->add_option("--config", solve.config_path,
                        "key=value config file");
  solve_cmd->add_option("--out", solve.out, "Surface dump path");
  solve_cmd->add_option("--report", solve.report_path, "JSON report path");
  for (const auto& [flag, key] :
       std::vector<std::pair<std::string, std::string>>{
           {"--domain", "domain"},      {"--R", "R"},
           {"--a", "a"},                {"--b", "b"},
           {"--c0", "c0"},              {"--cos-coeffs", "cos_coeffs"},
           {"--sin-coeffs", "sin_coeffs"}, {"--cx", "cx"},
           {"--cy", "cy"},              {"--n-r", "n_r"},
           {"--n-phi", "n_phi"},        {"--rhs", "rhs"},
           {"--c", "c"},                {"--tol", "tol"},
           {"--max-iters", "max_iters"}, {"--damping", "damping"},
           {"--guess", "guess"}}) {
    const std::string k = key;
    auto* dst = &solve.overrides;
    solve_cmd->add_option_function<std::string>(
        flag, [dst, k](const std::string& v) { (*dst)[k] = v; },
        "Override config key " + key);
  }

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Evaluate integral identities on a surface dump");
  verify_cmd->add_option("--surface", verify.surface_path, "Surface dump")
      ->required();
  verify_cmd->add_option(
      "--id", verify.id,
      "fundamental, soap_bubble, heintze_karcher, hk_deficit, cap_balance, "
      "gauss, ellipticity, or all");
  verify_cmd->add_option("--flag", verify.flag,
                         "Gradient convention: g, euclidean, or both");
  verify_cmd->add_option("--tol", verify.tol, "Relative tolerance");
  verify_cmd->add_option("--k", verify.k, "Upper index for "
                         "cap_balance/ellipticity");
  verify_cmd->add_option("--l", verify.l, "Lower index for "
                         "cap_balance/ellipticity");
  verify_cmd->add_option("--report", verify.report_path, "JSON report path");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Solve a domain family and tabulate stability data");
  sweep_cmd->add_option("--family", sweep.family,
                        "ellipse, fourier, or disk");
  sweep_cmd->add_option("--min", sweep.min, "Smallest family parameter");
  sweep_cmd->add_option("--max", sweep.max, "Largest family parameter");
  sweep_cmd->add_option("--steps", sweep.steps, "Number of members");
  sweep_cmd->add_option("--params", sweep.params,
                        "Explicit comma-separated parameters");
  sweep_cmd->add_option("--n-r", sweep.n_r, "Radial intervals");
  sweep_cmd->add_option("--n-phi", sweep.n_phi, "Angular intervals");
  sweep_cmd->add_option("--rhs", sweep.rhs, "Curvature target");
  sweep_cmd->add_option("--c", sweep.c, "Boundary value");
  sweep_cmd->add_option("--tol", sweep.tol, "Solver residual tolerance");
  sweep_cmd->add_option("--out", sweep.out, "CSV path (stdout if empty)");
  sweep_cmd->add_option("--plot-prefix", sweep.plot_prefix,
                        "Prefix for two-column .dat plot files");

  SelftestArgs selftest;
  CLI::App* selftest_cmd = app.add_subcommand(
      "selftest", "Randomized property checks of the algebra kernels");
  selftest_cmd->add_option("--seed", selftest.seed, "RNG seed");
  selftest_cmd->add_option("--samples", selftest.samples,
                           "Samples per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (solve_cmd->parsed()) return run_solve(solve);
    if (verify_cmd->parsed()) return run_verify(verify);
    if (sweep_cmd->parsed()) return run_sweep(sweep);
    if (selftest_cmd->parsed()) return run_selftest(selftest);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
