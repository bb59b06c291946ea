#include "minklab/runconfig.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace minklab {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

std::string version() { return "0.1.0"; }

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return from_string(buffer.str());
}

RunConfig RunConfig::from_string(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key");
    cfg.set(key, value);
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  map_[key] = value;
}

bool RunConfig::has(const std::string& key) const {
  return map_.count(key) > 0;
}

std::string RunConfig::get(const std::string& key,
                           const std::string& fallback) const {
  const auto it = map_.find(key);
  return it == map_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double value = std::stod(it->second, &pos);
    if (trim(it->second.substr(pos)).empty()) return value;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config key " + key + ": '" + it->second +
                              "' is not a number");
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const int value = std::stoi(it->second, &pos);
    if (trim(it->second.substr(pos)).empty()) return value;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("config key " + key + ": '" + it->second +
                              "' is not an integer");
}

std::string RunConfig::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&h](const std::string& s) {
    for (const char ch : s) {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [key, value] : map_) {
    feed(key);
    feed("=");
    feed(value);
    feed("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

StarDomain make_domain(const RunConfig& cfg) {
  const std::string kind = cfg.get("domain", "disk");
  const Eigen::Vector2d center(cfg.get_double("cx", 0.0),
                               cfg.get_double("cy", 0.0));
  if (kind == "disk") return StarDomain::disk(cfg.get_double("R", 1.0), center);
  if (kind == "ellipse")
    return StarDomain::ellipse(cfg.get_double("a", 1.0),
                               cfg.get_double("b", 1.0), center);
  if (kind == "fourier")
    return StarDomain::fourier(cfg.get_double("c0", 1.0),
                               parse_list(cfg.get("cos_coeffs", "")),
                               parse_list(cfg.get("sin_coeffs", "")), center);
  throw std::invalid_argument("unknown domain kind '" + kind + "'");
}

std::shared_ptr<const PolarGrid> make_grid(const RunConfig& cfg) {
  return std::make_shared<const PolarGrid>(
      make_domain(cfg), cfg.get_int("n_r", 32), cfg.get_int("n_phi", 64));
}

SolverConfig make_solver_config(const RunConfig& cfg) {
  SolverConfig sc;
  sc.rhs = cfg.get_double("rhs", sc.rhs);
  sc.c = cfg.get_double("c", sc.c);
  sc.max_newton_iters = cfg.get_int("max_iters", sc.max_newton_iters);
  sc.residual_tol = cfg.get_double("tol", sc.residual_tol);
  sc.damping = cfg.get_double("damping", sc.damping);
  const std::string guess = cfg.get("guess", "flat");
  if (guess == "flat")
    sc.guess = SolverConfig::Guess::flat;
  else if (guess == "scaled_cap")
    sc.guess = SolverConfig::Guess::scaled_cap;
  else
    throw std::invalid_argument("unknown guess '" + guess + "'");
  return sc;
}

}  // namespace minklab
