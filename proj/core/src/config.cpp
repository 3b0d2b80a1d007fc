#include "dgrec/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace dgrec {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& v, const std::string& where) {
  size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + v + "'");
  }
  if (pos != v.size())
    throw ConfigError(where + ": trailing characters in number '" + v + "'");
  return d;
}

int parse_int(const std::string& v, const std::string& where) {
  size_t pos = 0;
  int i = 0;
  try {
    i = std::stoi(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected an integer, got '" + v + "'");
  }
  if (pos != v.size())
    throw ConfigError(where + ": trailing characters in integer '" + v + "'");
  return i;
}

bool parse_bool(const std::string& v, const std::string& where) {
  std::string s = v;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "off" || s == "no") return false;
  throw ConfigError(where + ": expected a boolean, got '" + v + "'");
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (val.empty()) throw ConfigError(where + ": empty value for '" + key + "'");

    if (key == "case") cfg.case_name = val;
    else if (key == "epsilon") cfg.epsilon = parse_double(val, where);
    else if (key == "contrast") cfg.contrast = parse_double(val, where);
    else if (key == "layer_width") cfg.layer_width = parse_double(val, where);
    else if (key == "theta") cfg.scheme.theta = parse_int(val, where);
    else if (key == "penalty") cfg.scheme.penalty = parse_double(val, where);
    else if (key == "gamma_a") cfg.scheme.gamma_a = parse_double(val, where);
    else if (key == "upwind") cfg.scheme.upwind = parse_bool(val, where);
    else if (key == "omega_plus") cfg.scheme.omega_plus = parse_double(val, where);
    else if (key == "degree") cfg.degree = parse_int(val, where);
    else if (key == "mode") cfg.mode = val;
    else if (key == "levels") cfg.levels = parse_int(val, where);
    else if (key == "max_elements") cfg.max_elements = parse_int(val, where);
    else if (key == "max_iterations") cfg.max_iterations = parse_int(val, where);
    else if (key == "marking_fraction") cfg.marking_fraction = parse_double(val, where);
    else if (key == "adapt_bisections") cfg.adapt_bisections = parse_int(val, where);
    else if (key == "initial_n") cfg.initial_n = parse_int(val, where);
    else if (key == "quad_assembly") cfg.quad_assembly = parse_int(val, where);
    else if (key == "quad_estimator") cfg.quad_estimator = parse_int(val, where);
    else if (key == "quad_error") cfg.quad_error = parse_int(val, where);
    else if (key == "solver_tol") cfg.solver_tol = parse_double(val, where);
    else if (key == "write_vtk") cfg.write_vtk = parse_bool(val, where);
    else if (key == "output_dir") cfg.output_dir = val;
    else throw ConfigError(where + ": unknown key '" + key + "'");
  }
  validate_config(cfg);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str(), path);
}

void validate_config(const RunConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (cfg.case_name != "homogeneous" && cfg.case_name != "singular" &&
      cfg.case_name != "boundary_layer")
    fail("case must be homogeneous, singular or boundary_layer, got '" +
         cfg.case_name + "'");
  if (!(cfg.epsilon > 0.0)) fail("epsilon must be positive");
  if (!(cfg.contrast > 0.0)) fail("contrast must be positive");
  if (!(cfg.layer_width > 0.0)) fail("layer_width must be positive");
  if (cfg.scheme.theta != 1 && cfg.scheme.theta != 0 && cfg.scheme.theta != -1)
    fail("theta must be -1, 0 or 1");
  if (!(cfg.scheme.penalty > 0.0)) fail("penalty must be positive");
  if (!(cfg.scheme.gamma_a > 0.0)) fail("gamma_a must be positive");
  if (cfg.scheme.omega_plus < 0.0 || cfg.scheme.omega_plus > 1.0)
    fail("omega_plus must lie in [0, 1]");
  if (cfg.degree != 1 && cfg.degree != 2) fail("degree must be 1 or 2");
  if (cfg.mode != "uniform" && cfg.mode != "adaptive")
    fail("mode must be uniform or adaptive, got '" + cfg.mode + "'");
  if (cfg.levels < 1) fail("levels must be >= 1");
  if (cfg.max_elements < 1) fail("max_elements must be >= 1");
  if (cfg.max_iterations < 1) fail("max_iterations must be >= 1");
  if (!(cfg.marking_fraction > 0.0) || !(cfg.marking_fraction < 1.0))
    fail("marking_fraction must lie in (0, 1)");
  if (cfg.adapt_bisections < 1 || cfg.adapt_bisections > 3)
    fail("adapt_bisections must be 1, 2 or 3");
  if (cfg.initial_n < 1) fail("initial_n must be >= 1");
  for (int q : {cfg.quad_assembly, cfg.quad_estimator, cfg.quad_error})
    if (q != 0 && (q < 1 || q > 20))
      fail("quadrature degrees must be 0 (auto) or in [1, 20]");
  if (!(cfg.solver_tol > 0.0)) fail("solver_tol must be positive");
}

}  // namespace dgrec
