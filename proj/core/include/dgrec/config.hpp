#pragma once

#include <stdexcept>
#include <string>

#include "dgrec/assemble.hpp"

namespace dgrec {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string case_name = "homogeneous";
  double epsilon = 1e-2;      // homogeneous / boundary layer diffusion
  double contrast = 5.0;      // checkerboard diffusion ratio
  double layer_width = 1e-3;  // boundary layer width parameter

  SchemeParams scheme;
  int degree = 1;

  std::string mode = "uniform";  // "uniform" or "adaptive"
  int levels = 5;                // uniform reporting rows
  int max_elements = 9000;       // adaptive element budget
  int max_iterations = 60;       // adaptive iteration cap
  double marking_fraction = 0.75;
  int adapt_bisections = 2;
  int initial_n = 16;  // cells per axis of the starting grid

  int quad_assembly = 0;   // 0 selects 2 degree + 2
  int quad_estimator = 0;  // 0 selects 2 degree + 4
  int quad_error = 0;      // 0 selects 2 degree + 4 (+2 for the singular case)
  double solver_tol = 1e-10;

  bool write_vtk = false;
  std::string output_dir = ".";
};

// Flat "key = value" file with '#' comments and blank lines.  Unknown keys,
// malformed lines, and out-of-range values raise ConfigError naming the line.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

void validate_config(const RunConfig& cfg);  // throws ConfigError

}  // namespace dgrec
