#ifndef ORBITBIF_RUN_CONFIG_HPP
#define ORBITBIF_RUN_CONFIG_HPP

#include <Eigen/Core>

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "orbitbif/errors.hpp"

namespace orbitbif {

// Versioned JSON run configuration. Unknown fields are rejected everywhere so
// a config that parses today parses identically tomorrow.
//
// {
//   "version": 1,
//   "dimension_N": 2,
//   "matrix_A": [[...], ...]            -- exactly one of matrix_A / model
//   "model": {"f_coefficients": [...], "r0": 1.0},
//   "lambda_range": [0.1, 16.0],
//   "cutoffs": {"l_max": 8, "m_max": 8, "beta_max": 40.0},
//   "tolerances": {"coincidence_tol": 1e-9},        -- optional
//   "output": {"format": "csv", "path": "...",      -- optional
//              "states_path": "...", "svg_path": "..."}
// }
struct RunConfig {
  struct RadialModel {
    std::vector<double> f_coefficients;
    double r0 = 1.0;
  };
  struct Cutoffs {
    int l_max = 8;
    int m_max = 8;
    double beta_max = 40.0;
  };
  struct Output {
    std::string format = "csv";  // csv | json
    std::string path;            // empty: standard output
    std::string states_path;     // empty: derived from path for verify
    std::string svg_path;        // empty: no rendering
  };

  int dimension_N = 2;
  std::optional<Eigen::MatrixXd> matrix_A;
  std::optional<RadialModel> model;
  std::array<double, 2> lambda_range{0.0, 1.0};
  Cutoffs cutoffs;
  double coincidence_tol = 1e-9;
  Output output;

  static RunConfig load_file(const std::string& path);
  static RunConfig parse(const std::string& json_text, const std::string& origin);
};

}  // namespace orbitbif

#endif
