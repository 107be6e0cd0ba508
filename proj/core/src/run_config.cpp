#include "orbitbif/run_config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace orbitbif {

namespace {

using nlohmann::json;

void expect_keys(const json& obj, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* name : allowed) ok = ok || key == name;
    if (!ok) throw ConfigError("config: unknown field '" + where + key + "'");
  }
}

double require_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    throw ConfigError("config: field '" + where + key + "' must be a number");
  return obj.at(key).get<double>();
}

int require_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_number_integer())
    throw ConfigError("config: field '" + where + key + "' must be an integer");
  return obj.at(key).get<int>();
}

}  // namespace

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path);
}

RunConfig RunConfig::parse(const std::string& json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + origin + "': " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config '" + origin + "': top level must be an object");
  expect_keys(doc,
              {"version", "dimension_N", "matrix_A", "model", "lambda_range", "cutoffs",
               "tolerances", "output"},
              "");
  if (require_int(doc, "version", "") != 1)
    throw ConfigError("config: field 'version' must be 1");

  RunConfig cfg;
  cfg.dimension_N = require_int(doc, "dimension_N", "");
  if (cfg.dimension_N < 2) throw ConfigError("config: field 'dimension_N' must be >= 2");

  if (doc.contains("matrix_A") == doc.contains("model"))
    throw ConfigError("config: exactly one of 'matrix_A' and 'model' must be present");

  if (doc.contains("matrix_A")) {
    const auto& rows = doc.at("matrix_A");
    if (!rows.is_array() || rows.empty())
      throw ConfigError("config: field 'matrix_A' must be a nonempty array of rows");
    const std::size_t m = rows.size();
    Eigen::MatrixXd A(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      if (!rows[i].is_array() || rows[i].size() != m)
        throw ConfigError("config: field 'matrix_A' must be square");
      for (std::size_t j = 0; j < m; ++j) {
        if (!rows[i][j].is_number())
          throw ConfigError("config: field 'matrix_A' entries must be numbers");
        A(i, j) = rows[i][j].get<double>();
      }
    }
    cfg.matrix_A = std::move(A);
  } else {
    const auto& model = doc.at("model");
    if (!model.is_object()) throw ConfigError("config: field 'model' must be an object");
    expect_keys(model, {"f_coefficients", "r0"}, "model.");
    RadialModel rm;
    if (!model.contains("f_coefficients") || !model.at("f_coefficients").is_array())
      throw ConfigError("config: field 'model.f_coefficients' must be an array");
    for (const auto& c : model.at("f_coefficients")) {
      if (!c.is_number())
        throw ConfigError("config: field 'model.f_coefficients' entries must be numbers");
      rm.f_coefficients.push_back(c.get<double>());
    }
    rm.r0 = require_number(model, "r0", "model.");
    cfg.model = std::move(rm);
  }

  if (!doc.contains("lambda_range") || !doc.at("lambda_range").is_array() ||
      doc.at("lambda_range").size() != 2)
    throw ConfigError("config: field 'lambda_range' must be [lo, hi]");
  cfg.lambda_range = {doc.at("lambda_range")[0].get<double>(),
                      doc.at("lambda_range")[1].get<double>()};
  if (!(cfg.lambda_range[0] < cfg.lambda_range[1]))
    throw ConfigError("config: field 'lambda_range' needs lo < hi");

  if (!doc.contains("cutoffs")) throw ConfigError("config: field 'cutoffs' is required");
  const auto& cut = doc.at("cutoffs");
  expect_keys(cut, {"l_max", "m_max", "beta_max"}, "cutoffs.");
  cfg.cutoffs.l_max = require_int(cut, "l_max", "cutoffs.");
  cfg.cutoffs.m_max = require_int(cut, "m_max", "cutoffs.");
  cfg.cutoffs.beta_max = require_number(cut, "beta_max", "cutoffs.");
  if (cfg.cutoffs.l_max < 0 || cfg.cutoffs.m_max < 1 || !(cfg.cutoffs.beta_max > 0))
    throw ConfigError("config: field 'cutoffs' entries must be positive");

  if (doc.contains("tolerances")) {
    const auto& tol = doc.at("tolerances");
    expect_keys(tol, {"coincidence_tol"}, "tolerances.");
    if (tol.contains("coincidence_tol"))
      cfg.coincidence_tol = require_number(tol, "coincidence_tol", "tolerances.");
    if (!(cfg.coincidence_tol > 0))
      throw ConfigError("config: field 'tolerances.coincidence_tol' must be positive");
  }

  if (doc.contains("output")) {
    const auto& out = doc.at("output");
    expect_keys(out, {"format", "path", "states_path", "svg_path"}, "output.");
    if (out.contains("format")) cfg.output.format = out.at("format").get<std::string>();
    if (cfg.output.format != "csv" && cfg.output.format != "json")
      throw ConfigError("config: field 'output.format' must be 'csv' or 'json'");
    if (out.contains("path")) cfg.output.path = out.at("path").get<std::string>();
    if (out.contains("states_path"))
      cfg.output.states_path = out.at("states_path").get<std::string>();
    if (out.contains("svg_path")) cfg.output.svg_path = out.at("svg_path").get<std::string>();
  }
  return cfg;
}

}  // namespace orbitbif
