#include "orbitbif/commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "orbitbif/bifurcation_classifier.hpp"
#include "orbitbif/galerkin_verifier.hpp"
#include "orbitbif/parallel.hpp"

namespace orbitbif {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

// Output target: --out beats config.output.path beats the fallback stream.
class Sink {
 public:
  Sink(const CommandContext& ctx, std::ostream& fallback) {
    const std::string path =
        !ctx.out_override.empty() ? ctx.out_override : ctx.config.output.path;
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write output file '" + path + "'");
      path_ = path;
    } else {
      stream_ = &fallback;
    }
  }
  std::ostream& stream() { return stream_ ? *stream_ : file_; }
  const std::string& path() const { return path_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
  std::string path_;
};

std::string resolved_out_path(const CommandContext& ctx) {
  return !ctx.out_override.empty() ? ctx.out_override : ctx.config.output.path;
}

ModelPotential model_from(const RunConfig& cfg) {
  if (!cfg.model) throw ConfigError("this command needs a 'model' configuration");
  return ModelPotential::radial_family(cfg.model->f_coefficients, cfg.model->r0);
}

Eigen::MatrixXd coupling_matrix(const RunConfig& cfg) {
  if (cfg.matrix_A) return *cfg.matrix_A;
  return model_from(cfg).linearization();
}

std::optional<RootCache> open_cache(const CommandContext& ctx) {
  if (ctx.cache_path.empty()) return std::nullopt;
  return RootCache::load(ctx.cache_path, ctx.config.dimension_N);
}

void close_cache(const CommandContext& ctx, const std::optional<RootCache>& cache) {
  if (cache && !ctx.cache_path.empty()) cache->save(ctx.cache_path);
}

int run_guarded(std::ostream& diag, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    diag << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

std::string blocks_string(const EigenspaceDecomposition& d) {
  std::string s;
  for (const auto& [l, dim] : d.blocks) {
    if (!s.empty()) s += '|';
    s += std::to_string(l) + ":" + std::to_string(dim);
  }
  return s;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

struct DiagramRow {
  int branch_id;
  std::string kind;
  double lambda;
  double fraction;
  int dominant;
  double measure;
};

std::string isotropy_label(double fraction, int dominant) {
  return fraction > 0.999 ? std::string("SO(2)") : "Z" + std::to_string(std::max(1, dominant));
}

void write_svg(const std::string& path, const std::vector<std::vector<DiagramRow>>& series) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write SVG file '" + path + "'");
  double lo_x = 1e300, hi_x = -1e300, lo_y = 0.0, hi_y = -1e300;
  for (const auto& s : series) {
    for (const auto& row : s) {
      lo_x = std::min(lo_x, row.lambda);
      hi_x = std::max(hi_x, row.lambda);
      hi_y = std::max(hi_y, row.measure);
    }
  }
  if (hi_x <= lo_x) hi_x = lo_x + 1.0;
  if (hi_y <= lo_y) hi_y = lo_y + 1.0;
  const double W = 800, H = 500, ml = 60, mb = 40, mt = 20, mr = 20;
  auto X = [&](double x) { return ml + (x - lo_x) / (hi_x - lo_x) * (W - ml - mr); };
  auto Y = [&](double y) { return H - mb - (y - lo_y) / (hi_y - lo_y) * (H - mb - mt); };
  const char* colors[] = {"#444444", "#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  int idx = 0;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << colors[idx % 6] << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : s) out << X(row.lambda) << ',' << Y(row.measure) << ' ';
    out << "\"/>\n";
    ++idx;
  }
  out << "</svg>\n";
}

}  // namespace

int cmd_spectrum(const CommandContext& ctx, std::ostream& out, std::ostream& diag) {
  return run_guarded(diag, [&]() {
    auto cache = open_cache(ctx);
    RootCache* cache_ptr = cache ? &*cache : nullptr;
    const auto& cfg = ctx.config;
    const auto eigs = eigenvalues_up_to(cfg.dimension_N, cfg.cutoffs.beta_max, cache_ptr);
    for (const auto& w : eigs.warnings) diag << "warning: " << w << '\n';
    const auto decomps = group_by_beta(eigs, cfg.coincidence_tol);

    Sink sink(ctx, out);
    if (cfg.output.format == "csv") {
      sink.stream() << "beta,root_x,blocks,total_dim,fixed_dim\n";
      for (const auto& d : decomps) {
        sink.stream() << fmt(d.beta) << ',' << fmt(std::sqrt(d.beta)) << ','
                      << blocks_string(d) << ',' << d.total_dim << ',' << d.fixed_dim << '\n';
      }
    } else {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& d : decomps) {
        nlohmann::json blocks = nlohmann::json::array();
        for (const auto& [l, dim] : d.blocks) blocks.push_back({{"l", l}, {"dim", dim}});
        rows.push_back({{"beta", d.beta},
                        {"root_x", std::sqrt(d.beta)},
                        {"blocks", blocks},
                        {"total_dim", d.total_dim},
                        {"fixed_dim", d.fixed_dim}});
      }
      sink.stream() << rows.dump(2) << '\n';
    }
    close_cache(ctx, cache);
    return kExitOk;
  });
}

int cmd_classify(const CommandContext& ctx, std::ostream& out, std::ostream& diag) {
  return run_guarded(diag, [&]() {
    auto cache = open_cache(ctx);
    RootCache* cache_ptr = cache ? &*cache : nullptr;
    const auto& cfg = ctx.config;
    const auto A = coupling_matrix(cfg);
    const auto spec = matrix_spectrum(A);
    const auto eigs = eigenvalues_up_to(cfg.dimension_N, cfg.cutoffs.beta_max, cache_ptr);
    for (const auto& w : eigs.warnings) diag << "warning: " << w << '\n';

    const auto cands =
        lambda_candidates(spec, eigs, cfg.lambda_range[0], cfg.lambda_range[1]);
    if (cands.empty()) {
      diag << "note: no candidate levels inside the range; bifurcation levels are always "
              "quotients beta/alpha of Laplacian eigenvalues by nonzero eigenvalues of the "
              "coupling matrix\n";
    }
    const auto records = parallel_map<ClassificationRecord>(
        cands.size(), [&](std::size_t i) { return classify(cands[i], spec, eigs); });

    Sink sink(ctx, out);
    if (cfg.output.format == "csv") {
      sink.stream() << "lambda0,c1,c2,c3,thm0,local,global,symmetry_breaking,radial_only,"
                       "kernel_dim_normal,explanation\n";
      for (const auto& r : records) {
        sink.stream() << fmt(r.lambda0) << ',' << r.c1 << ',' << r.c2 << ',' << r.c3 << ','
                      << r.thm0 << ',' << r.local_bifurcation << ',' << r.global_bifurcation
                      << ',' << to_string(r.symmetry_breaking) << ',' << r.radial_only << ','
                      << r.kernel_dim_normal << ',' << csv_quote(join(r.explanation, "; "))
                      << '\n';
      }
    } else {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& r : records) {
        rows.push_back({{"lambda0", r.lambda0},
                        {"c1", r.c1},
                        {"c2", r.c2},
                        {"c3", r.c3},
                        {"thm0", r.thm0},
                        {"local", r.local_bifurcation},
                        {"global", r.global_bifurcation},
                        {"symmetry_breaking", to_string(r.symmetry_breaking)},
                        {"radial_only", r.radial_only},
                        {"kernel_dim_normal", r.kernel_dim_normal},
                        {"explanation", r.explanation}});
      }
      sink.stream() << rows.dump(2) << '\n';
    }
    close_cache(ctx, cache);
    return kExitOk;
  });
}

int cmd_verify(const CommandContext& ctx, std::ostream& out, std::ostream& diag) {
  return run_guarded(diag, [&]() {
    const auto& cfg = ctx.config;
    if (!cfg.model) throw ConfigError("verify needs a 'model' configuration");
    if (cfg.dimension_N != 2)
      throw ConfigError("verify runs the disk discretization and needs dimension_N = 2");
    const std::string csv_path = resolved_out_path(ctx);
    if (csv_path.empty())
      throw ConfigError("verify needs an output path (config output.path or --out)");

    auto cache = open_cache(ctx);
    RootCache* cache_ptr = cache ? &*cache : nullptr;
    const auto model = model_from(cfg);
    const auto basis = DiskBasis::build(cfg.cutoffs.l_max, cfg.cutoffs.m_max, 2,
                                        model.gradient_degree(), cache_ptr);

    // Predictions from the classifier side.
    const auto spec = matrix_spectrum(model.linearization());
    const auto eigs = eigenvalues_up_to(2, cfg.cutoffs.beta_max, cache_ptr);
    const auto cands =
        lambda_candidates(spec, eigs, cfg.lambda_range[0], cfg.lambda_range[1]);
    const auto records = parallel_map<ClassificationRecord>(
        cands.size(), [&](std::size_t i) { return classify(cands[i], spec, eigs); });

    // Observations from the continuation side.
    auto detection =
        continue_trivial_and_detect(model, basis, cfg.lambda_range[0], cfg.lambda_range[1]);
    for (const auto& w : detection.warnings) diag << "warning: " << w << '\n';

    std::vector<Branch> branches{detection.trivial_branch};
    std::vector<std::string> branch_errors(detection.detections.size());
    const auto switched = parallel_map<std::optional<Branch>>(
        detection.detections.size(), [&](std::size_t i) {
          const auto dir = kernel_direction_at(model, basis, detection.detections[i]);
          std::string err;
          auto b = switch_branch(model, basis, detection.detections[i], dir,
                                 kDefaultAmplitudes, {}, &err);
          branch_errors[i] = err;
          return b;
        });
    std::vector<int> branch_of_detection(detection.detections.size(), -1);
    for (std::size_t i = 0; i < switched.size(); ++i) {
      if (switched[i]) {
        branch_of_detection[i] = static_cast<int>(branches.size());
        branches.push_back(*switched[i]);
      } else {
        diag << "warning: " << branch_errors[i] << '\n';
      }
    }

    // Comparison.
    std::vector<std::string> disagreements;
    std::vector<std::string> summary;
    std::vector<bool> detection_used(detection.detections.size(), false);
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      const double lambda0 = cands[ci].lambda0;
      bool representable = false;
      for (const auto& [alpha, beta] : cands[ci].witnesses) {
        for (const auto& e : eigs.entries) {
          if (std::abs(e.beta() - beta) <= 1e-9 * (1.0 + beta) &&
              e.degree_l <= cfg.cutoffs.l_max && e.radial_index_m <= cfg.cutoffs.m_max)
            representable = true;
        }
      }
      if (!representable) {
        summary.push_back("candidate lambda0=" + fmt(lambda0) + " unrepresentable at cutoff");
        continue;
      }
      int match = -1;
      for (std::size_t di = 0; di < detection.detections.size(); ++di) {
        if (std::abs(detection.detections[di] - lambda0) <= 1e-6 * (1.0 + std::abs(lambda0)))
          match = static_cast<int>(di);
      }
      if (match < 0) {
        disagreements.push_back("predicted level lambda0=" + fmt(lambda0) + " was not detected");
        continue;
      }
      detection_used[match] = true;
      summary.push_back("candidate lambda0=" + fmt(lambda0) + " detected at " +
                        fmt(detection.detections[match]));

      const int bi = branch_of_detection[match];
      if (bi < 0) {
        summary.push_back("  branch not reached from the default seeds (not a contradiction)");
        continue;
      }
      const auto& branch = branches[bi];
      const std::size_t onset = std::min<std::size_t>(branch.points.size(), 3);
      const auto& rec = records[ci];
      for (std::size_t p = 0; p < onset; ++p) {
        const double fraction = branch.points[p].isotropy.radial_energy_fraction;
        if (rec.radial_only && fraction <= 0.999) {
          disagreements.push_back("radial-only level lambda0=" + fmt(lambda0) +
                                  " produced a non-radial branch point (fraction " +
                                  fmt(fraction) + ")");
        }
        if (rec.symmetry_breaking == SymmetryBreaking::yes && fraction >= 0.5) {
          disagreements.push_back("symmetry-breaking level lambda0=" + fmt(lambda0) +
                                  " produced a radial branch point (fraction " + fmt(fraction) +
                                  ")");
        }
      }
    }
    for (std::size_t di = 0; di < detection.detections.size(); ++di) {
      if (!detection_used[di])
        disagreements.push_back("detection at lambda=" + fmt(detection.detections[di]) +
                                " matches no predicted level");
    }

    std::ofstream csv(csv_path);
    if (!csv) throw ConfigError("cannot write output file '" + csv_path + "'");
    write_branches_csv(csv, branches, basis.constant_state(model.base_point()));
    const std::string states_path =
        !cfg.output.states_path.empty() ? cfg.output.states_path : csv_path + ".states.json";
    std::ofstream states(states_path);
    if (!states) throw ConfigError("cannot write states file '" + states_path + "'");
    write_states_json(states, branches);

    out << "verify: " << detection.detections.size() << " detection(s), "
        << branches.size() - 1 << " bifurcating branch(es), " << cands.size()
        << " predicted candidate(s)\n";
    for (const auto& s : summary) out << s << '\n';
    for (const auto& d : disagreements) out << "DISAGREE: " << d << '\n';
    out << (disagreements.empty() ? "verdict: agreement\n" : "verdict: disagreement\n");
    close_cache(ctx, cache);
    return disagreements.empty() ? kExitOk : kExitDisagreement;
  });
}

int cmd_diagram(const CommandContext& ctx, std::ostream& out, std::ostream& diag) {
  return run_guarded(diag, [&]() {
    const auto& cfg = ctx.config;
    const std::string input = cfg.output.path;
    if (input.empty())
      throw ConfigError("diagram reads the verify table from config output.path; none set");
    std::ifstream in(input);
    if (!in) throw ConfigError("diagram input '" + input + "' is missing; run verify first");

    std::string line;
    std::getline(in, line);  // header
    std::vector<std::vector<DiagramRow>> series;
    std::vector<int> ids;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      DiagramRow row;
      char kind[32];
      double residual, min_singular;
      if (std::sscanf(line.c_str(), "%d,%31[^,],%lf,%lf,%lf,%lf,%d,%lf", &row.branch_id, kind,
                      &row.lambda, &residual, &min_singular, &row.fraction, &row.dominant,
                      &row.measure) != 8)
        throw ConfigError("diagram input '" + input + "': malformed row '" + line + "'");
      row.kind = kind;
      auto at = std::find(ids.begin(), ids.end(), row.branch_id);
      if (at == ids.end()) {
        ids.push_back(row.branch_id);
        series.emplace_back();
        at = ids.end() - 1;
      }
      series[at - ids.begin()].push_back(row);
    }
    if (series.empty()) throw ConfigError("diagram input '" + input + "' has no data rows");

    const std::string out_path =
        !ctx.out_override.empty() ? ctx.out_override : input + ".diagram.csv";
    std::ofstream table(out_path);
    if (!table) throw ConfigError("cannot write output file '" + out_path + "'");
    table << "series,kind,lambda,measure,isotropy\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
      for (const auto& row : series[s]) {
        table << s << ',' << row.kind << ',' << fmt(row.lambda) << ',' << fmt(row.measure) << ','
              << isotropy_label(row.fraction, row.dominant) << '\n';
      }
    }
    if (!cfg.output.svg_path.empty()) write_svg(cfg.output.svg_path, series);
    out << "diagram: " << series.size() << " series -> " << out_path << '\n';
    return kExitOk;
  });
}

}  // namespace orbitbif
