#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "orbitbif/commands.hpp"
#include "orbitbif/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis, bifurcation classification, and numerical verification\n"
               "for variational Neumann systems on the unit ball."};
  app.require_subcommand(1);

  std::string config_path, cache_path, out_path;
  int threads = 1;
  unsigned seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON run configuration")->required();
    cmd->add_option("--cache", cache_path, "root cache file (created when missing)");
    cmd->add_option("--out", out_path, "output path, overrides config output.path");
    cmd->add_option("--threads", threads, "worker threads (results identical for any count)");
    cmd->add_option("--seed", seed, "reserved for randomized test tooling");
  };

  auto* spectrum =
      app.add_subcommand("spectrum", "enumerate Neumann eigenvalues with eigenspace splits");
  auto* classify =
      app.add_subcommand("classify", "classify candidate bifurcation levels in range");
  auto* verify = app.add_subcommand(
      "verify", "run the disk discretization and compare against the classification");
  auto* diagram = app.add_subcommand("diagram", "reshape a verify table into plot series");
  for (auto* cmd : {spectrum, classify, verify, diagram}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : orbitbif::kExitConfig;
  }

  orbitbif::CommandContext ctx;
  try {
    ctx.config = orbitbif::RunConfig::load_file(config_path);
  } catch (const orbitbif::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return orbitbif::kExitConfig;
  }
  ctx.cache_path = cache_path;
  ctx.out_override = out_path;
  ctx.threads = threads;
  ctx.seed = seed;
  orbitbif::set_thread_count(threads);

  if (spectrum->parsed()) return orbitbif::cmd_spectrum(ctx, std::cout, std::cerr);
  if (classify->parsed()) return orbitbif::cmd_classify(ctx, std::cout, std::cerr);
  if (verify->parsed()) return orbitbif::cmd_verify(ctx, std::cout, std::cerr);
  return orbitbif::cmd_diagram(ctx, std::cout, std::cerr);
}
