#ifndef ORBITBIF_COMMANDS_HPP
#define ORBITBIF_COMMANDS_HPP

#include <ostream>
#include <string>

#include "orbitbif/run_config.hpp"

namespace orbitbif {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitDisagreement = 4;

struct CommandContext {
  RunConfig config;
  std::string cache_path;    // root cache file; empty disables caching
  std::string out_override;  // --out; takes precedence over config.output.path
  int threads = 1;
  unsigned seed = 0;  // reserved for randomized test tooling
};

// Table of the enumerated spectrum with eigenspace decompositions.
int cmd_spectrum(const CommandContext& ctx, std::ostream& out, std::ostream& diag);

// Candidate levels in range with their classification records.
int cmd_classify(const CommandContext& ctx, std::ostream& out, std::ostream& diag);

// Trivial-branch continuation, detection, branch switching, and the
// prediction/observation comparison. Branch CSV goes to the configured path;
// the summary goes to `out`. Exit 4 when observation contradicts prediction.
int cmd_verify(const CommandContext& ctx, std::ostream& out, std::ostream& diag);

// Reshape a verify branch table into plot-ready series (and optionally SVG).
int cmd_diagram(const CommandContext& ctx, std::ostream& out, std::ostream& diag);

}  // namespace orbitbif

#endif
