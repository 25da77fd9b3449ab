// Command-line front end: flag parsing into an invocation value and the
// subcommand drivers (sweep | geometry | bc | validate-map).
#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "pncsim/montecarlo.hpp"

namespace pncsim::cli {

struct CliInvocation {
  enum class Command { sweep, geometry, bc, validate_map };
  Command command = Command::sweep;

  SimConfig cfg;          // sweep and bc runs
  std::string map_file;   // optional denoising-map file
  std::string out_path;   // empty = standard output

  // geometry grid over the complex gamma = h_A / h_B plane
  std::string mod_token = "qpsk";
  double re_min = -2.0, re_max = 2.0;
  double im_min = -2.0, im_max = 2.0;
  unsigned grid = 81;
};

// Parses argv. Returns the invocation to run, or the process exit code if
// parsing already ended the program (help printed, or usage error -> 2).
std::variant<CliInvocation, int> parse_cli(const std::vector<std::string>& args,
                                           std::ostream& out, std::ostream& err);

// Executes one invocation. CSV goes to inv.out_path when set, otherwise to
// out; the human-readable summary goes to err. Returns the exit code.
int run_invocation(const CliInvocation& inv, std::ostream& out, std::ostream& err);

}  // namespace pncsim::cli
