#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  auto parsed = pncsim::cli::parse_cli(args, std::cout, std::cerr);
  if (std::holds_alternative<int>(parsed)) return std::get<int>(parsed);
  return pncsim::cli::run_invocation(std::get<pncsim::cli::CliInvocation>(parsed),
                                     std::cout, std::cerr);
}
