#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pncsim/geometry.hpp"

namespace pncsim::cli {

namespace {

// "start:step:stop" in dB, or a single value for a one-point sweep.
void parse_snr_range(const std::string& text, SimConfig& cfg) {
  double a = 0, b = 0, c = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &c, &tail) == 3) {
    cfg.snr_start_db = a;
    cfg.snr_step_db = b;
    cfg.snr_stop_db = c;
  } else if (std::sscanf(text.c_str(), "%lf%c", &a, &tail) == 1) {
    cfg.snr_start_db = cfg.snr_stop_db = a;
    cfg.snr_step_db = 1.0;
  } else {
    throw CLI::ValidationError("--snr", "expected start:step:stop (dB), got '" + text + "'");
  }
  if (!(cfg.snr_step_db > 0.0)) throw CLI::ValidationError("--snr", "step must be > 0");
  if (cfg.snr_start_db > cfg.snr_stop_db) {
    throw CLI::ValidationError("--snr", "start must be <= stop");
  }
}

void parse_interval(const std::string& flag, const std::string& text, double& lo, double& hi) {
  double a = 0, b = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf%c", &a, &b, &tail) != 2 || a >= b) {
    throw CLI::ValidationError(flag, "expected lo:hi with lo < hi, got '" + text + "'");
  }
  lo = a;
  hi = b;
}

void add_engine_flags(CLI::App* sub, CliInvocation& inv, bool with_scheme) {
  auto& cfg = inv.cfg;
  if (with_scheme) {
    sub->add_option_function<std::string>(
           "--scheme", [&cfg](const std::string& v) { cfg.scheme = scheme_from_token(v); },
           "Antenna selection scheme: none|tas1|tas2|jas (default none)")
        ->check(CLI::IsMember({"none", "tas1", "tas2", "jas"}));
    sub->add_option("--na", cfg.n_a, "User A antenna count")->check(CLI::PositiveNumber);
    sub->add_option("--nb", cfg.n_b, "User B antenna count")->check(CLI::PositiveNumber);
    sub->add_option("--nr", cfg.n_r, "Relay antenna count")->check(CLI::PositiveNumber);
  }
  sub->add_option("--mod", cfg.modulation, "Modulation: bpsk|qpsk|8psk|16psk (default qpsk)")
      ->check(CLI::IsMember({"bpsk", "qpsk", "8psk", "16psk"}));
  sub->add_option_function<std::string>(
         "--snr", [&cfg](const std::string& v) { parse_snr_range(v, cfg); },
         "Es/N0 sweep, start:step:stop in dB (default 0:5:30)");
  sub->add_option("--seed", cfg.seed, "Random seed (default 0)");
  sub->add_option("--trials", cfg.max_trials, "Trial cap per SNR point (default 1e8)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--target-errors", cfg.target_errors,
                  "Stop a point after this many errors (default 200)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--workers", cfg.workers, "Worker thread count, 0 = auto (default 0)");
  sub->add_option("--map-file", inv.map_file, "Denoising map file (default: XOR map)");
  sub->add_option("--out", inv.out_path, "Write CSV to this file instead of stdout");
}

NetworkMap resolve_map(const CliInvocation& inv, const Constellation& c) {
  if (inv.map_file.empty()) return NetworkMap::xor_map(c.order());
  NetworkMap m = NetworkMap::load_file(inv.map_file);
  if (m.order() != c.order()) {
    throw std::runtime_error("map order " + std::to_string(m.order()) +
                             " does not match modulation order " + std::to_string(c.order()));
  }
  return m;
}

std::string describe_config(const SimConfig& cfg) {
  std::ostringstream os;
  os << "scheme=" << scheme_token(cfg.scheme) << " na=" << cfg.n_a << " nb=" << cfg.n_b
     << " nr=" << cfg.n_r << " mod=" << cfg.modulation << " phase=" << phase_token(cfg.phase)
     << " metric=" << metric_token(cfg.metric) << " snr=" << cfg.snr_start_db << ":"
     << cfg.snr_step_db << ":" << cfg.snr_stop_db << " seed=" << cfg.seed
     << " target-errors=" << cfg.target_errors << " trials<=" << cfg.max_trials;
  return os.str();
}

int run_sweep_command(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  SimConfig cfg = inv.cfg;
  const auto constellation = Constellation::from_token(cfg.modulation);
  if (!inv.map_file.empty()) {
    const NetworkMap m = resolve_map(inv, constellation);
    cfg.map_table.assign(m.order() * m.order(), 0);
    for (unsigned a = 0; a < m.order(); ++a) {
      for (unsigned b = 0; b < m.order(); ++b) cfg.map_table[a * m.order() + b] = m.map(a, b);
    }
  }
  cfg.validate();

  std::ofstream file;
  if (!inv.out_path.empty()) {
    file.open(inv.out_path);
    if (!file) {
      err << "error: cannot open output file: " << inv.out_path << "\n";
      return 1;
    }
  }
  std::ostream& csv = inv.out_path.empty() ? out : file;

  csv << "# pncsim " << (cfg.phase == Phase::bc ? "bc" : "sweep") << " "
      << describe_config(cfg) << "\n";
  csv << csv_header() << "\n";
  std::vector<SerEstimate> points;
  for (const double snr : sweep_points(cfg)) {
    const SerEstimate p = run_point(cfg, snr);
    points.push_back(p);
    csv << csv_row(cfg, p) << "\n";
    csv.flush();
    if (!csv) {
      err << "error: write failure\n";
      return 1;
    }
  }

  std::uint64_t trials = 0;
  for (const auto& p : points) trials += p.trials;
  err << "# " << points.size() << " point(s), " << trials << " trials total\n";
  for (const auto& p : points) {
    if (!p.reached_target) {
      err << "# warning: " << p.snr_db << " dB point stopped at " << p.errors
          << " errors (target " << cfg.target_errors << ")\n";
    }
  }
  try {
    const DiversityFit fit = fit_diversity(points, cfg.snr_start_db, cfg.snr_stop_db);
    char line[160];
    std::snprintf(line, sizeof(line),
                  "# diversity slope %.3f per decade over %g-%g dB (%zu qualifying points)",
                  fit.slope, fit.lo_db, fit.hi_db, fit.used.size());
    err << line << "\n";
  } catch (const std::invalid_argument&) {
    err << "# diversity slope: fewer than two qualifying points\n";
  }
  return 0;
}

int run_geometry_command(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  const auto c = Constellation::from_token(inv.mod_token);
  const NetworkMap m = resolve_map(inv, c);
  const ClusterDifferenceProfile profile(c, m);
  const SingularStateList states = singular_fade_states(c, m);

  std::ofstream file;
  if (!inv.out_path.empty()) {
    file.open(inv.out_path);
    if (!file) {
      err << "error: cannot open output file: " << inv.out_path << "\n";
      return 1;
    }
  }
  std::ostream& csv = inv.out_path.empty() ? out : file;

  char line[160];
  csv << "# pncsim geometry mod=" << inv.mod_token << " grid=" << inv.grid << "\n";
  csv << "# singular fade states: " << states.ratios.size()
      << " finite nonzero; gamma=0 and gamma=inf always singular\n";
  for (const Complex g : states.ratios) {
    std::snprintf(line, sizeof(line), "# singular_state %.12g %.12g", g.real(), g.imag());
    csv << line << "\n";
  }
  csv << "re_gamma,im_gamma,d_min\n";
  for (unsigned i = 0; i < inv.grid; ++i) {
    const double re = inv.grid == 1 ? inv.re_min
                                    : inv.re_min + (inv.re_max - inv.re_min) * i / (inv.grid - 1);
    for (unsigned j = 0; j < inv.grid; ++j) {
      const double im = inv.grid == 1
                            ? inv.im_min
                            : inv.im_min + (inv.im_max - inv.im_min) * j / (inv.grid - 1);
      const double d = std::sqrt(profile.min_distance_sq(Complex{re, im}, Complex{1.0, 0.0}));
      std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g", re, im, d);
      csv << line << "\n";
    }
  }
  if (!csv) {
    err << "error: write failure\n";
    return 1;
  }
  return 0;
}

int run_validate_map_command(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  try {
    const NetworkMap m = NetworkMap::load_file(inv.map_file);
    out << "valid Latin square (order " << m.order() << ")\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

std::variant<CliInvocation, int> parse_cli(const std::vector<std::string>& args,
                                           std::ostream& out, std::ostream& err) {
  CliInvocation inv;
  CLI::App app{"Link-level simulator for physical-layer network coding over the "
               "two-way relay channel"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand(
      "sweep", "Monte Carlo SER sweep over Es/N0 (MA phase by default)");
  add_engine_flags(sweep, inv, true);
  sweep->add_option_function<std::string>(
           "--phase", [&inv](const std::string& v) { inv.cfg.phase = phase_from_token(v); },
           "Simulated phase: ma|bc|e2e (default ma)")
      ->check(CLI::IsMember({"ma", "bc", "e2e"}));
  sweep->add_option_function<std::string>(
           "--metric", [&inv](const std::string& v) { inv.cfg.metric = metric_from_token(v); },
           "MA error metric: ncs|pair (default ncs)")
      ->check(CLI::IsMember({"ncs", "pair"}));

  auto* geometry = app.add_subcommand(
      "geometry", "Singular fade states and a d_min grid over the gamma plane (CSV)");
  geometry->add_option("--mod", inv.mod_token, "Modulation: bpsk|qpsk|8psk|16psk")
      ->check(CLI::IsMember({"bpsk", "qpsk", "8psk", "16psk"}));
  geometry->add_option("--map-file", inv.map_file, "Denoising map file (default: XOR map)");
  geometry->add_option_function<std::string>(
      "--re", [&inv](const std::string& v) { parse_interval("--re", v, inv.re_min, inv.re_max); },
      "Real axis range lo:hi (default -2:2)");
  geometry->add_option_function<std::string>(
      "--im", [&inv](const std::string& v) { parse_interval("--im", v, inv.im_min, inv.im_max); },
      "Imaginary axis range lo:hi (default -2:2)");
  geometry->add_option("--grid", inv.grid, "Grid points per axis (default 81)")
      ->check(CLI::PositiveNumber);
  geometry->add_option("--out", inv.out_path, "Write CSV to this file instead of stdout");

  auto* bc = app.add_subcommand(
      "bc", "Broadcast-phase point-to-point SER calibration sweep");
  add_engine_flags(bc, inv, false);

  auto* validate = app.add_subcommand("validate-map", "Check a map file for the exclusive law");
  validate->add_option("file", inv.map_file, "Map file to validate")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run 'pncsim --help' for usage\n";
    return 2;
  }

  if (sweep->parsed()) {
    inv.command = CliInvocation::Command::sweep;
  } else if (geometry->parsed()) {
    inv.command = CliInvocation::Command::geometry;
  } else if (bc->parsed()) {
    inv.command = CliInvocation::Command::bc;
    inv.cfg.phase = Phase::bc;
    inv.cfg.scheme = Scheme::none;
    inv.cfg.n_a = inv.cfg.n_b = inv.cfg.n_r = 1;
  } else {
    inv.command = CliInvocation::Command::validate_map;
  }

  // Subcommand help was already handled; a parsed subcommand with bad
  // domain values surfaces when the invocation runs.
  return inv;
}

int run_invocation(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  try {
    switch (inv.command) {
      case CliInvocation::Command::sweep:
        return run_sweep_command(inv, out, err);
      case CliInvocation::Command::bc:
        return run_sweep_command(inv, out, err);
      case CliInvocation::Command::geometry:
        return run_geometry_command(inv, out, err);
      case CliInvocation::Command::validate_map:
        return run_validate_map_command(inv, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace pncsim::cli
