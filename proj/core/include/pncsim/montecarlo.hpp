// Monte Carlo engine: per-trial simulation of the MA phase (optionally the
// BC phase or the full two-slot exchange), SER aggregation with confidence
// intervals over an Es/N0 sweep, and empirical diversity-order fitting.
//
// Determinism contract: all per-trial randomness derives from
// (seed, trial index) via counter-based streams, trials are accounted in
// fixed-size batches, and the stop rule is applied to the batch sequence,
// so every result is bit-identical for any worker count.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pncsim/selection.hpp"
#include "pncsim/transceiver.hpp"

namespace pncsim {

enum class ErrorMetric { ncs, pair };
enum class Phase { ma, bc, e2e };

ErrorMetric metric_from_token(std::string_view token);
Phase phase_from_token(std::string_view token);
std::string_view metric_token(ErrorMetric m);
std::string_view phase_token(Phase p);

struct SimConfig {
  unsigned n_a = 1, n_b = 1, n_r = 1;
  std::string modulation = "qpsk";
  Scheme scheme = Scheme::none;
  double snr_start_db = 0.0;
  double snr_step_db = 5.0;
  double snr_stop_db = 30.0;
  std::uint64_t max_trials = 100'000'000;
  std::uint64_t target_errors = 200;
  std::uint64_t seed = 0;
  ErrorMetric metric = ErrorMetric::ncs;
  Phase phase = Phase::ma;
  unsigned workers = 0;  // 0 = hardware concurrency
  // Optional custom denoising map; empty = XOR map of the modulation order.
  std::vector<unsigned> map_table;

  // Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct SerEstimate {
  double snr_db = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double ser = 0.0;
  double ci95 = 0.0;           // Wilson 95% half-width
  bool reached_target = false; // false flags a starved (or zero-error) point
};

// 95% Wilson score interval for k successes in n trials, returned as
// (center, half-width). The quoted ci95 of a SerEstimate is the half-width;
// the interval itself is center +/- half-width.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n);

struct DiversityFit {
  double slope = 0.0;     // empirical diversity order
  double lo_db = 0.0;     // extreme qualifying points actually used
  double hi_db = 0.0;
  std::vector<SerEstimate> used;
};

// Runs trials at one Es/N0 point until target_errors errors have been seen
// at a batch boundary or max_trials trials are exhausted. Dispatches on
// cfg.phase.
SerEstimate run_point(const SimConfig& cfg, double snr_db);

// run_point at every point of the sweep grid; on_point (when set) fires as
// each point completes.
std::vector<SerEstimate> run_sweep(
    const SimConfig& cfg, const std::function<void(const SerEstimate&)>& on_point = {});

// The sweep grid implied by cfg (start, start+step, ..., <= stop).
std::vector<double> sweep_points(const SimConfig& cfg);

// Point-to-point BC-phase calibration: relay transmits the mapped NCS of a
// uniform message pair over Rayleigh fading; user A decodes its partner's
// message. Requires cfg.phase == Phase::bc.
SerEstimate run_bc_point(const SimConfig& cfg, double snr_db);

// log10-SER slope per decade of Es/N0 across [lo_db, hi_db], taken between
// the two extreme qualifying points (>= min_errors errors each); set
// least_squares to regress over all qualifying points instead. Throws
// std::invalid_argument with fewer than two qualifying points.
DiversityFit fit_diversity(std::span<const SerEstimate> points, double lo_db,
                           double hi_db, std::uint64_t min_errors = 50,
                           bool least_squares = false);

// CSV surface: "scheme,na,nb,nr,mod,metric,snr_db,trials,errors,ser,ci95".
std::string csv_header();
std::string csv_row(const SimConfig& cfg, const SerEstimate& point);

}  // namespace pncsim
