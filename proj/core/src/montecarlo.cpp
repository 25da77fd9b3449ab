#include "pncsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace pncsim {

ErrorMetric metric_from_token(std::string_view token) {
  if (token == "ncs") return ErrorMetric::ncs;
  if (token == "pair") return ErrorMetric::pair;
  throw std::invalid_argument("unknown error metric: " + std::string(token));
}

Phase phase_from_token(std::string_view token) {
  if (token == "ma") return Phase::ma;
  if (token == "bc") return Phase::bc;
  if (token == "e2e") return Phase::e2e;
  throw std::invalid_argument("unknown phase: " + std::string(token));
}

std::string_view metric_token(ErrorMetric m) {
  return m == ErrorMetric::ncs ? "ncs" : "pair";
}

std::string_view phase_token(Phase p) {
  switch (p) {
    case Phase::ma: return "ma";
    case Phase::bc: return "bc";
    case Phase::e2e: return "e2e";
  }
  return "?";
}

void SimConfig::validate() const {
  if (n_a < 1 || n_b < 1 || n_r < 1) {
    throw std::invalid_argument("antenna counts must be >= 1");
  }
  if (!(snr_start_db <= snr_stop_db)) {
    throw std::invalid_argument("snr sweep start must be <= stop");
  }
  if (!(snr_step_db > 0.0)) throw std::invalid_argument("snr step must be > 0");
  if (max_trials < 1) throw std::invalid_argument("max_trials must be >= 1");
  if (target_errors < 1) throw std::invalid_argument("target_errors must be >= 1");
  const auto c = Constellation::from_token(modulation);
  if (!map_table.empty()) {
    const auto m = NetworkMap::from_table(c.order(), map_table);
    if (auto why = m.violation()) {
      throw std::invalid_argument("map table violates the exclusive law: " + *why);
    }
  }
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return {0.5, 0.5};
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2n = z * z / nn;
  const double denom = 1.0 + z2n;
  const double center = (p + z2n / 2.0) / denom;
  const double hw = z * std::sqrt(p * (1.0 - p) / nn + z2n / (4.0 * nn)) / denom;
  return {center, hw};
}

namespace {

constexpr std::uint64_t kBatchTrials = 1024;
constexpr std::uint64_t kMaxRoundBatches = 1024;

struct EngineContext {
  const SimConfig& cfg;
  Constellation c;
  NetworkMap map;
  ClusterDifferenceProfile profile;
  double n0;
  std::size_t ma_rows;  // received dimensions in the MA phase

  EngineContext(const SimConfig& cfg_, double snr_db)
      : cfg(cfg_),
        c(Constellation::from_token(cfg_.modulation)),
        map(cfg_.map_table.empty() ? NetworkMap::xor_map(c.order())
                                   : NetworkMap::from_table(c.order(), cfg_.map_table)),
        profile(c, map),
        n0(snr_db_to_n0(snr_db).n0),
        ma_rows(cfg_.scheme == Scheme::jas ? 1 : cfg_.n_r) {}
};

struct TrialScratch {
  ChannelSet ch;
  std::array<Complex, 2> selected;  // single-row columns for JAS
  std::vector<Complex> noise;
  std::vector<Complex> y;

  explicit TrialScratch(const EngineContext& ctx) {
    ch.n_a = ctx.cfg.n_a;
    ch.n_b = ctx.cfg.n_b;
    ch.n_r = ctx.cfg.n_r;
    ch.a_coeff.resize(std::size_t{ch.n_a} * ch.n_r);
    ch.b_coeff.resize(std::size_t{ch.n_b} * ch.n_r);
    noise.resize(ctx.ma_rows);
    y.resize(ctx.ma_rows);
  }
};

// MA-phase trial. Stream draw order: channels (A then B), both messages,
// then the noise vector.
bool run_ma_trial(const EngineContext& ctx, TrialScratch& s, std::uint64_t trial,
                  JointEstimate* est_out = nullptr, unsigned* sa_out = nullptr,
                  unsigned* sb_out = nullptr, RandomStream* rs_out = nullptr) {
  RandomStream rs(ctx.cfg.seed, trial);
  draw_channels_into(rs, s.ch);
  const SelectionResult sel = select_antennas(ctx.cfg.scheme, s.ch, ctx.profile);

  std::span<const Complex> col_a, col_b;
  if (sel.r_idx) {
    s.selected[0] = s.ch.a(sel.a_idx, *sel.r_idx);
    s.selected[1] = s.ch.b(sel.b_idx, *sel.r_idx);
    col_a = {&s.selected[0], 1};
    col_b = {&s.selected[1], 1};
  } else {
    col_a = s.ch.a_column(sel.a_idx);
    col_b = s.ch.b_column(sel.b_idx);
  }

  const unsigned order = ctx.c.order();
  const unsigned s_a = rs.next_symbol(order);
  const unsigned s_b = rs.next_symbol(order);
  draw_noise_into(rs, {ctx.n0}, s.noise);
  ma_transmit_into(col_a, col_b, s_a, s_b, s.noise, ctx.c, s.y);
  const JointEstimate est = ml_joint_detect(s.y, col_a, col_b, ctx.c, ctx.map);

  if (est_out) *est_out = est;
  if (sa_out) *sa_out = s_a;
  if (sb_out) *sb_out = s_b;
  if (rs_out) *rs_out = rs;

  if (ctx.cfg.metric == ErrorMetric::pair) {
    return est.s_a != s_a || est.s_b != s_b;
  }
  return est.ncs != ctx.map.map(s_a, s_b);
}

// BC-phase trial. The NCS value is drawn directly and the second message
// recovered through the map inverse; the realized symbol stream is then
// map-invariant while (s_a, s_b) stays uniform on Z_M^2.
bool run_bc_trial(const EngineContext& ctx, TrialScratch&, std::uint64_t trial) {
  RandomStream rs(ctx.cfg.seed, trial);
  const Complex h_prime = rs.next_cgauss(1.0);
  const unsigned order = ctx.c.order();
  const unsigned s_a = rs.next_symbol(order);
  const unsigned ncs = rs.next_symbol(order);
  const unsigned s_b = ctx.map.invert_second(s_a, ncs);
  const Complex y = h_prime * ctx.c.map_symbol(ncs) + rs.next_cgauss(ctx.n0);
  return bc_decode(y, h_prime, s_a, ctx.c, ctx.map) != s_b;
}

// Mirror of bc_decode for user B: own message in the map's second slot.
unsigned bc_decode_at_b(Complex y, Complex h_prime, unsigned own_msg,
                        const Constellation& c, const NetworkMap& m) {
  unsigned best_s = 0;
  double best_sq = std::numeric_limits<double>::infinity();
  for (unsigned s = 0; s < c.order(); ++s) {
    const double sq = std::norm(y - h_prime * c.map_symbol(m.map(s, own_msg)));
    if (sq < best_sq) {
      best_sq = sq;
      best_s = s;
    }
  }
  return best_s;
}

// Full two-slot exchange: MA trial, relay forwards the *detected* NCS,
// then independent BC links to both users. Stream draw order after the MA
// draws: h'_A, h'_B, n_A, n_B. Error = either user misdecodes.
bool run_e2e_trial(const EngineContext& ctx, TrialScratch& s, std::uint64_t trial) {
  JointEstimate est;
  unsigned s_a = 0, s_b = 0;
  RandomStream rs(0, 0);
  run_ma_trial(ctx, s, trial, &est, &s_a, &s_b, &rs);
  const Complex x_r = ctx.c.map_symbol(est.ncs);
  const Complex hpa = rs.next_cgauss(1.0);
  const Complex hpb = rs.next_cgauss(1.0);
  const Complex y_a = hpa * x_r + rs.next_cgauss(ctx.n0);
  const Complex y_b = hpb * x_r + rs.next_cgauss(ctx.n0);
  const unsigned sb_at_a = bc_decode(y_a, hpa, s_a, ctx.c, ctx.map);
  const unsigned sa_at_b = bc_decode_at_b(y_b, hpb, s_b, ctx.c, ctx.map);
  return sb_at_a != s_b || sa_at_b != s_a;
}

using TrialFn = bool (*)(const EngineContext&, TrialScratch&, std::uint64_t);

bool ma_trial_adapter(const EngineContext& ctx, TrialScratch& s, std::uint64_t t) {
  return run_ma_trial(ctx, s, t);
}

// Deterministic batched driver. Trials are partitioned into fixed batches
// of kBatchTrials; rounds of batches run in parallel (speculatively), then
// per-batch error counts fold sequentially under the stop rule. The result
// is a pure function of (cfg, snr_db), independent of worker count.
SerEstimate drive(const EngineContext& ctx, double snr_db, TrialFn trial_fn) {
  const SimConfig& cfg = ctx.cfg;
  const std::uint64_t total_batches =
      (cfg.max_trials + kBatchTrials - 1) / kBatchTrials;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = cfg.workers == 0 ? hw : cfg.workers;

  std::uint64_t errors = 0;
  std::uint64_t trials_done = 0;
  std::uint64_t next_batch = 0;
  std::uint64_t round_batches = 1;
  bool stop = false;

  std::vector<std::uint64_t> batch_errors;
  while (!stop && next_batch < total_batches) {
    const std::uint64_t round =
        std::min(round_batches, total_batches - next_batch);
    batch_errors.assign(round, 0);

    auto worker = [&](unsigned w) {
      TrialScratch scratch(ctx);
      for (std::uint64_t b = w; b < round; b += workers) {
        const std::uint64_t lo = (next_batch + b) * kBatchTrials;
        const std::uint64_t hi = std::min(lo + kBatchTrials, cfg.max_trials);
        std::uint64_t e = 0;
        for (std::uint64_t t = lo; t < hi; ++t) {
          e += trial_fn(ctx, scratch, t) ? 1 : 0;
        }
        batch_errors[b] = e;
      }
    };

    if (workers == 1 || round == 1) {
      TrialScratch scratch(ctx);
      for (std::uint64_t b = 0; b < round; ++b) {
        const std::uint64_t lo = (next_batch + b) * kBatchTrials;
        const std::uint64_t hi = std::min(lo + kBatchTrials, cfg.max_trials);
        std::uint64_t e = 0;
        for (std::uint64_t t = lo; t < hi; ++t) {
          e += trial_fn(ctx, scratch, t) ? 1 : 0;
        }
        batch_errors[b] = e;
      }
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
      for (auto& th : pool) th.join();
    }

    for (std::uint64_t b = 0; b < round; ++b) {
      const std::uint64_t hi =
          std::min((next_batch + b + 1) * kBatchTrials, cfg.max_trials);
      errors += batch_errors[b];
      trials_done = hi;
      if (errors >= cfg.target_errors || trials_done >= cfg.max_trials) {
        stop = true;
        break;
      }
    }
    next_batch += round;
    round_batches = std::min(round_batches * 2, kMaxRoundBatches);
  }

  SerEstimate est;
  est.snr_db = snr_db;
  est.trials = trials_done;
  est.errors = errors;
  est.ser = trials_done ? static_cast<double>(errors) / static_cast<double>(trials_done) : 0.0;
  est.ci95 = wilson_interval(errors, trials_done).second;
  est.reached_target = errors >= cfg.target_errors;
  return est;
}

}  // namespace

SerEstimate run_point(const SimConfig& cfg, double snr_db) {
  cfg.validate();
  const EngineContext ctx(cfg, snr_db);
  switch (cfg.phase) {
    case Phase::ma: return drive(ctx, snr_db, &ma_trial_adapter);
    case Phase::bc: return drive(ctx, snr_db, &run_bc_trial);
    case Phase::e2e: return drive(ctx, snr_db, &run_e2e_trial);
  }
  throw std::logic_error("unreachable phase");
}

SerEstimate run_bc_point(const SimConfig& cfg, double snr_db) {
  if (cfg.phase != Phase::bc) {
    throw std::invalid_argument("run_bc_point requires phase == bc");
  }
  cfg.validate();
  const EngineContext ctx(cfg, snr_db);
  return drive(ctx, snr_db, &run_bc_trial);
}

std::vector<double> sweep_points(const SimConfig& cfg) {
  std::vector<double> out;
  for (std::uint64_t i = 0;; ++i) {
    const double snr = cfg.snr_start_db + static_cast<double>(i) * cfg.snr_step_db;
    if (snr > cfg.snr_stop_db + 1e-9) break;
    out.push_back(snr);
  }
  return out;
}

std::vector<SerEstimate> run_sweep(const SimConfig& cfg,
                                   const std::function<void(const SerEstimate&)>& on_point) {
  cfg.validate();
  std::vector<SerEstimate> out;
  for (const double snr : sweep_points(cfg)) {
    out.push_back(run_point(cfg, snr));
    if (on_point) on_point(out.back());
  }
  return out;
}

DiversityFit fit_diversity(std::span<const SerEstimate> points, double lo_db,
                           double hi_db, std::uint64_t min_errors, bool least_squares) {
  std::vector<SerEstimate> q;
  for (const auto& p : points) {
    if (p.snr_db >= lo_db - 1e-9 && p.snr_db <= hi_db + 1e-9 &&
        p.errors >= min_errors && p.ser > 0.0) {
      q.push_back(p);
    }
  }
  std::sort(q.begin(), q.end(),
            [](const SerEstimate& x, const SerEstimate& y) { return x.snr_db < y.snr_db; });
  if (q.size() < 2 || q.front().snr_db == q.back().snr_db) {
    throw std::invalid_argument("fit_diversity needs two qualifying points at distinct SNRs");
  }

  DiversityFit fit;
  fit.lo_db = q.front().snr_db;
  fit.hi_db = q.back().snr_db;
  fit.used = q;
  if (!least_squares) {
    fit.slope = -(std::log10(q.back().ser) - std::log10(q.front().ser)) /
                ((q.back().snr_db - q.front().snr_db) / 10.0);
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : q) {
      const double x = p.snr_db / 10.0;
      const double y = std::log10(p.ser);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(q.size());
    fit.slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return fit;
}

std::string csv_header() { return "scheme,na,nb,nr,mod,metric,snr_db,trials,errors,ser,ci95"; }

namespace {

std::string_view csv_metric_label(const SimConfig& cfg) {
  switch (cfg.phase) {
    case Phase::ma: return metric_token(cfg.metric);
    case Phase::bc: return "bc";
    case Phase::e2e: return "e2e";
  }
  return "?";
}

}  // namespace

std::string csv_row(const SimConfig& cfg, const SerEstimate& p) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%u,%u,%u,%s,%s,%g,%llu,%llu,%.6e,%.6e",
                std::string(scheme_token(cfg.scheme)).c_str(), cfg.n_a, cfg.n_b, cfg.n_r,
                cfg.modulation.c_str(), std::string(csv_metric_label(cfg)).c_str(),
                p.snr_db, static_cast<unsigned long long>(p.trials),
                static_cast<unsigned long long>(p.errors), p.ser, p.ci95);
  return buf;
}

}  // namespace pncsim
