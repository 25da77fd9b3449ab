#include <benchmark/benchmark.h>

#include "pncsim/pncsim.hpp"

using namespace pncsim;

static void BM_PhiloxU64(benchmark::State& state) {
  RandomStream rs(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rs.next_u64());
}
BENCHMARK(BM_PhiloxU64);

static void BM_ComplexGaussian(benchmark::State& state) {
  RandomStream rs(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rs.next_cgauss(1.0));
}
BENCHMARK(BM_ComplexGaussian);

static void BM_DrawChannels(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  ChannelSet ch;
  ch.n_a = ch.n_b = n;
  ch.n_r = 2;
  ch.a_coeff.resize(n * 2);
  ch.b_coeff.resize(n * 2);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    RandomStream rs(7, trial++);
    draw_channels_into(rs, ch);
    benchmark::DoNotOptimize(ch.a_coeff.data());
  }
}
BENCHMARK(BM_DrawChannels)->Arg(1)->Arg(2)->Arg(4);

static void BM_MinDistanceExhaustive(benchmark::State& state) {
  const auto c = Constellation::psk(static_cast<unsigned>(state.range(0)));
  const auto m = NetworkMap::xor_map(c.order());
  const auto h = ChannelMatrix::siso({0.7, 0.4}, {-0.5, 0.9});
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_intercluster_distance(h, c, m).d_min);
  }
}
BENCHMARK(BM_MinDistanceExhaustive)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_MinDistanceProfile(benchmark::State& state) {
  const auto c = Constellation::psk(static_cast<unsigned>(state.range(0)));
  const auto m = NetworkMap::xor_map(c.order());
  const ClusterDifferenceProfile profile(c, m);
  const Complex ha{0.7, 0.4}, hb{-0.5, 0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile.min_distance_sq(ha, hb));
  }
}
BENCHMARK(BM_MinDistanceProfile)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_MlJointDetect(benchmark::State& state) {
  const auto c = Constellation::psk(static_cast<unsigned>(state.range(0)));
  const auto m = NetworkMap::xor_map(c.order());
  RandomStream rs(3, 3);
  const std::vector<Complex> col_a{rs.next_cgauss(1.0), rs.next_cgauss(1.0)};
  const std::vector<Complex> col_b{rs.next_cgauss(1.0), rs.next_cgauss(1.0)};
  const std::vector<Complex> y{rs.next_cgauss(2.0), rs.next_cgauss(2.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml_joint_detect(y, col_a, col_b, c, m).ncs);
  }
}
BENCHMARK(BM_MlJointDetect)->Arg(4)->Arg(16);

static void BM_Tas2Select(benchmark::State& state) {
  const auto c = Constellation::qpsk();
  const auto m = NetworkMap::xor_map(4);
  const ClusterDifferenceProfile profile(c, m);
  RandomStream rs(5, 0);
  const auto ch = draw_channels(rs, static_cast<unsigned>(state.range(0)),
                                static_cast<unsigned>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tas2_select(ch, profile).metric);
  }
}
BENCHMARK(BM_Tas2Select)->Arg(2)->Arg(4);

static void BM_MaTrialThroughput(benchmark::State& state) {
  // One full engine point with a fixed trial budget, reported per trial.
  SimConfig cfg;
  cfg.n_a = 2;
  cfg.n_b = 2;
  cfg.n_r = static_cast<unsigned>(state.range(0));
  cfg.scheme = Scheme::tas2;
  cfg.workers = 1;
  cfg.max_trials = 1 << 16;
  cfg.target_errors = 1ULL << 62;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_point(cfg, 20.0).errors);
  }
  state.SetItemsProcessed(state.iterations() * cfg.max_trials);
}
BENCHMARK(BM_MaTrialThroughput)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
