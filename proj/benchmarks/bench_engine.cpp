// Copyright 2026 The owcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "owc/noma_phy.hpp"
#include "owc/sim_engine.hpp"

namespace {

void BM_SymbolDetection(benchmark::State& state) {
  owc::phy::NomaLink link;
  link.a1 = 6.0;
  link.a2 = 2.0;
  link.sigma = 1.0;
  link.sic = owc::phy::SicMode::imperfect;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (auto _ : state) {
    const std::uint64_t bits = rng();
    const bool b1 = bits & 1;
    const bool b2 = bits & 2;
    const double y = (b1 ? link.a1 : 0.0) + (b2 ? link.a2 : 0.0) + noise(rng);
    benchmark::DoNotOptimize(owc::phy::sic_detect_strong(y, link, b1).strong_bit);
  }
}
BENCHMARK(BM_SymbolDetection);

void BM_TrialRate(benchmark::State& state) {
  owc::sim::ScenarioConfig cfg;
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto rng = owc::sim::substream(1, i++, owc::sim::StreamTag::rate_trial);
    benchmark::DoNotOptimize(owc::sim::run_trial_rate(rng, cfg, 0.25).noma_sum());
  }
}
BENCHMARK(BM_TrialRate);

void BM_TrialBerSemiAnalytic(benchmark::State& state) {
  owc::sim::ScenarioConfig cfg;
  cfg.fidelity = owc::sim::Fidelity::semi_analytic;
  const auto calib = owc::sim::SicCalibration::build(cfg, 0.25, 0, 2);
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto rng = owc::sim::substream(1, i++, owc::sim::StreamTag::ber_trial);
    benchmark::DoNotOptimize(owc::sim::run_trial_ber(rng, cfg, 0.25, &calib).rlnc_imperfect);
  }
}
BENCHMARK(BM_TrialBerSemiAnalytic);

void BM_TrialBerBitExact(benchmark::State& state) {
  owc::sim::ScenarioConfig cfg;
  cfg.fidelity = owc::sim::Fidelity::bit_exact;
  cfg.payload_bytes = static_cast<std::size_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto rng = owc::sim::substream(1, i++, owc::sim::StreamTag::ber_trial);
    benchmark::DoNotOptimize(owc::sim::run_trial_ber(rng, cfg, 0.25, nullptr).rlnc_imperfect);
  }
  // bits pushed through the channel per trial: (K + N) * 8L * users
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>((cfg.generation_size + cfg.coded_packets) *
                                                    8 * cfg.payload_bytes * 10));
}
BENCHMARK(BM_TrialBerBitExact)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
