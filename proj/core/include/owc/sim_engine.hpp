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

#ifndef OWC_SIM_ENGINE_HPP
#define OWC_SIM_ENGINE_HPP

#include <functional>
#include <random>
#include <vector>

#include "owc/rng.hpp"
#include "owc/scenario.hpp"

// Monte-Carlo orchestration of the alpha sweeps. One trial = one fresh user
// drop. Every trial derives its own rng substream from (seed, index, tag), so
// results are a pure function of the config and identical for any worker
// count; trial indices are shared across alpha points (common random numbers
// across the sweep).

namespace owc::sim {

// One alpha point of the sweep.
struct SweepRow {
  double alpha = 0.0;

  double ber_noma_perfect = 0.0;
  double ber_noma_imperfect = 0.0;
  double ber_rlnc_perfect = 0.0;
  double ber_rlnc_imperfect = 0.0;

  double rate_noma_sum = 0.0;
  double rate_oma_sum = 0.0;
  double sinr_g1_db = 0.0;
  double sinr_g2_db = 0.0;
  bool feasible = false;  // ergodic group rates both >= r_min

  // 95% CI half-widths (nan when trials == 1 or the experiment was skipped).
  double ci_ber_noma_perfect = 0.0;
  double ci_ber_noma_imperfect = 0.0;
  double ci_ber_rlnc_perfect = 0.0;
  double ci_ber_rlnc_imperfect = 0.0;
};

// Accumulated error weights (in bits) of one BER trial, for both coding
// schemes under both SIC modes, measured on common random numbers.
struct BerTally {
  double noma_perfect = 0.0;
  double noma_imperfect = 0.0;
  double rlnc_perfect = 0.0;
  double rlnc_imperfect = 0.0;
  double source_bits = 0.0;
};

struct RateSample {
  double group1_rate = 0.0;  // min-member NOMA rate, bits/s/Hz
  double group2_rate = 0.0;
  double oma_sum = 0.0;
  double sinr1_mean = 0.0;  // linear, averaged over group members
  double sinr2_mean = 0.0;
  bool feasible = false;

  double noma_sum() const { return group1_rate + group2_rate; }
};

// Strong-user bit error probability under imperfect (detect-and-subtract)
// SIC, calibrated against the bit-exact symbol path: one alpha, a gamma grid
// in 0.1 dB steps covering the scenario's reachable SNR range, 1e5 symbols
// per cell, linear interpolation in dB.
class SicCalibration {
 public:
  static SicCalibration build(const ScenarioConfig& config, double alpha,
                              std::size_t alpha_index, int workers);

  double ber(double snr) const;

  std::size_t cells() const { return ber_.size(); }

 private:
  double db_lo_ = 0.0;
  double db_step_ = 0.1;
  std::vector<double> ber_;
};

// One BER trial: drop + grouping, one frame per group, simultaneous
// transmission (group 1 stream as the high-power bits, group 2 as the
// low-power bits). Plain tally counts raw detected-bit errors over the K
// source packets; RLNC tally sends N coded packets, erases any packet with a
// bit error (ideal detection), decodes survivors, and charges 8L/2 expected
// error bits per unrecovered source packet. `calibration` is required in
// semi-analytic mode and ignored in bit-exact mode.
BerTally run_trial_ber(std::mt19937_64& rng, const ScenarioConfig& config, double alpha,
                       const SicCalibration* calibration);

// One rate trial: drop + grouping, per-group multicast rates at the weakest
// member, OMA baseline at half airtime and full power.
RateSample run_trial_rate(std::mt19937_64& rng, const ScenarioConfig& config, double alpha);

struct SweepOptions {
  bool with_ber = true;  // sweep-rate runs with_ber = false (BER columns nan)
  int workers = 1;
  std::function<void(const SweepRow&)> on_row;  // progress, called per alpha
};

std::vector<SweepRow> run_sweep(const ScenarioConfig& config, const SweepOptions& options = {});

namespace detail {

// Expected frame-recovery probability for a user whose packets erase
// independently with probability erasure_p: Binomial(N, 1-p) survivors, then
// the GF(256) full-rank probability.
double frame_recovery_probability(double erasure_p, std::size_t generation_size,
                                  std::size_t coded_packets);

// 1 - (1 - bit_error_p)^(8 L), computed stably for small probabilities.
double packet_erasure_probability(double bit_error_p, std::size_t payload_bytes);

}  // namespace detail

}  // namespace owc::sim

#endif  // OWC_SIM_ENGINE_HPP
