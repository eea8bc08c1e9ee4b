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

#include "owc/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "owc/rlnc.hpp"

namespace owc::sim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline bool payload_bit(const std::vector<std::uint8_t>& payload, std::size_t bit) {
  return (payload[bit >> 3] >> (7 - (bit & 7))) & 1;  // MSB first
}

// Static block partition of [0, count) over `workers` threads. Each index is
// handled exactly once, so writing to per-index slots is race-free and the
// result is independent of the partition.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  const auto n = static_cast<std::size_t>(std::max(workers, 1));
  if (n <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (std::size_t w = 0; w < n; ++w) {
    const std::size_t lo = count * w / n;
    const std::size_t hi = count * (w + 1) / n;
    pool.emplace_back([&fn, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) {
        fn(i);
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
}

struct UserLink {
  double gain = 0.0;
  double snr = 0.0;
  phy::NomaLink perfect;    // sic = perfect
  phy::NomaLink imperfect;  // sic = imperfect
  bool strong = false;
};

std::vector<UserLink> drop_and_link(std::mt19937_64& rng, const ScenarioConfig& cfg,
                                    const phy::PowerAllocation& alloc) {
  auto users = channel::drop_users(rng, 2 * cfg.users_per_group, cfg.geometry, cfg.led, cfg.pd);
  auto [weak, strong] = channel::form_groups(std::move(users));

  const double sigma = cfg.noise_sigma();
  std::vector<UserLink> links;
  links.reserve(2 * cfg.users_per_group);
  const auto add = [&](const channel::UserTerminal& u, bool is_strong) {
    UserLink l;
    l.gain = u.gain;
    l.snr = channel::link_snr(u.gain, cfg.led.power_w, cfg.pd, cfg.noise_psd, cfg.bandwidth_hz);
    l.perfect = phy::make_link(u.gain, cfg.pd, alloc, sigma, phy::SicMode::perfect);
    l.imperfect = phy::make_link(u.gain, cfg.pd, alloc, sigma, phy::SicMode::imperfect);
    l.strong = is_strong;
    links.push_back(l);
  };
  for (const auto& u : weak) {
    add(u, false);
  }
  for (const auto& u : strong) {
    add(u, true);
  }
  return links;
}

BerTally run_trial_ber_bitexact(std::mt19937_64& rng, const ScenarioConfig& cfg, double alpha) {
  const phy::PowerAllocation alloc(alpha, cfg.led.power_w);
  const auto links = drop_and_link(rng, cfg, alloc);

  const std::size_t K = cfg.generation_size;
  const std::size_t L = cfg.payload_bytes;
  const std::size_t N = cfg.coded_packets;
  const std::size_t bits_per_packet = 8 * L;
  const double sigma = cfg.noise_sigma();
  const double responsivity = cfg.pd.responsivity_a_per_w;

  const auto frame1 = rlnc::make_random_frame(rng, K, L);  // weak group's frame
  const auto frame2 = rlnc::make_random_frame(rng, K, L);  // strong group's frame

  std::normal_distribution<double> noise(0.0, sigma);
  BerTally tally;
  tally.source_bits = static_cast<double>(links.size() * K * bits_per_packet);

  // Phase 1: the K source packets of both groups, uncoded (plain NOMA).
  for (std::size_t pk = 0; pk < K; ++pk) {
    const auto& p1 = frame1.packet(pk);
    const auto& p2 = frame2.packet(pk);
    for (std::size_t t = 0; t < bits_per_packet; ++t) {
      const bool b1 = payload_bit(p1, t);
      const bool b2 = payload_bit(p2, t);
      const double x = phy::superpose(b1, b2, alloc);
      for (const auto& u : links) {
        const double y = responsivity * u.gain * x + noise(rng);
        if (!u.strong) {
          // Weak users never run SIC; both columns get the same contribution.
          const double err = phy::detect_weak(y, u.imperfect) != b1 ? 1.0 : 0.0;
          tally.noma_perfect += err;
          tally.noma_imperfect += err;
        } else {
          tally.noma_perfect += phy::sic_detect_strong(y, u.perfect, b1).strong_bit != b2;
          tally.noma_imperfect += phy::sic_detect_strong(y, u.imperfect, b1).strong_bit != b2;
        }
      }
    }
  }

  // Phase 2: N coded packets per group, transmitted the same way. A packet
  // with any detected-bit error is erased for that user (ideal detection);
  // survivors carry the exact coded payload into the user's decoder.
  std::vector<rlnc::CodedPacket> coded1, coded2;
  coded1.reserve(N);
  coded2.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    coded1.push_back(rlnc::encode(frame1, rlnc::draw_coefficients(rng, K)));
  }
  for (std::size_t n = 0; n < N; ++n) {
    coded2.push_back(rlnc::encode(frame2, rlnc::draw_coefficients(rng, K)));
  }

  const std::size_t user_count = links.size();
  // Erasure flags: weak users have one pattern, strong users one per SIC mode.
  std::vector<std::uint8_t> erased(user_count * N, 0);
  std::vector<std::uint8_t> erased_imp(user_count * N, 0);

  for (std::size_t n = 0; n < N; ++n) {
    const auto& c1 = coded1[n].payload;
    const auto& c2 = coded2[n].payload;
    for (std::size_t t = 0; t < bits_per_packet; ++t) {
      const bool b1 = payload_bit(c1, t);
      const bool b2 = payload_bit(c2, t);
      const double x = phy::superpose(b1, b2, alloc);
      for (std::size_t ui = 0; ui < user_count; ++ui) {
        const auto& u = links[ui];
        const double y = responsivity * u.gain * x + noise(rng);
        if (!u.strong) {
          if (phy::detect_weak(y, u.imperfect) != b1) {
            erased[ui * N + n] = 1;
          }
        } else {
          if (phy::sic_detect_strong(y, u.perfect, b1).strong_bit != b2) {
            erased[ui * N + n] = 1;
          }
          if (phy::sic_detect_strong(y, u.imperfect, b1).strong_bit != b2) {
            erased_imp[ui * N + n] = 1;
          }
        }
      }
    }
  }

  const double half_packet_bits = 0.5 * static_cast<double>(bits_per_packet);
  const auto decode_unrecovered = [&](const std::vector<rlnc::CodedPacket>& coded,
                                      const std::uint8_t* flags) {
    rlnc::Decoder dec(K, L);
    for (std::size_t n = 0; n < N; ++n) {
      if (!flags[n]) {
        dec.receive(coded[n]);
      }
    }
    return static_cast<double>(K - dec.recovered_indices().size());
  };

  for (std::size_t ui = 0; ui < user_count; ++ui) {
    if (!links[ui].strong) {
      const double err = decode_unrecovered(coded1, &erased[ui * N]) * half_packet_bits;
      tally.rlnc_perfect += err;
      tally.rlnc_imperfect += err;
    } else {
      tally.rlnc_perfect += decode_unrecovered(coded2, &erased[ui * N]) * half_packet_bits;
      tally.rlnc_imperfect += decode_unrecovered(coded2, &erased_imp[ui * N]) * half_packet_bits;
    }
  }
  return tally;
}

BerTally run_trial_ber_semianalytic(std::mt19937_64& rng, const ScenarioConfig& cfg, double alpha,
                                    const SicCalibration& calibration) {
  const phy::PowerAllocation alloc(alpha, cfg.led.power_w);
  const auto links = drop_and_link(rng, cfg, alloc);

  const std::size_t K = cfg.generation_size;
  const std::size_t L = cfg.payload_bytes;
  const std::size_t N = cfg.coded_packets;
  const double packet_bits = 8.0 * static_cast<double>(L);
  const double frame_bits = static_cast<double>(K) * packet_bits;

  BerTally tally;
  tally.source_bits = static_cast<double>(links.size()) * frame_bits;

  const auto rlnc_expected_errors = [&](double bit_error_p) {
    const double pe = detail::packet_erasure_probability(bit_error_p, L);
    const double p_rec = detail::frame_recovery_probability(pe, K, N);
    return static_cast<double>(K) * (1.0 - p_rec) * 0.5 * packet_bits;
  };

  for (const auto& u : links) {
    if (!u.strong) {
      const double p = phy::ber_weak_analytic(u.imperfect);
      tally.noma_perfect += p * frame_bits;
      tally.noma_imperfect += p * frame_bits;
      const double rl = rlnc_expected_errors(p);
      tally.rlnc_perfect += rl;
      tally.rlnc_imperfect += rl;
    } else {
      const double pp = phy::ber_strong_perfect_analytic(u.perfect);
      const double pi = calibration.ber(u.snr);
      tally.noma_perfect += pp * frame_bits;
      tally.noma_imperfect += pi * frame_bits;
      tally.rlnc_perfect += rlnc_expected_errors(pp);
      tally.rlnc_imperfect += rlnc_expected_errors(pi);
    }
  }
  return tally;
}

}  // namespace

namespace detail {

double packet_erasure_probability(double bit_error_p, std::size_t payload_bytes) {
  const double bits = 8.0 * static_cast<double>(payload_bytes);
  return -std::expm1(bits * std::log1p(-bit_error_p));
}

double frame_recovery_probability(double erasure_p, std::size_t generation_size,
                                  std::size_t coded_packets) {
  if (erasure_p >= 1.0) {
    return 0.0;
  }
  const auto N = coded_packets;
  const double log_s = std::log1p(-erasure_p);           // log survival probability
  const double log_e = erasure_p > 0.0 ? std::log(erasure_p) : 0.0;
  double p = 0.0;
  for (std::size_t s = generation_size; s <= N; ++s) {
    double log_pmf = std::lgamma(static_cast<double>(N) + 1.0) -
                     std::lgamma(static_cast<double>(s) + 1.0) -
                     std::lgamma(static_cast<double>(N - s) + 1.0) +
                     static_cast<double>(s) * log_s;
    if (N - s > 0) {
      if (erasure_p == 0.0) {
        continue;  // pmf is exactly zero
      }
      log_pmf += static_cast<double>(N - s) * log_e;
    }
    p += std::exp(log_pmf) *
         (1.0 - rlnc::rank_deficiency_probability(generation_size, s, 256.0));
  }
  return std::min(p, 1.0);
}

}  // namespace detail

SicCalibration SicCalibration::build(const ScenarioConfig& cfg, double alpha,
                                     std::size_t alpha_index, int workers) {
  constexpr std::size_t kSymbolsPerCell = 100000;
  constexpr double kStepDb = 0.1;

  const double snr_hi =
      channel::link_snr(channel::los_gain(cfg.geometry, cfg.led, cfg.pd,
                                          cfg.geometry.led_position[0],
                                          cfg.geometry.led_position[1]),
                        cfg.led.power_w, cfg.pd, cfg.noise_psd, cfg.bandwidth_hz);
  // Nudged inside the disc edge: exactly at the FOV boundary the gain could
  // round to the cutoff side and yield 0.
  const double edge = channel::sampling_radius(cfg.geometry, cfg.pd) * (1.0 - 1e-9);
  const double snr_lo =
      channel::link_snr(channel::los_gain(cfg.geometry, cfg.led, cfg.pd,
                                          cfg.geometry.led_position[0] + edge,
                                          cfg.geometry.led_position[1]),
                        cfg.led.power_w, cfg.pd, cfg.noise_psd, cfg.bandwidth_hz);

  SicCalibration table;
  table.db_step_ = kStepDb;
  // One spare cell on each side so boundary users never leave the grid.
  table.db_lo_ = std::floor(10.0 * std::log10(snr_lo) / kStepDb) * kStepDb - kStepDb;
  const double db_hi = std::ceil(10.0 * std::log10(snr_hi) / kStepDb) * kStepDb + kStepDb;
  const auto cells =
      static_cast<std::size_t>(std::round((db_hi - table.db_lo_) / kStepDb)) + 1;
  table.ber_.assign(cells, 0.0);

  parallel_for(cells, workers, [&](std::size_t ci) {
    const double snr = std::pow(10.0, (table.db_lo_ + static_cast<double>(ci) * kStepDb) / 10.0);
    // Normalized link: sigma = 1, amplitudes carry the full SNR dependence.
    phy::NomaLink link;
    link.a1 = 2.0 * (1.0 - alpha) * std::sqrt(snr);
    link.a2 = 2.0 * alpha * std::sqrt(snr);
    link.sigma = 1.0;
    link.sic = phy::SicMode::imperfect;

    auto rng = substream(cfg.seed, (alpha_index << 32) | ci, StreamTag::sic_calibration);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < kSymbolsPerCell; ++i) {
      const std::uint64_t bits = rng();
      const bool b1 = bits & 1;
      const bool b2 = bits & 2;
      const double y = (b1 ? link.a1 : 0.0) + (b2 ? link.a2 : 0.0) + noise(rng);
      errors += phy::sic_detect_strong(y, link, b1).strong_bit != b2;
    }
    table.ber_[ci] = static_cast<double>(errors) / static_cast<double>(kSymbolsPerCell);
  });
  return table;
}

double SicCalibration::ber(double snr) const {
  const double db = 10.0 * std::log10(snr);
  const double pos = (db - db_lo_) / db_step_;
  if (pos <= 0.0) {
    return ber_.front();
  }
  const double last = static_cast<double>(ber_.size() - 1);
  if (pos >= last) {
    return ber_.back();
  }
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return ber_[i] + frac * (ber_[i + 1] - ber_[i]);
}

BerTally run_trial_ber(std::mt19937_64& rng, const ScenarioConfig& cfg, double alpha,
                       const SicCalibration* calibration) {
  if (cfg.fidelity == Fidelity::bit_exact) {
    return run_trial_ber_bitexact(rng, cfg, alpha);
  }
  if (calibration == nullptr) {
    throw std::invalid_argument("sim: semi-analytic trials need a SIC calibration table");
  }
  return run_trial_ber_semianalytic(rng, cfg, alpha, *calibration);
}

RateSample run_trial_rate(std::mt19937_64& rng, const ScenarioConfig& cfg, double alpha) {
  const phy::PowerAllocation alloc(alpha, cfg.led.power_w);
  const auto links = drop_and_link(rng, cfg, alloc);
  const double eps = cfg.sic == phy::SicMode::perfect ? 0.0 : cfg.epsilon;

  std::vector<double> rates1, rates2;
  rates1.reserve(cfg.users_per_group);
  rates2.reserve(cfg.users_per_group);
  double oma1 = std::numeric_limits<double>::infinity();
  double oma2 = std::numeric_limits<double>::infinity();
  RateSample out;

  for (const auto& u : links) {
    if (!u.strong) {
      const double s = phy::sinr_group1(alpha, u.snr);
      out.sinr1_mean += s;
      rates1.push_back(phy::rate_noma(s));
      oma1 = std::min(oma1, phy::rate_oma(u.snr));
    } else {
      const double s = phy::sinr_group2(alpha, u.snr, eps);
      out.sinr2_mean += s;
      rates2.push_back(phy::rate_noma(s));
      oma2 = std::min(oma2, phy::rate_oma(u.snr));
    }
  }

  out.sinr1_mean /= static_cast<double>(cfg.users_per_group);
  out.sinr2_mean /= static_cast<double>(cfg.users_per_group);
  out.group1_rate = phy::multicast_group_rate(rates1);
  out.group2_rate = phy::multicast_group_rate(rates2);
  out.oma_sum = oma1 + oma2;
  out.feasible = out.group1_rate >= cfg.min_throughput && out.group2_rate >= cfg.min_throughput;
  return out;
}

namespace {

// 95% CI half-width of the mean of `values`; nan for fewer than two samples.
double ci_half_width(const std::vector<double>& values) {
  const auto n = values.size();
  if (n < 2) {
    return kNaN;
  }
  double mean = 0.0;
  for (double v : values) {
    mean += v;
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

}  // namespace

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, const SweepOptions& options) {
  cfg.validate();
  const auto alphas = cfg.alpha.values();
  const std::size_t trials = cfg.trials;

  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());

  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const double alpha = alphas[ai];

    SicCalibration calibration;
    const bool need_calibration = options.with_ber && cfg.fidelity == Fidelity::semi_analytic;
    if (need_calibration) {
      calibration = SicCalibration::build(cfg, alpha, ai, options.workers);
    }

    std::vector<BerTally> ber(options.with_ber ? trials : 0);
    std::vector<RateSample> rate(trials);
    parallel_for(trials, options.workers, [&](std::size_t i) {
      if (options.with_ber) {
        auto trial_rng = substream(cfg.seed, i, StreamTag::ber_trial);
        ber[i] = run_trial_ber(trial_rng, cfg, alpha,
                               need_calibration ? &calibration : nullptr);
      }
      auto rate_rng = substream(cfg.seed, i, StreamTag::rate_trial);
      rate[i] = run_trial_rate(rate_rng, cfg, alpha);
    });

    // Order-independent reduction: per-trial slots are combined in index
    // order no matter how many workers filled them.
    SweepRow row;
    row.alpha = alpha;

    if (options.with_ber) {
      double bits = 0.0;
      BerTally sum;
      std::vector<double> np(trials), ni(trials), rp(trials), ri(trials);
      for (std::size_t i = 0; i < trials; ++i) {
        const auto& t = ber[i];
        sum.noma_perfect += t.noma_perfect;
        sum.noma_imperfect += t.noma_imperfect;
        sum.rlnc_perfect += t.rlnc_perfect;
        sum.rlnc_imperfect += t.rlnc_imperfect;
        bits += t.source_bits;
        np[i] = t.noma_perfect / t.source_bits;
        ni[i] = t.noma_imperfect / t.source_bits;
        rp[i] = t.rlnc_perfect / t.source_bits;
        ri[i] = t.rlnc_imperfect / t.source_bits;
      }
      row.ber_noma_perfect = sum.noma_perfect / bits;
      row.ber_noma_imperfect = sum.noma_imperfect / bits;
      row.ber_rlnc_perfect = sum.rlnc_perfect / bits;
      row.ber_rlnc_imperfect = sum.rlnc_imperfect / bits;
      row.ci_ber_noma_perfect = ci_half_width(np);
      row.ci_ber_noma_imperfect = ci_half_width(ni);
      row.ci_ber_rlnc_perfect = ci_half_width(rp);
      row.ci_ber_rlnc_imperfect = ci_half_width(ri);
    } else {
      row.ber_noma_perfect = row.ber_noma_imperfect = kNaN;
      row.ber_rlnc_perfect = row.ber_rlnc_imperfect = kNaN;
      row.ci_ber_noma_perfect = row.ci_ber_noma_imperfect = kNaN;
      row.ci_ber_rlnc_perfect = row.ci_ber_rlnc_imperfect = kNaN;
    }

    double r1 = 0.0, r2 = 0.0, oma = 0.0, s1 = 0.0, s2 = 0.0;
    for (const auto& s : rate) {
      r1 += s.group1_rate;
      r2 += s.group2_rate;
      oma += s.oma_sum;
      s1 += s.sinr1_mean;
      s2 += s.sinr2_mean;
    }
    const auto n = static_cast<double>(trials);
    r1 /= n;
    r2 /= n;
    row.rate_noma_sum = r1 + r2;
    row.rate_oma_sum = oma / n;
    row.sinr_g1_db = 10.0 * std::log10(s1 / n);
    row.sinr_g2_db = 10.0 * std::log10(s2 / n);
    row.feasible = r1 >= cfg.min_throughput && r2 >= cfg.min_throughput;

    if (options.on_row) {
      options.on_row(row);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace owc::sim
