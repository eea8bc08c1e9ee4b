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

#include "owc/noma_phy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace owc::phy {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

PowerAllocation::PowerAllocation(double alpha_, double power_w_)
    : alpha(alpha_), power_w(power_w_) {
  if (!(alpha > 0.0) || !(alpha < 0.5)) {
    throw std::invalid_argument("phy: alpha must lie strictly in (0, 0.5)");
  }
  if (!(power_w > 0.0)) {
    throw std::invalid_argument("phy: total optical power must be positive");
  }
}

NomaLink make_link(double gain, const channel::PdParams& pd, const PowerAllocation& alloc,
                   double sigma, SicMode sic) {
  NomaLink link;
  link.a1 = pd.responsivity_a_per_w * gain * alloc.weak_on_amplitude();
  link.a2 = pd.responsivity_a_per_w * gain * alloc.strong_on_amplitude();
  link.sigma = sigma;
  link.sic = sic;
  return link;
}

double superpose(bool weak_bit, bool strong_bit, const PowerAllocation& alloc) {
  return (weak_bit ? alloc.weak_on_amplitude() : 0.0) +
         (strong_bit ? alloc.strong_on_amplitude() : 0.0);
}

double receive_sample(std::mt19937_64& rng, double x, double gain, const channel::PdParams& pd,
                      double sigma) {
  std::normal_distribution<double> noise(0.0, sigma);
  return pd.responsivity_a_per_w * gain * x + noise(rng);
}

bool detect_weak(double y, const NomaLink& link) { return y > 0.5 * (link.a1 + link.a2); }

SicDecision sic_detect_strong(double y, const NomaLink& link, bool true_weak_bit) {
  const bool weak = link.sic == SicMode::perfect ? true_weak_bit : detect_weak(y, link);
  const double residual = y - (weak ? link.a1 : 0.0);
  return SicDecision{weak, residual > 0.5 * link.a2};
}

double ber_weak_analytic(const NomaLink& link) {
  const double s2 = 2.0 * link.sigma;
  return 0.5 * (q_function((link.a1 - link.a2) / s2) + q_function((link.a1 + link.a2) / s2));
}

double ber_strong_perfect_analytic(const NomaLink& link) {
  return q_function(link.a2 / (2.0 * link.sigma));
}

double sinr_group1(double alpha, double snr) {
  const double w = 1.0 - alpha;
  return w * w * snr / (alpha * alpha * snr + 1.0);
}

double sinr_group2(double alpha, double snr, double residual_fraction) {
  const double w = 1.0 - alpha;
  return alpha * alpha * snr / (residual_fraction * w * w * snr + 1.0);
}

double rate_noma(double sinr) { return std::log2(1.0 + sinr); }

double rate_oma(double snr) { return 0.5 * std::log2(1.0 + snr); }

double multicast_group_rate(std::span<const double> member_rates) {
  if (member_rates.empty()) {
    throw std::invalid_argument("phy: multicast group rate needs at least one member");
  }
  double r = member_rates.front();
  for (double v : member_rates) {
    r = std::min(r, v);
  }
  return r;
}

std::optional<AlphaInterval> feasible_alpha(double snr1_min, double snr2_min,
                                            double residual_fraction, double min_rate) {
  if (min_rate < 0.0) {
    throw std::invalid_argument("phy: minimum rate must be >= 0");
  }
  if (min_rate == 0.0) {
    return AlphaInterval{0.0, 0.5};  // every alpha qualifies
  }

  constexpr double kTol = 1e-6;
  const auto rate1 = [&](double a) { return rate_noma(sinr_group1(a, snr1_min)); };
  const auto rate2 = [&](double a) {
    return rate_noma(sinr_group2(a, snr2_min, residual_fraction));
  };

  // Group 2 rate increases with alpha: the lower boundary.
  double lo = 0.0;
  if (rate2(0.5) < min_rate) {
    return std::nullopt;
  }
  if (rate2(0.0) < min_rate) {
    double a = 0.0, b = 0.5;
    while (b - a > kTol) {
      const double mid = 0.5 * (a + b);
      (rate2(mid) >= min_rate ? b : a) = mid;
    }
    lo = b;
  }

  // Group 1 rate decreases with alpha: the upper boundary.
  double hi = 0.5;
  if (rate1(0.0) < min_rate) {
    return std::nullopt;
  }
  if (rate1(0.5) < min_rate) {
    double a = 0.0, b = 0.5;
    while (b - a > kTol) {
      const double mid = 0.5 * (a + b);
      (rate1(mid) >= min_rate ? a : b) = mid;
    }
    hi = a;
  }

  if (lo > hi) {
    return std::nullopt;
  }
  return AlphaInterval{lo, hi};
}

}  // namespace owc::phy
