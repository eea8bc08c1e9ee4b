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

#ifndef OWC_NOMA_PHY_HPP
#define OWC_NOMA_PHY_HPP

#include <optional>
#include <random>
#include <span>

#include "owc/channel.hpp"

// Power-domain NOMA over OOK for two multicast groups. The weak group's
// stream is sent at on-level A1 = 2(1-alpha)P, the strong group's at
// A2 = 2*alpha*P, so each stream keeps its allocated share of the average
// optical power budget (on half the time). Receivers see the composite
// constellation {0, a2, a1, a1+a2} in the electrical domain and detect with
// single thresholds at the cluster midpoints.

namespace owc::phy {

// Gaussian tail probability Q(x) = P{N(0,1) > x}.
double q_function(double x);

struct PowerAllocation {
  double alpha;    // share of the strong (group 2) stream, strictly in (0, 0.5)
  double power_w;  // total average optical power

  PowerAllocation(double alpha, double power_w);

  double weak_on_amplitude() const { return 2.0 * (1.0 - alpha) * power_w; }
  double strong_on_amplitude() const { return 2.0 * alpha * power_w; }
};

enum class SicMode { perfect, imperfect };

// Electrical-domain state of one receiver: a1 > a2 > 0 whenever the gain is
// positive and alpha < 0.5.
struct NomaLink {
  double a1 = 0.0;
  double a2 = 0.0;
  double sigma = 0.0;
  SicMode sic = SicMode::imperfect;
};

NomaLink make_link(double gain, const channel::PdParams& pd, const PowerAllocation& alloc,
                   double sigma, SicMode sic);

// Transmitted optical amplitude for one symbol slot.
double superpose(bool weak_bit, bool strong_bit, const PowerAllocation& alloc);

// y = R h x + n with n ~ N(0, sigma^2).
double receive_sample(std::mt19937_64& rng, double x, double gain, const channel::PdParams& pd,
                      double sigma);

// Weak-user detection, strong stream treated as noise. Threshold at the
// midpoint (a1+a2)/2; exact ties resolve to 0.
bool detect_weak(double y, const NomaLink& link);

struct SicDecision {
  bool weak_bit;
  bool strong_bit;
};

// Strong-user SIC detection. Perfect mode subtracts a1 * true_weak_bit;
// imperfect mode first detects the weak bit from y and subtracts that
// (detection errors propagate). Residual thresholded at a2/2.
SicDecision sic_detect_strong(double y, const NomaLink& link, bool true_weak_bit);

// Exact error rate of detect_weak under equiprobable independent bits:
// 1/2 [Q((a1-a2)/(2 sigma)) + Q((a1+a2)/(2 sigma))].
double ber_weak_analytic(const NomaLink& link);

// Genie-aided SIC bound: Q(a2 / (2 sigma)).
double ber_strong_perfect_analytic(const NomaLink& link);

// Post-split SINRs; optical power fractions enter squared (intensity
// modulation convention). gamma is the full-power electrical SNR.
double sinr_group1(double alpha, double snr);
double sinr_group2(double alpha, double snr, double residual_fraction);

double rate_noma(double sinr);  // log2(1 + sinr)
double rate_oma(double snr);    // 1/2 log2(1 + snr): half airtime, full power

// A multicast stream is decodable by every member only at the weakest
// member's rate.
double multicast_group_rate(std::span<const double> member_rates);

struct AlphaInterval {
  double lo;
  double hi;
};

// Set of alpha in (0, 0.5) where both groups' rates (at their weakest
// members) reach min_rate. Group-1 rate is decreasing and group-2 rate
// increasing in alpha, so each boundary is found by bisection to 1e-6.
std::optional<AlphaInterval> feasible_alpha(double snr1_min, double snr2_min,
                                            double residual_fraction, double min_rate);

}  // namespace owc::phy

#endif  // OWC_NOMA_PHY_HPP
