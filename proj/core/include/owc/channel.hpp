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

#ifndef OWC_CHANNEL_HPP
#define OWC_CHANNEL_HPP

#include <array>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

// Indoor line-of-sight optical channel: a single ceiling LED with a
// Lambertian emission pattern serving upward-facing photodiodes on the user
// plane. Wall reflections and diffuse paths are not modelled.

namespace owc::channel {

struct RoomGeometry {
  std::array<double, 3> room_size{5.0, 5.0, 3.0};     // meters
  std::array<double, 3> led_position{2.5, 2.5, 3.0};  // meters
  double user_height = 0.85;                          // meters
  double cell_radius = 1.8;                           // meters
};

struct LedParams {
  double power_w = 1.0;
  double half_power_angle_deg = 60.0;
};

struct PdParams {
  double area_m2 = 1e-4;
  double fov_deg = 35.0;
  double responsivity_a_per_w = 0.4;
  double filter_gain = 1.0;
  double concentrator_gain = 1.0;
};

struct UserTerminal {
  std::array<double, 3> position{};
  double gain = 0.0;          // optical DC channel gain h, 0 outside the FOV
  double led_distance = 0.0;  // 3-D LED-to-PD distance, used as grouping tie-break
  int group = 0;              // 1 = weak, 2 = strong, 0 before grouping
};

// m = -ln 2 / ln(cos half_angle); 60 deg gives exactly 1.
double lambertian_order(double half_power_angle_deg);

// LoS DC gain for a PD pointing at the ceiling (irradiance and incidence
// angles coincide): h = (m+1) A / (2 pi d^2) * cos^m(phi) * Ts * g * cos(psi)
// while psi <= FOV, else 0.
double los_gain(const RoomGeometry& geometry, const LedParams& led, const PdParams& pd,
                double user_x, double user_y);

// Radius on the user plane beyond which the incidence angle exceeds the FOV.
double fov_footprint_radius(const RoomGeometry& geometry, const PdParams& pd);

// Radius of the disc users are dropped on: min(cell radius, FOV footprint).
double sampling_radius(const RoomGeometry& geometry, const PdParams& pd);

// n positions uniform over the sampling disc centered under the LED; every
// returned terminal has strictly positive gain.
std::vector<UserTerminal> drop_users(std::mt19937_64& rng, std::size_t count,
                                     const RoomGeometry& geometry, const LedParams& led,
                                     const PdParams& pd);

// Sorts ascending by gain (ties: ascending LED distance, then input order) and
// splits in half: lower half is group 1 (weak), upper half group 2 (strong).
std::pair<std::vector<UserTerminal>, std::vector<UserTerminal>> form_groups(
    std::vector<UserTerminal> users);

// Received electrical SNR referenced to average optical power P:
// gamma = (R h P)^2 / (N0 B).
double link_snr(double gain, double power_w, const PdParams& pd, double noise_psd,
                double bandwidth_hz);

}  // namespace owc::channel

#endif  // OWC_CHANNEL_HPP
