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

#include "owc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace owc::channel {

namespace {

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

double lambertian_order(double half_power_angle_deg) {
  if (!(half_power_angle_deg > 0.0) || !(half_power_angle_deg < 90.0)) {
    throw std::invalid_argument("channel: half-power angle must be in (0, 90) degrees");
  }
  return -std::numbers::ln2 / std::log(std::cos(deg_to_rad(half_power_angle_deg)));
}

double los_gain(const RoomGeometry& geometry, const LedParams& led, const PdParams& pd,
                double user_x, double user_y) {
  const double dx = geometry.led_position[0] - user_x;
  const double dy = geometry.led_position[1] - user_y;
  const double dz = geometry.led_position[2] - geometry.user_height;
  const double d2 = dx * dx + dy * dy + dz * dz;
  const double d = std::sqrt(d2);

  // PD points straight up, so the incidence angle equals the irradiance angle.
  const double cos_psi = dz / d;
  if (cos_psi < std::cos(deg_to_rad(pd.fov_deg))) {
    return 0.0;
  }

  const double m = lambertian_order(led.half_power_angle_deg);
  return (m + 1.0) * pd.area_m2 / (2.0 * std::numbers::pi * d2) * std::pow(cos_psi, m) *
         pd.filter_gain * pd.concentrator_gain * cos_psi;
}

double fov_footprint_radius(const RoomGeometry& geometry, const PdParams& pd) {
  const double dz = geometry.led_position[2] - geometry.user_height;
  return dz * std::tan(deg_to_rad(pd.fov_deg));
}

double sampling_radius(const RoomGeometry& geometry, const PdParams& pd) {
  return std::min(geometry.cell_radius, fov_footprint_radius(geometry, pd));
}

std::vector<UserTerminal> drop_users(std::mt19937_64& rng, std::size_t count,
                                     const RoomGeometry& geometry, const LedParams& led,
                                     const PdParams& pd) {
  if (count == 0) {
    throw std::invalid_argument("channel: user count must be >= 1");
  }
  const double radius = sampling_radius(geometry, pd);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<UserTerminal> users(count);
  for (auto& u : users) {
    // r = R sqrt(u) makes the density uniform over the disc
    const double r = radius * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    const double x = geometry.led_position[0] + r * std::cos(theta);
    const double y = geometry.led_position[1] + r * std::sin(theta);
    const double dz = geometry.led_position[2] - geometry.user_height;
    u.position = {x, y, geometry.user_height};
    u.gain = los_gain(geometry, led, pd, x, y);
    u.led_distance = std::sqrt(r * r + dz * dz);
  }
  return users;
}

std::pair<std::vector<UserTerminal>, std::vector<UserTerminal>> form_groups(
    std::vector<UserTerminal> users) {
  if (users.empty() || users.size() % 2 != 0) {
    throw std::invalid_argument("channel: grouping needs a non-zero even user count");
  }

  std::vector<std::size_t> order(users.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (users[a].gain != users[b].gain) {
      return users[a].gain < users[b].gain;
    }
    if (users[a].led_distance != users[b].led_distance) {
      return users[a].led_distance < users[b].led_distance;
    }
    return a < b;
  });

  const std::size_t half = users.size() / 2;
  std::pair<std::vector<UserTerminal>, std::vector<UserTerminal>> groups;
  groups.first.reserve(half);
  groups.second.reserve(half);
  for (std::size_t k = 0; k < users.size(); ++k) {
    UserTerminal u = users[order[k]];
    u.group = k < half ? 1 : 2;
    (k < half ? groups.first : groups.second).push_back(std::move(u));
  }
  return groups;
}

double link_snr(double gain, double power_w, const PdParams& pd, double noise_psd,
                double bandwidth_hz) {
  const double signal = pd.responsivity_a_per_w * gain * power_w;
  return signal * signal / (noise_psd * bandwidth_hz);
}

}  // namespace owc::channel
