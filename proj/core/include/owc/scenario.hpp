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

#ifndef OWC_SCENARIO_HPP
#define OWC_SCENARIO_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "owc/channel.hpp"
#include "owc/noma_phy.hpp"

namespace owc::sim {

class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Fidelity { bit_exact, semi_analytic };

struct AlphaSweep {
  double start = 0.05;
  double stop = 0.45;
  double step = 0.05;

  std::vector<double> values() const;
};

// Full experiment description. Field defaults are the reference indoor
// scenario (5x5x3 m room, 1 W LED, 35 deg FOV PD, 20 MHz, 1e-21 W/Hz noise,
// two groups of five users, K=10 packet generations).
struct ScenarioConfig {
  channel::RoomGeometry geometry;
  channel::LedParams led;
  channel::PdParams pd;

  std::size_t users_per_group = 5;
  double noise_psd = 1e-21;    // W/Hz
  double bandwidth_hz = 2e7;

  std::size_t generation_size = 10;  // K, packets per RLNC frame
  std::size_t payload_bytes = 128;   // L
  std::size_t coded_packets = 12;    // N, coded packets per frame

  AlphaSweep alpha;
  std::size_t trials = 1000;  // per sweep point
  std::uint64_t seed = 1;

  phy::SicMode sic = phy::SicMode::imperfect;
  double epsilon = 0.01;  // residual interference fraction for the rate path
  Fidelity fidelity = Fidelity::semi_analytic;
  double min_throughput = 0.5;  // r_min, bits/s/Hz

  double noise_sigma() const { return std::sqrt(noise_psd * bandwidth_hz); }

  // Throws ValidationError naming the offending key.
  void validate() const;
};

// Parses a JSON document; absent keys take the defaults above, unknown keys
// are rejected. The result is validated.
ScenarioConfig parse_config_text(const std::string& text);

// Reads and parses a config file. Missing/unreadable file -> IoError;
// malformed document or schema violation -> ValidationError.
ScenarioConfig load_config(const std::string& path);

// Deterministic single-line JSON echo of the effective config (sorted keys).
std::string config_to_json(const ScenarioConfig& config);

const char* to_string(phy::SicMode mode);
const char* to_string(Fidelity fidelity);

}  // namespace owc::sim

#endif  // OWC_SCENARIO_HPP
