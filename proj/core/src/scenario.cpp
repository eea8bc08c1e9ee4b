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

#include "owc/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace owc::sim {

using nlohmann::json;

std::vector<double> AlphaSweep::values() const {
  std::vector<double> out;
  if (step <= 0.0 || stop < start) {
    return out;
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1.0 + 1e-9));
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(start + static_cast<double>(i) * step);
  }
  return out;
}

void ScenarioConfig::validate() const {
  const auto fail = [](const std::string& msg) { throw ValidationError("config: " + msg); };

  if (!(geometry.led_position[2] > geometry.user_height)) {
    fail("led_position_m: LED must sit above user_height_m");
  }
  if (!(geometry.cell_radius > 0.0)) {
    fail("cell_size_m: must be positive");
  }
  if (!(led.power_w > 0.0)) {
    fail("led_output_power_w: must be positive");
  }
  if (!(led.half_power_angle_deg > 0.0 && led.half_power_angle_deg < 90.0)) {
    fail("half_power_angle_deg: must lie in (0, 90)");
  }
  if (!(pd.area_m2 > 0.0)) {
    fail("pd_area_m2: must be positive");
  }
  if (!(pd.fov_deg > 0.0 && pd.fov_deg < 90.0)) {
    fail("pd_fov_deg: must lie in (0, 90)");
  }
  if (!(pd.responsivity_a_per_w > 0.0)) {
    fail("pd_responsivity_a_per_w: must be positive");
  }
  if (!(pd.filter_gain > 0.0) || !(pd.concentrator_gain > 0.0)) {
    fail("optical_filter_gain/concentrator_gain: must be positive");
  }
  if (users_per_group == 0) {
    fail("users_per_group: must be >= 1");
  }
  if (!(noise_psd > 0.0)) {
    fail("noise_psd_w_per_hz: must be positive");
  }
  if (!(bandwidth_hz > 0.0)) {
    fail("modulation_bandwidth_hz: must be positive");
  }
  if (generation_size == 0) {
    fail("rlnc_frame_packets: must be >= 1");
  }
  if (payload_bytes == 0) {
    fail("payload_bytes: must be >= 1");
  }
  if (coded_packets < generation_size) {
    fail("coded_packets_per_frame: N < K (need at least rlnc_frame_packets coded packets)");
  }
  if (!(alpha.step > 0.0)) {
    fail("alpha_step: must be positive");
  }
  if (alpha.stop < alpha.start) {
    fail("alpha_stop: must be >= alpha_start");
  }
  const auto alphas = alpha.values();
  if (alphas.empty()) {
    fail("alpha_start/alpha_stop/alpha_step: sweep is empty");
  }
  for (double a : alphas) {
    if (!(a > 0.0 && a < 0.5)) {
      fail("alpha_start/alpha_stop/alpha_step: every sweep value must lie in (0, 0.5)");
    }
  }
  if (trials == 0) {
    fail("trials: must be >= 1");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    fail("epsilon: must lie in [0, 1]");
  }
  if (!(min_throughput >= 0.0)) {
    fail("min_user_throughput: must be >= 0");
  }
}

namespace {

// Typed field extraction with key-naming errors; extracted keys are erased so
// leftovers can be reported as unknown.
template <typename T>
void take(json& doc, const char* key, T& out) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    return;
  }
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config: ") + key + ": wrong type");
  }
  doc.erase(it);
}

void take_triplet(json& doc, const char* key, std::array<double, 3>& out) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    return;
  }
  if (!it->is_array() || it->size() != 3) {
    throw ValidationError(std::string("config: ") + key + ": expected [x, y, z]");
  }
  try {
    for (std::size_t i = 0; i < 3; ++i) {
      out[i] = it->at(i).get<double>();
    }
  } catch (const json::exception&) {
    throw ValidationError(std::string("config: ") + key + ": wrong type");
  }
  doc.erase(it);
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: not a valid JSON document: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ValidationError("config: top level must be a JSON object");
  }

  ScenarioConfig cfg;

  take_triplet(doc, "room_size_m", cfg.geometry.room_size);
  take_triplet(doc, "led_position_m", cfg.geometry.led_position);
  take(doc, "user_height_m", cfg.geometry.user_height);

  double cell_diameter = 2.0 * cfg.geometry.cell_radius;
  take(doc, "cell_size_m", cell_diameter);  // cell size is a diameter
  cfg.geometry.cell_radius = 0.5 * cell_diameter;

  take(doc, "led_output_power_w", cfg.led.power_w);
  take(doc, "half_power_angle_deg", cfg.led.half_power_angle_deg);

  take(doc, "pd_area_m2", cfg.pd.area_m2);
  take(doc, "pd_fov_deg", cfg.pd.fov_deg);
  take(doc, "pd_responsivity_a_per_w", cfg.pd.responsivity_a_per_w);
  take(doc, "optical_filter_gain", cfg.pd.filter_gain);
  take(doc, "concentrator_gain", cfg.pd.concentrator_gain);

  take(doc, "users_per_group", cfg.users_per_group);
  take(doc, "noise_psd_w_per_hz", cfg.noise_psd);
  take(doc, "modulation_bandwidth_hz", cfg.bandwidth_hz);
  take(doc, "rlnc_frame_packets", cfg.generation_size);
  take(doc, "payload_bytes", cfg.payload_bytes);
  take(doc, "coded_packets_per_frame", cfg.coded_packets);

  take(doc, "alpha_start", cfg.alpha.start);
  take(doc, "alpha_stop", cfg.alpha.stop);
  take(doc, "alpha_step", cfg.alpha.step);
  take(doc, "trials", cfg.trials);
  take(doc, "seed", cfg.seed);

  std::string sic = to_string(cfg.sic);
  take(doc, "sic", sic);
  if (sic == "perfect") {
    cfg.sic = phy::SicMode::perfect;
  } else if (sic == "imperfect") {
    cfg.sic = phy::SicMode::imperfect;
  } else {
    throw ValidationError("config: sic: expected \"perfect\" or \"imperfect\"");
  }

  take(doc, "epsilon", cfg.epsilon);

  std::string fidelity = to_string(cfg.fidelity);
  take(doc, "fidelity", fidelity);
  if (fidelity == "bitexact") {
    cfg.fidelity = Fidelity::bit_exact;
  } else if (fidelity == "semianalytic") {
    cfg.fidelity = Fidelity::semi_analytic;
  } else {
    throw ValidationError("config: fidelity: expected \"bitexact\" or \"semianalytic\"");
  }

  take(doc, "min_user_throughput", cfg.min_throughput);

  if (!doc.empty()) {
    throw ValidationError("config: unknown key: " + doc.begin().key());
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("config: cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("config: read failure on " + path);
  }
  return parse_config_text(buf.str());
}

std::string config_to_json(const ScenarioConfig& cfg) {
  json doc;
  doc["room_size_m"] = cfg.geometry.room_size;
  doc["led_position_m"] = cfg.geometry.led_position;
  doc["user_height_m"] = cfg.geometry.user_height;
  doc["cell_size_m"] = 2.0 * cfg.geometry.cell_radius;
  doc["led_output_power_w"] = cfg.led.power_w;
  doc["half_power_angle_deg"] = cfg.led.half_power_angle_deg;
  doc["pd_area_m2"] = cfg.pd.area_m2;
  doc["pd_fov_deg"] = cfg.pd.fov_deg;
  doc["pd_responsivity_a_per_w"] = cfg.pd.responsivity_a_per_w;
  doc["optical_filter_gain"] = cfg.pd.filter_gain;
  doc["concentrator_gain"] = cfg.pd.concentrator_gain;
  doc["users_per_group"] = cfg.users_per_group;
  doc["noise_psd_w_per_hz"] = cfg.noise_psd;
  doc["modulation_bandwidth_hz"] = cfg.bandwidth_hz;
  doc["rlnc_frame_packets"] = cfg.generation_size;
  doc["payload_bytes"] = cfg.payload_bytes;
  doc["coded_packets_per_frame"] = cfg.coded_packets;
  doc["alpha_start"] = cfg.alpha.start;
  doc["alpha_stop"] = cfg.alpha.stop;
  doc["alpha_step"] = cfg.alpha.step;
  doc["trials"] = cfg.trials;
  doc["seed"] = cfg.seed;
  doc["sic"] = to_string(cfg.sic);
  doc["epsilon"] = cfg.epsilon;
  doc["fidelity"] = to_string(cfg.fidelity);
  doc["min_user_throughput"] = cfg.min_throughput;
  return doc.dump();  // nlohmann objects keep keys sorted
}

const char* to_string(phy::SicMode mode) {
  return mode == phy::SicMode::perfect ? "perfect" : "imperfect";
}

const char* to_string(Fidelity fidelity) {
  return fidelity == Fidelity::bit_exact ? "bitexact" : "semianalytic";
}

}  // namespace owc::sim
