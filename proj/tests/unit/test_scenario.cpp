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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include "owc/scenario.hpp"
#include "owc/sweep_csv.hpp"

using namespace owc;
using sim::ScenarioConfig;

namespace {

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string error_of(const std::string& json) {
  try {
    sim::parse_config_text(json);
  } catch (const sim::ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("an empty document yields the full default scenario") {
  const auto cfg = sim::parse_config_text("{}");
  CHECK(cfg.geometry.room_size == std::array<double, 3>{5.0, 5.0, 3.0});
  CHECK(cfg.geometry.led_position == std::array<double, 3>{2.5, 2.5, 3.0});
  CHECK(cfg.geometry.user_height == 0.85);
  CHECK(cfg.geometry.cell_radius == doctest::Approx(1.8));
  CHECK(cfg.led.power_w == 1.0);
  CHECK(cfg.led.half_power_angle_deg == 60.0);
  CHECK(cfg.pd.area_m2 == doctest::Approx(1e-4));
  CHECK(cfg.pd.fov_deg == 35.0);
  CHECK(cfg.pd.responsivity_a_per_w == 0.4);
  CHECK(cfg.users_per_group == 5);
  CHECK(cfg.noise_psd == doctest::Approx(1e-21));
  CHECK(cfg.bandwidth_hz == doctest::Approx(2e7));
  CHECK(cfg.generation_size == 10);
  CHECK(cfg.payload_bytes == 128);
  CHECK(cfg.coded_packets == 12);
  CHECK(cfg.alpha.start == doctest::Approx(0.05));
  CHECK(cfg.alpha.stop == doctest::Approx(0.45));
  CHECK(cfg.alpha.step == doctest::Approx(0.05));
  CHECK(cfg.alpha.values().size() == 9);
  CHECK(cfg.min_throughput == 0.5);
  CHECK(cfg.sic == phy::SicMode::imperfect);
  CHECK(cfg.fidelity == sim::Fidelity::semi_analytic);
  CHECK(cfg.noise_sigma() == doctest::Approx(std::sqrt(2e-14)));
}

TEST_CASE("values parse and cell size is a diameter") {
  const auto cfg = sim::parse_config_text(R"({
    "cell_size_m": 3.0,
    "rlnc_frame_packets": 4,
    "coded_packets_per_frame": 6,
    "payload_bytes": 16,
    "sic": "perfect",
    "fidelity": "bitexact",
    "trials": 25,
    "seed": 99
  })");
  CHECK(cfg.geometry.cell_radius == doctest::Approx(1.5));
  CHECK(cfg.generation_size == 4);
  CHECK(cfg.coded_packets == 6);
  CHECK(cfg.payload_bytes == 16);
  CHECK(cfg.sic == phy::SicMode::perfect);
  CHECK(cfg.fidelity == sim::Fidelity::bit_exact);
  CHECK(cfg.trials == 25);
  CHECK(cfg.seed == 99);
}

TEST_CASE("validation rejects bad documents with the offending key named") {
  CHECK(contains(error_of(R"({"coded_packets_per_frame": 5})"), "coded_packets_per_frame"));
  CHECK(contains(error_of(R"({"trials": 0})"), "trials"));
  CHECK(contains(error_of(R"({"alpha_start": 0.0})"), "alpha"));
  CHECK(contains(error_of(R"({"alpha_stop": 0.55})"), "alpha"));
  CHECK(contains(error_of(R"({"alpha_step": -0.1})"), "alpha_step"));
  CHECK(contains(error_of(R"({"pd_fov_deg": 95})"), "pd_fov_deg"));
  CHECK(contains(error_of(R"({"epsilon": 1.5})"), "epsilon"));
  CHECK(contains(error_of(R"({"sic": "sometimes"})"), "sic"));
  CHECK(contains(error_of(R"({"fidelity": "fast"})"), "fidelity"));
  CHECK(contains(error_of(R"({"空": 1})"), "unknown key"));
  CHECK(contains(error_of(R"({"cell_size": 3.6})"), "unknown key"));
  CHECK(contains(error_of(R"({"trials": "many"})"), "trials"));
  CHECK(contains(error_of(R"({"room_size_m": [5, 5]})"), "room_size_m"));
  CHECK(contains(error_of("not json"), "JSON"));
  CHECK(contains(error_of("[1,2,3]"), "object"));
}

TEST_CASE("missing config files are I/O errors") {
  CHECK_THROWS_AS(sim::load_config("/no/such/file.json"), sim::IoError);
}

TEST_CASE("the JSON echo parses back to the same config") {
  auto cfg = sim::parse_config_text(R"({"trials": 123, "epsilon": 0.05, "cell_size_m": 2.5})");
  const auto echoed = sim::parse_config_text(sim::config_to_json(cfg));
  CHECK(echoed.trials == 123);
  CHECK(echoed.epsilon == 0.05);
  CHECK(echoed.geometry.cell_radius == doctest::Approx(1.25));
  CHECK(sim::config_to_json(echoed) == sim::config_to_json(cfg));
}

TEST_CASE("CSV emission format") {
  ScenarioConfig cfg;
  sim::SweepRow a;
  a.alpha = 0.2;
  a.ber_noma_perfect = 0.001;
  a.ber_noma_imperfect = 0.002;
  a.ber_rlnc_perfect = 0.0001;
  a.ber_rlnc_imperfect = 1.0 / 3.0;
  a.rate_noma_sum = 5.5;
  a.rate_oma_sum = 6.5;
  a.sinr_g1_db = 7.25;
  a.sinr_g2_db = 9.5;
  a.feasible = true;
  a.ci_ber_noma_perfect = 1e-5;
  a.ci_ber_noma_imperfect = 2e-5;
  a.ci_ber_rlnc_perfect = 3e-5;
  a.ci_ber_rlnc_imperfect = 4e-5;
  sim::SweepRow b = a;
  b.alpha = 0.25;
  b.feasible = false;
  b.ci_ber_noma_imperfect = std::numeric_limits<double>::quiet_NaN();

  const std::array rows{a, b};
  std::ostringstream out;
  io::emit_csv(rows, cfg, out);
  const std::string text = out.str();

  CHECK(contains(text, "# version: 0.1.0"));
  CHECK(contains(text, "# seed: 1"));
  CHECK(contains(text, "# config: {"));
  CHECK(contains(text,
                 "alpha,ber_noma_perfect,ber_noma_imperfect,ber_rlnc_perfect,ber_rlnc_imperfect,"
                 "rate_noma_sum,rate_oma_sum,sinr_g1_db,sinr_g2_db,feasible,ci_ber_noma,"
                 "ci_ber_rlnc\n"));

  // exactly two data lines after the 5 header lines
  int lines = 0;
  for (char c : text) {
    lines += c == '\n';
  }
  CHECK(lines == 7);

  // imperfect-SIC CI pair selected under the default config
  CHECK(contains(text, ",true,2e-05,4e-05\n"));
  CHECK(contains(text, ",false,nan,4e-05\n"));

  // round-trippable floats: 1/3 survives a parse
  CHECK(contains(text, io::format_double(1.0 / 3.0)));
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);

  // perfect-SIC configs pick the other CI pair
  cfg.sic = phy::SicMode::perfect;
  std::ostringstream out2;
  io::emit_csv(rows, cfg, out2);
  CHECK(contains(out2.str(), ",true,1e-05,3e-05\n"));

  // byte-identical on re-emission
  std::ostringstream out3;
  cfg.sic = phy::SicMode::imperfect;
  io::emit_csv(rows, cfg, out3);
  CHECK(out3.str() == text);

  CHECK_THROWS_AS(io::emit_csv(std::span<const sim::SweepRow>{}, cfg, out),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::emit_csv(rows, cfg, std::string("/no/such/dir/x.csv")), sim::IoError);
}
