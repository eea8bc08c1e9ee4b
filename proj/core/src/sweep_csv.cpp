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

#include "owc/sweep_csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "owc/version.hpp"

namespace owc::io {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void emit_csv(std::span<const sim::SweepRow> rows, const sim::ScenarioConfig& cfg,
              std::ostream& out) {
  if (rows.empty()) {
    throw std::invalid_argument("csv: nothing to write, row list is empty");
  }

  out << "# owcsim sweep\n";
  out << "# version: " << kVersion << "\n";
  out << "# seed: " << cfg.seed << "\n";
  out << "# config: " << sim::config_to_json(cfg) << "\n";
  out << "alpha,ber_noma_perfect,ber_noma_imperfect,ber_rlnc_perfect,ber_rlnc_imperfect,"
         "rate_noma_sum,rate_oma_sum,sinr_g1_db,sinr_g2_db,feasible,ci_ber_noma,ci_ber_rlnc\n";

  const bool imperfect = cfg.sic == phy::SicMode::imperfect;
  for (const auto& r : rows) {
    out << format_double(r.alpha) << ',' << format_double(r.ber_noma_perfect) << ','
        << format_double(r.ber_noma_imperfect) << ',' << format_double(r.ber_rlnc_perfect) << ','
        << format_double(r.ber_rlnc_imperfect) << ',' << format_double(r.rate_noma_sum) << ','
        << format_double(r.rate_oma_sum) << ',' << format_double(r.sinr_g1_db) << ','
        << format_double(r.sinr_g2_db) << ',' << (r.feasible ? "true" : "false") << ','
        << format_double(imperfect ? r.ci_ber_noma_imperfect : r.ci_ber_noma_perfect) << ','
        << format_double(imperfect ? r.ci_ber_rlnc_imperfect : r.ci_ber_rlnc_perfect) << '\n';
  }
}

void emit_csv(std::span<const sim::SweepRow> rows, const sim::ScenarioConfig& cfg,
              const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw sim::IoError("csv: cannot open " + path + " for writing");
  }
  emit_csv(rows, cfg, out);
  out.flush();
  if (!out) {
    throw sim::IoError("csv: write failure on " + path);
  }
}

}  // namespace owc::io
