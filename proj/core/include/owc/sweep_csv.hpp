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

#ifndef OWC_SWEEP_CSV_HPP
#define OWC_SWEEP_CSV_HPP

#include <ostream>
#include <span>
#include <string>

#include "owc/sim_engine.hpp"

namespace owc::io {

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

// '#'-prefixed metadata block (effective config, seed, version), the fixed
// column header, then one line per alpha. The two CI columns carry the pair
// matching the configured SIC mode. Byte-identical for identical
// (config, seed) regardless of worker count.
void emit_csv(std::span<const sim::SweepRow> rows, const sim::ScenarioConfig& config,
              std::ostream& out);

// File variant; unwritable path -> IoError.
void emit_csv(std::span<const sim::SweepRow> rows, const sim::ScenarioConfig& config,
              const std::string& path);

}  // namespace owc::io

#endif  // OWC_SWEEP_CSV_HPP
