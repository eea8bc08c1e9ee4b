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

#ifndef OWC_TESTS_SUPPORT_SUBPROCESS_HPP
#define OWC_TESTS_SUPPORT_SUBPROCESS_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace owc::test {

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs a shell command with stdout/stderr captured through temp files.
inline CommandResult run_command(const std::string& cmd) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path();
  const auto out_path = dir / ("owc_test_out_" + std::to_string(++counter));
  const auto err_path = dir / ("owc_test_err_" + std::to_string(counter));

  const std::string full = cmd + " >" + out_path.string() + " 2>" + err_path.string();
  const int status = std::system(full.c_str());

  CommandResult res;
  res.exit_code = status < 0 ? status : WEXITSTATUS(status);
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return res;
}

}  // namespace owc::test

#endif  // OWC_TESTS_SUPPORT_SUBPROCESS_HPP
