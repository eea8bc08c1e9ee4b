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

// Command-line front end: alpha sweeps to CSV plus small analytic utilities.
// Exit codes: 0 success, 1 validation/usage error, 2 I/O error.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "owc/channel.hpp"
#include "owc/rlnc.hpp"
#include "owc/scenario.hpp"
#include "owc/sim_engine.hpp"
#include "owc/sweep_csv.hpp"
#include "owc/version.hpp"

namespace {

struct SweepArgs {
  std::optional<std::string> config_path;
  std::string out_path = "sweep.csv";
  int workers = 1;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha_start, alpha_stop, alpha_step;
  std::optional<std::size_t> trials;
  std::optional<std::string> sic;
  std::optional<std::string> fidelity;
  std::optional<std::size_t> redundancy;
  std::optional<double> epsilon;
};

void add_sweep_flags(CLI::App& cmd, SweepArgs& args) {
  cmd.add_option("--config", args.config_path, "Scenario config file (JSON)");
  cmd.add_option("--out", args.out_path, "Output CSV path")->capture_default_str();
  cmd.add_option("--seed", args.seed, "Master seed");
  cmd.add_option("--workers", args.workers, "Worker thread count")->capture_default_str();
  cmd.add_option("--alpha-start", args.alpha_start, "Sweep start");
  cmd.add_option("--alpha-stop", args.alpha_stop, "Sweep stop (inclusive)");
  cmd.add_option("--alpha-step", args.alpha_step, "Sweep step");
  cmd.add_option("--trials", args.trials, "Trials per sweep point");
  cmd.add_option("--sic", args.sic, "SIC mode: perfect|imperfect");
  cmd.add_option("--fidelity", args.fidelity, "BER fidelity: bitexact|semianalytic");
  cmd.add_option("--redundancy", args.redundancy, "Coded packets per frame (N)");
  cmd.add_option("--epsilon", args.epsilon, "Residual interference fraction");
}

// Flag overrides take precedence over config-file values.
owc::sim::ScenarioConfig effective_config(const SweepArgs& args) {
  owc::sim::ScenarioConfig cfg;
  if (args.config_path) {
    cfg = owc::sim::load_config(*args.config_path);
  }
  if (args.seed) cfg.seed = *args.seed;
  if (args.alpha_start) cfg.alpha.start = *args.alpha_start;
  if (args.alpha_stop) cfg.alpha.stop = *args.alpha_stop;
  if (args.alpha_step) cfg.alpha.step = *args.alpha_step;
  if (args.trials) cfg.trials = *args.trials;
  if (args.sic) {
    if (*args.sic == "perfect") {
      cfg.sic = owc::phy::SicMode::perfect;
    } else if (*args.sic == "imperfect") {
      cfg.sic = owc::phy::SicMode::imperfect;
    } else {
      throw owc::sim::ValidationError("--sic: expected perfect or imperfect");
    }
  }
  if (args.fidelity) {
    if (*args.fidelity == "bitexact") {
      cfg.fidelity = owc::sim::Fidelity::bit_exact;
    } else if (*args.fidelity == "semianalytic") {
      cfg.fidelity = owc::sim::Fidelity::semi_analytic;
    } else {
      throw owc::sim::ValidationError("--fidelity: expected bitexact or semianalytic");
    }
  }
  if (args.redundancy) cfg.coded_packets = *args.redundancy;
  if (args.epsilon) cfg.epsilon = *args.epsilon;
  cfg.validate();
  return cfg;
}

int run_sweep_command(const SweepArgs& args, bool with_ber) {
  const auto cfg = effective_config(args);

  owc::sim::SweepOptions options;
  options.with_ber = with_ber;
  options.workers = args.workers;
  options.on_row = [&](const owc::sim::SweepRow& row) {
    std::fprintf(stderr,
                 "alpha=%.4g done: ber_noma=%.4g ber_rlnc=%.4g rate_noma=%.4g rate_oma=%.4g "
                 "feasible=%s\n",
                 row.alpha, row.ber_noma_imperfect, row.ber_rlnc_imperfect, row.rate_noma_sum,
                 row.rate_oma_sum, row.feasible ? "true" : "false");
  };

  const auto rows = owc::sim::run_sweep(cfg, options);
  owc::io::emit_csv(rows, cfg, args.out_path);
  return 0;
}

int run_decode_prob(std::size_t k, std::size_t n, double q) {
  std::printf("%.6f\n", owc::rlnc::full_rank_probability(k, n, q));
  return 0;
}

int run_link_budget(const std::optional<std::string>& config_path) {
  owc::sim::ScenarioConfig cfg;
  if (config_path) {
    cfg = owc::sim::load_config(*config_path);
  }
  cfg.validate();

  const auto& g = cfg.geometry;
  const double nadir_gain =
      owc::channel::los_gain(g, cfg.led, cfg.pd, g.led_position[0], g.led_position[1]);
  const double radius = owc::channel::sampling_radius(g, cfg.pd);
  const double edge_gain = owc::channel::los_gain(g, cfg.led, cfg.pd,
                                                  g.led_position[0] + radius * (1.0 - 1e-9),
                                                  g.led_position[1]);
  const auto snr = [&](double gain) {
    return owc::channel::link_snr(gain, cfg.led.power_w, cfg.pd, cfg.noise_psd, cfg.bandwidth_hz);
  };

  std::cout << std::setprecision(10);
  std::cout << "lambertian_order: " << owc::channel::lambertian_order(cfg.led.half_power_angle_deg)
            << "\n";
  std::cout << "fov_footprint_radius_m: " << owc::channel::fov_footprint_radius(g, cfg.pd) << "\n";
  std::cout << "sampling_radius_m: " << radius << "\n";
  std::cout << "noise_sigma_a: " << cfg.noise_sigma() << "\n";
  std::cout << "nadir_gain: " << nadir_gain << "\n";
  std::cout << "nadir_snr_db: " << 10.0 * std::log10(snr(nadir_gain)) << "\n";
  std::cout << "edge_gain: " << edge_gain << "\n";
  std::cout << "edge_snr_db: " << 10.0 * std::log10(snr(edge_gain)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-level simulator for a two-group NOMA optical downlink with RLNC"};
  app.set_version_flag("--version", owc::kVersion);
  app.require_subcommand(1);

  SweepArgs ber_args, rate_args;
  auto* sweep_ber = app.add_subcommand(
      "sweep-ber", "Alpha sweep of average BER (plain NOMA and RLNC-NOMA) plus rates");
  add_sweep_flags(*sweep_ber, ber_args);
  auto* sweep_rate =
      app.add_subcommand("sweep-rate", "Alpha sweep of ergodic sum rates (BER columns nan)");
  add_sweep_flags(*sweep_rate, rate_args);

  std::size_t k = 0, n = 0;
  double q = 256.0;
  auto* decode_prob =
      app.add_subcommand("decode-prob", "Probability that N random coded packets decode K sources");
  decode_prob->add_option("--k", k, "Generation size")->required();
  decode_prob->add_option("--n", n, "Received coded packets")->required();
  decode_prob->add_option("--q", q, "Field size")->capture_default_str();

  std::optional<std::string> budget_config;
  auto* link_budget = app.add_subcommand("link-budget", "Print gains and SNRs for a scenario");
  link_budget->add_option("--config", budget_config, "Scenario config file (JSON)");

  try {
    app.parse(argc, argv);
    if (sweep_ber->parsed()) {
      return run_sweep_command(ber_args, /*with_ber=*/true);
    }
    if (sweep_rate->parsed()) {
      return run_sweep_command(rate_args, /*with_ber=*/false);
    }
    if (decode_prob->parsed()) {
      if (k == 0 || q < 2.0) {
        std::cerr << "decode-prob: need --k >= 1 and --q >= 2\n";
        return 1;
      }
      return run_decode_prob(k, n, q);
    }
    return run_link_budget(budget_config);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const owc::sim::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const owc::sim::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
