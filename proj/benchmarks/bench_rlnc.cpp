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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "owc/gf256.hpp"
#include "owc/rlnc.hpp"

namespace {

void BM_Gf256Mul(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::uint8_t> xs(4096), ys(4096);
  for (auto& x : xs) x = static_cast<std::uint8_t>(rng());
  for (auto& y : ys) y = static_cast<std::uint8_t>(rng());
  for (auto _ : state) {
    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      acc ^= owc::gf256::mul(xs[i], ys[i]);
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_Gf256Mul);

void BM_RlncEncode(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const auto frame = owc::rlnc::make_random_frame(rng, k, 128);
  const auto coeffs = owc::rlnc::draw_coefficients(rng, k);
  for (auto _ : state) {
    auto pkt = owc::rlnc::encode(frame, coeffs);
    benchmark::DoNotOptimize(pkt.payload.data());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(k * 128));
}
BENCHMARK(BM_RlncEncode)->Arg(10)->Arg(32);

void BM_RlncDecodeGeneration(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  const auto frame = owc::rlnc::make_random_frame(rng, k, 128);
  std::vector<owc::rlnc::CodedPacket> packets;
  for (std::size_t i = 0; i < k + 2; ++i) {
    packets.push_back(owc::rlnc::encode(frame, owc::rlnc::draw_coefficients(rng, k)));
  }
  for (auto _ : state) {
    owc::rlnc::Decoder dec(k, 128);
    for (const auto& p : packets) {
      if (dec.complete()) break;
      dec.receive(p);
    }
    benchmark::DoNotOptimize(dec.rank());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(k * 128));
}
BENCHMARK(BM_RlncDecodeGeneration)->Arg(10)->Arg(32);

}  // namespace
