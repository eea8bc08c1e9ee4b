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

#include "owc/rlnc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "owc/gf256.hpp"

namespace owc::rlnc {

namespace {

// out += factor * in, elementwise over GF(2^8)
void axpy(std::span<std::uint8_t> out, std::uint8_t factor, std::span<const std::uint8_t> in) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = gf256::add(out[j], gf256::mul(factor, in[j]));
  }
}

void scale(std::span<std::uint8_t> v, std::uint8_t factor) {
  for (auto& x : v) {
    x = gf256::mul(factor, x);
  }
}

}  // namespace

SourceFrame::SourceFrame(std::vector<std::vector<std::uint8_t>> packets)
    : packets_(std::move(packets)) {
  if (packets_.empty()) {
    throw std::invalid_argument("rlnc: a frame needs at least one packet");
  }
  const std::size_t len = packets_.front().size();
  if (len == 0) {
    throw std::invalid_argument("rlnc: packets must be at least one byte long");
  }
  for (const auto& p : packets_) {
    if (p.size() != len) {
      throw std::invalid_argument("rlnc: all packets in a frame must have equal length");
    }
  }
}

std::vector<std::uint8_t> CodedPacket::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(coeffs.size() + payload.size());
  out.insert(out.end(), coeffs.begin(), coeffs.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

CodedPacket CodedPacket::deserialize(std::span<const std::uint8_t> bytes,
                                     std::size_t generation_size, std::size_t payload_bytes) {
  if (bytes.size() != generation_size + payload_bytes) {
    throw std::invalid_argument("rlnc: serialized packet length mismatch");
  }
  CodedPacket pkt;
  pkt.coeffs.assign(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(generation_size));
  pkt.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(generation_size), bytes.end());
  return pkt;
}

std::vector<std::uint8_t> draw_coefficients(std::mt19937_64& rng, std::size_t generation_size) {
  if (generation_size == 0) {
    throw std::invalid_argument("rlnc: generation size must be >= 1");
  }
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::uint8_t> coeffs(generation_size);
  for (auto& c : coeffs) {
    c = static_cast<std::uint8_t>(byte(rng));
  }
  return coeffs;
}

SourceFrame make_random_frame(std::mt19937_64& rng, std::size_t generation_size,
                              std::size_t payload_bytes) {
  if (generation_size == 0 || payload_bytes == 0) {
    throw std::invalid_argument("rlnc: frame dimensions must be >= 1");
  }
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::vector<std::uint8_t>> packets(generation_size);
  for (auto& p : packets) {
    p.resize(payload_bytes);
    for (auto& b : p) {
      b = static_cast<std::uint8_t>(byte(rng));
    }
  }
  return SourceFrame(std::move(packets));
}

CodedPacket encode(const SourceFrame& frame, std::span<const std::uint8_t> coeffs) {
  if (coeffs.size() != frame.generation_size()) {
    throw std::invalid_argument("rlnc: coefficient count must equal the generation size");
  }
  CodedPacket pkt;
  pkt.coeffs.assign(coeffs.begin(), coeffs.end());
  pkt.payload.assign(frame.payload_bytes(), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) {
      axpy(pkt.payload, coeffs[i], frame.packet(i));
    }
  }
  return pkt;
}

double full_rank_probability(std::size_t generation_size, std::size_t packet_count,
                             double field_size) {
  if (generation_size == 0 || field_size < 2.0) {
    throw std::invalid_argument("rlnc: need K >= 1 and q >= 2");
  }
  if (packet_count < generation_size) {
    return 0.0;
  }
  double p = 1.0;
  for (std::size_t i = 0; i < generation_size; ++i) {
    p *= 1.0 - std::pow(field_size, static_cast<double>(i) - static_cast<double>(packet_count));
  }
  return p;
}

double rank_deficiency_probability(std::size_t generation_size, std::size_t packet_count,
                                   double field_size) {
  if (generation_size == 0 || field_size < 2.0) {
    throw std::invalid_argument("rlnc: need K >= 1 and q >= 2");
  }
  if (packet_count < generation_size) {
    return 1.0;
  }
  double log_p = 0.0;
  for (std::size_t i = 0; i < generation_size; ++i) {
    log_p += std::log1p(
        -std::pow(field_size, static_cast<double>(i) - static_cast<double>(packet_count)));
  }
  return -std::expm1(log_p);
}

Decoder::Decoder(std::size_t generation_size, std::size_t payload_bytes)
    : generation_size_(generation_size), payload_bytes_(payload_bytes) {
  if (generation_size_ == 0) {
    throw std::invalid_argument("rlnc: generation size must be >= 1");
  }
  rows_.reserve(generation_size_);
}

bool Decoder::receive(const CodedPacket& pkt) {
  if (pkt.coeffs.size() != generation_size_ || pkt.payload.size() != payload_bytes_) {
    throw std::invalid_argument("rlnc: packet dimensions do not match the decoder");
  }
  if (complete()) {
    return false;
  }

  Row work{pkt.coeffs, pkt.payload, 0};

  // Forward elimination against existing pivots.
  for (const Row& row : rows_) {
    const std::uint8_t f = work.coeffs[row.pivot];
    if (f != 0) {
      axpy(work.coeffs, f, row.coeffs);
      axpy(work.payload, f, row.payload);
    }
  }

  const auto lead = std::find_if(work.coeffs.begin(), work.coeffs.end(),
                                 [](std::uint8_t c) { return c != 0; });
  if (lead == work.coeffs.end()) {
    return false;  // linearly dependent on what we already hold
  }
  work.pivot = static_cast<std::size_t>(lead - work.coeffs.begin());

  // Normalize the pivot to 1, then clear the pivot column above.
  const std::uint8_t norm = gf256::inv(work.coeffs[work.pivot]);
  scale(work.coeffs, norm);
  scale(work.payload, norm);
  for (Row& row : rows_) {
    const std::uint8_t f = row.coeffs[work.pivot];
    if (f != 0) {
      axpy(row.coeffs, f, work.coeffs);
      axpy(row.payload, f, work.payload);
    }
  }

  const auto pos = std::lower_bound(
      rows_.begin(), rows_.end(), work.pivot,
      [](const Row& row, std::size_t pivot) { return row.pivot < pivot; });
  rows_.insert(pos, std::move(work));
  return true;
}

bool Decoder::row_is_unit(const Row& row) const {
  for (std::size_t i = 0; i < generation_size_; ++i) {
    if (i != row.pivot && row.coeffs[i] != 0) {
      return false;
    }
  }
  return true;  // pivot entry is 1 by the RREF invariant
}

std::vector<std::size_t> Decoder::recovered_indices() const {
  std::vector<std::size_t> out;
  for (const Row& row : rows_) {
    if (row_is_unit(row)) {
      out.push_back(row.pivot);
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::vector<std::uint8_t>>> Decoder::recover() const {
  std::vector<std::pair<std::size_t, std::vector<std::uint8_t>>> out;
  for (const Row& row : rows_) {
    if (row_is_unit(row)) {
      out.emplace_back(row.pivot, row.payload);
    }
  }
  return out;
}

}  // namespace owc::rlnc
