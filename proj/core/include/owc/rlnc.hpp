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

#ifndef OWC_RLNC_HPP
#define OWC_RLNC_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

// Generation-based random linear network coding over GF(2^8): a frame of K
// source packets is mixed with uniformly drawn coefficient vectors; receivers
// run incremental Gaussian elimination and can extract source packets as soon
// as their reduced rows become unit vectors (partial recovery).

namespace owc::rlnc {

// A generation: exactly K packets of identical length L >= 1.
class SourceFrame {
 public:
  explicit SourceFrame(std::vector<std::vector<std::uint8_t>> packets);

  std::size_t generation_size() const { return packets_.size(); }
  std::size_t payload_bytes() const { return packets_.front().size(); }
  const std::vector<std::uint8_t>& packet(std::size_t i) const { return packets_.at(i); }

 private:
  std::vector<std::vector<std::uint8_t>> packets_;
};

// On-air unit: K coding coefficients followed by the coded payload.
struct CodedPacket {
  std::vector<std::uint8_t> coeffs;
  std::vector<std::uint8_t> payload;

  // Wire layout: K coefficient bytes (index order 0..K-1), then L payload
  // bytes, no framing.
  std::vector<std::uint8_t> serialize() const;
  static CodedPacket deserialize(std::span<const std::uint8_t> bytes,
                                 std::size_t generation_size,
                                 std::size_t payload_bytes);
};

// K coefficients drawn independently and uniformly over all 256 field values.
// The all-zero vector is not redrawn (probability 256^-K).
std::vector<std::uint8_t> draw_coefficients(std::mt19937_64& rng, std::size_t generation_size);

// K packets of L independent uniform bytes.
SourceFrame make_random_frame(std::mt19937_64& rng, std::size_t generation_size,
                              std::size_t payload_bytes);

// payload[j] = sum_i coeffs[i] * frame.packet(i)[j] over GF(2^8).
CodedPacket encode(const SourceFrame& frame, std::span<const std::uint8_t> coeffs);

// Probability that N coefficient vectors drawn uniformly from GF(q)^K span
// the whole space: 0 for N < K, else prod_{i=0}^{K-1} (1 - q^(i-N)).
double full_rank_probability(std::size_t generation_size, std::size_t packet_count,
                             double field_size);

// Complement 1 - full_rank_probability computed without cancellation; needed
// where the failure probability is near the double epsilon (e.g. q=256, N>K).
double rank_deficiency_probability(std::size_t generation_size, std::size_t packet_count,
                                   double field_size);

// Incremental decoder. Stored rows are kept in reduced row-echelon form:
// each pivot coefficient is 1 with zeros above and below it, rows ordered by
// pivot column. Single-owner mutable; one decoder per (user, frame).
class Decoder {
 public:
  Decoder(std::size_t generation_size, std::size_t payload_bytes);

  // Row-reduces pkt against the stored rows. Returns true and increments the
  // rank iff pkt is linearly independent of everything received so far.
  bool receive(const CodedPacket& pkt);

  std::size_t generation_size() const { return generation_size_; }
  std::size_t payload_bytes() const { return payload_bytes_; }
  std::size_t rank() const { return rows_.size(); }
  bool complete() const { return rank() == generation_size_; }

  // Indices i whose reduced row is the unit vector e_i.
  std::vector<std::size_t> recovered_indices() const;

  // (index, payload) for every recovered index; payloads are bit-exact copies
  // of the original source packets.
  std::vector<std::pair<std::size_t, std::vector<std::uint8_t>>> recover() const;

 private:
  struct Row {
    std::vector<std::uint8_t> coeffs;
    std::vector<std::uint8_t> payload;
    std::size_t pivot;
  };

  bool row_is_unit(const Row& row) const;

  std::size_t generation_size_;
  std::size_t payload_bytes_;
  std::vector<Row> rows_;  // ordered by pivot column
};

}  // namespace owc::rlnc

#endif  // OWC_RLNC_HPP
