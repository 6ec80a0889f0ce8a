// Copyright 2026 The CDM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// One-time pad algebra and its photon-pair realization.
//
// Each message bit m travels as a pair of photons: photon 1 carries a fresh
// random key bit p, photon 3 carries m ⊕ p.  Bits map to polarizations in a
// shared basis: 0 -> χ_basis, 1 -> the orthogonal state.  Bob measures both
// photons and adds the outcomes mod 2; a single photon on its own is
// maximally mixed over the key bit and says nothing about m.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cdm/engine.hpp"

namespace cdm::vernam {

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
      if (b > 1) throw InvalidState("BitString: bits must be 0 or 1");
    }
  }

  static BitString zeros(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 0)); }

  /// Parses an ASCII run of '0'/'1', most significant bit first.
  static BitString parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') throw InvalidState("BitString: expected only '0' and '1'");
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BitString(std::move(bits));
  }

  template <class Engine>
  static BitString random(std::size_t n, Engine& engine) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(engine() >> 63);
    return BitString(std::move(bits));
  }

  std::string str() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
    return s;
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_.at(i); }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  /// Number of positions where the strings differ.
  std::size_t hamming(const BitString& o) const {
    require_same_length(o);
    std::size_t d = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) d += bits_[i] != o.bits_[i];
    return d;
  }

  friend BitString operator^(const BitString& a, const BitString& b) {
    a.require_same_length(b);
    std::vector<std::uint8_t> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.bits_[i] ^ b.bits_[i];
    return BitString(std::move(out));
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  void require_same_length(const BitString& o) const {
    if (size() != o.size()) throw DimensionError("BitString: length mismatch");
  }

  std::vector<std::uint8_t> bits_;
};

/// s = m ⊕ k.
inline BitString otp_encrypt(const BitString& message, const BitString& key) { return message ^ key; }

/// m = s ⊕ k.
inline BitString otp_decrypt(const BitString& cipher, const BitString& key) { return cipher ^ key; }

/// s₁ ⊕ s₂; equals m₁ ⊕ m₂ whenever both ciphertexts reused one key.
inline BitString two_time_pad_leak(const BitString& s1, const BitString& s2) { return s1 ^ s2; }

/// 0 -> χ_basis, 1 -> orthogonal(χ_basis).
inline StateVector bit_to_state(int bit, const BlochVector& basis) {
  if (bit != 0 && bit != 1) throw InvalidState("bit_to_state: bit must be 0 or 1");
  const auto up = spin_state(basis, 1);
  return bit == 0 ? up : orthogonal_state(up);
}

struct PhotonPairRecord {
  std::size_t index = 0;
  int key_bit = 0;
  /// m ⊕ p, the bit carried by photon 3.
  int cipher_bit = 0;
  StateVector photon1;
  StateVector photon3;
  BlochVector basis;
};

inline PhotonPairRecord encode_pair(int m_bit, int p_bit, const BlochVector& basis, std::size_t index = 0) {
  if ((m_bit != 0 && m_bit != 1) || (p_bit != 0 && p_bit != 1)) throw InvalidState("encode_pair: bits must be 0 or 1");
  const int c = m_bit ^ p_bit;
  return {index, p_bit, c, bit_to_state(p_bit, basis), bit_to_state(c, basis), basis};
}

/// Prepares the same pair physically: two singlets (1,2) and (3,4), with
/// photons 2 and 4 filtered onto the states orthogonal to the wanted
/// polarizations of photons 1 and 3.  The conditional state of (1,3) is
/// split into its two single-photon factors.
inline PhotonPairRecord prepare_pair_physical(int m_bit, int p_bit, const BlochVector& basis, std::size_t index = 0,
                                              double tol = kDefaultTolerance) {
  if ((m_bit != 0 && m_bit != 1) || (p_bit != 0 && p_bit != 1)) throw InvalidState("prepare_pair_physical: bits must be 0 or 1");
  const int c = m_bit ^ p_bit;
  const auto pair = singlet(basis);
  const auto rho = density(tensor(pair, pair));
  const auto filter = tensor(projector(bit_to_state(p_bit ^ 1, basis)), projector(bit_to_state(c ^ 1, basis)));

  const auto cond = conditional(rho, filter, {1, 3}, ConditionForm::kLeft, tol);
  const auto photon1 = dominant_state(reduce(cond.conditional, {0}, tol));
  const auto photon3 = dominant_state(reduce(cond.conditional, {1}, tol));
  if (distance(cond.conditional.matrix(), projector(tensor(photon1, photon3)).matrix()) > tol) {
    throw InvalidState("prepare_pair_physical: conditioned photons 1,3 are not a product state");
  }
  return {index, p_bit, c, photon1, photon3, basis};
}

/// Outcome of a measurement of `state` in `basis` that must be
/// deterministic: 0 for χ_basis, 1 for its orthogonal complement.
inline int measure_aligned(const StateVector& state, const BlochVector& basis, double tol = kDefaultTolerance) {
  const double p0 = std::norm(inner(spin_state(basis, 1), state));
  if (p0 >= 1.0 - tol) return 0;
  if (p0 <= tol) return 1;
  throw BasisMismatch("measure_aligned: outcome is not deterministic in this basis");
}

/// Bob's decoding: measure both photons in the agreed basis and add mod 2.
inline int bob_decode(const PhotonPairRecord& record, const BlochVector& basis, double tol = kDefaultTolerance) {
  return measure_aligned(record.photon1, basis, tol) ^ measure_aligned(record.photon3, basis, tol);
}

enum class PrepMode { kDirect, kPhysical };

enum class Tap { kPhoton1, kPhoton3 };

inline const char* to_string(PrepMode m) { return m == PrepMode::kDirect ? "direct" : "physical"; }
inline const char* to_string(Tap t) { return t == Tap::kPhoton1 ? "photon1" : "photon3"; }

struct EveTap {
  Tap which = Tap::kPhoton3;
  BlochVector basis = BlochVector::z_axis();
};

/// Outcome counts of single-photon measurements; outcome 0 means "found
/// along the measurement basis".
struct FrequencyTable {
  std::size_t trials = 0;
  std::array<std::size_t, 2> counts{0, 0};
  /// counts_by_message[m][outcome]
  std::array<std::array<std::size_t, 2>, 2> counts_by_message{{{0, 0}, {0, 0}}};

  double frequency(int outcome) const {
    return trials == 0 ? 0.0 : static_cast<double>(counts.at(outcome)) / static_cast<double>(trials);
  }

  void record(int message_bit, int outcome) {
    ++trials;
    ++counts[outcome];
    ++counts_by_message[message_bit][outcome];
  }
};

struct EveView {
  EveTap tap;
  /// Outcome per pair, in message order.
  BitString outcomes;
  FrequencyTable table;
};

struct ProtocolTranscript {
  BitString message;
  std::uint64_t seed = 0;
  BlochVector basis = BlochVector::z_axis();
  PrepMode mode = PrepMode::kDirect;
  BitString key;
  std::vector<PhotonPairRecord> records;
  BitString decoded;
  std::optional<EveView> eve;
};

namespace detail {

enum class Stream : std::uint64_t { kKey = 0, kEve = 1, kStats = 2 };

/// Independent generator per (seed, purpose, substream).
inline std::mt19937_64 make_engine(std::uint64_t seed, Stream stream, std::uint32_t substream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), substream};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

/// Born-rule measurement of `state` in `basis`.
inline int sample_outcome(const StateVector& state, const BlochVector& basis, std::mt19937_64& engine) {
  const double p0 = std::norm(inner(spin_state(basis, 1), state));
  return uniform01(engine) < p0 ? 0 : 1;
}

}  // namespace detail

/// Sends `message` bit by bit as photon pairs with key bits drawn from the
/// seeded generator, then decodes as Bob.  An optional tap records what an
/// eavesdropper would see measuring one photon of each pair; the tap samples
/// the Born distribution and does not disturb the photons Bob receives.
inline ProtocolTranscript run_session(const BitString& message, std::uint64_t seed, const BlochVector& basis,
                                      PrepMode mode = PrepMode::kDirect, std::optional<EveTap> tap = std::nullopt) {
  if (message.empty()) throw InvalidState("run_session: message is empty");

  ProtocolTranscript t;
  t.message = message;
  t.seed = seed;
  t.basis = basis;
  t.mode = mode;

  auto key_engine = detail::make_engine(seed, detail::Stream::kKey);
  t.key = BitString::random(message.size(), key_engine);

  t.records.reserve(message.size());
  for (std::size_t i = 0; i < message.size(); ++i) {
    if (mode == PrepMode::kDirect) {
      t.records.push_back(encode_pair(message[i], t.key[i], basis, i));
    } else {
      t.records.push_back(prepare_pair_physical(message[i], t.key[i], basis, i));
    }
  }

  std::vector<std::uint8_t> decoded(message.size());
  for (std::size_t i = 0; i < message.size(); ++i) {
    decoded[i] = static_cast<std::uint8_t>(bob_decode(t.records[i], basis));
  }
  t.decoded = BitString(std::move(decoded));

  if (tap) {
    auto eve_engine = detail::make_engine(seed, detail::Stream::kEve);
    EveView view{*tap, {}, {}};
    std::vector<std::uint8_t> outcomes(message.size());
    for (std::size_t i = 0; i < message.size(); ++i) {
      const auto& photon = tap->which == Tap::kPhoton1 ? t.records[i].photon1 : t.records[i].photon3;
      const int o = detail::sample_outcome(photon, tap->basis, eve_engine);
      outcomes[i] = static_cast<std::uint8_t>(o);
      view.table.record(message[i], o);
    }
    view.outcomes = BitString(std::move(outcomes));
    t.eve = std::move(view);
  }
  return t;
}

/// Density matrix of the intercepted photon averaged over a uniform key bit.
inline DensityMatrix eve_marginal(Tap which, int m_bit, const BlochVector& basis) {
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (int p = 0; p < 2; ++p) {
    const auto rec = encode_pair(m_bit, p, basis);
    sum += 0.5 * projector(which == Tap::kPhoton1 ? rec.photon1 : rec.photon3).matrix();
  }
  return DensityMatrix(FactorShape{2}, sum);
}

/// Monte Carlo interception: each trial draws a message bit and a key bit
/// uniformly, prepares the pair in `basis`, and measures the tapped photon
/// in `eve_basis` with Born-rule sampling.  Distinct `substream` values give
/// independent runs under one seed.
inline FrequencyTable eve_measure_stats(std::size_t trials, std::uint64_t seed, const BlochVector& eve_basis,
                                        const BlochVector& basis, Tap which = Tap::kPhoton3,
                                        std::uint32_t substream = 0) {
  if (trials == 0) throw InvalidState("eve_measure_stats: trials must be at least 1");
  auto engine = detail::make_engine(seed, detail::Stream::kStats, substream);
  FrequencyTable table;
  for (std::size_t i = 0; i < trials; ++i) {
    const int m = static_cast<int>(engine() >> 63);
    const int p = static_cast<int>(engine() >> 63);
    const auto rec = encode_pair(m, p, basis, i);
    table.record(m, detail::sample_outcome(which == Tap::kPhoton1 ? rec.photon1 : rec.photon3, eve_basis, engine));
  }
  return table;
}

}  // namespace cdm::vernam
