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

#include <gtest/gtest.h>

#include "cdm/protocol_reports.hpp"
#include "cdm/vernam.hpp"
#include "test_support.hpp"

namespace cdm::vernam {
namespace {

using testing::Rng;

BitString bits(const char* s) { return BitString::parse(s); }

TEST(BitString, ParseAndPrint) {
  EXPECT_EQ(bits("0110").str(), "0110");
  EXPECT_EQ(bits("0110")[1], 1);
  EXPECT_THROW(bits("01a"), InvalidState);
  EXPECT_THROW(BitString(std::vector<std::uint8_t>{0, 2}), InvalidState);
}

TEST(Otp, Examples) {
  EXPECT_EQ(otp_encrypt(bits("1010"), bits("0110")), bits("1100"));
  EXPECT_EQ(otp_encrypt(bits("1010"), BitString::zeros(4)), bits("1010"));
  EXPECT_THROW(otp_encrypt(bits("101"), bits("1010")), DimensionError);
  EXPECT_THROW(two_time_pad_leak(bits("1"), bits("10")), DimensionError);
}

TEST(Otp, RoundTripOnRandomStrings) {
  Rng rng(60);
  for (int t = 0; t < 1000; ++t) {
    const auto m = BitString::random(128, rng);
    const auto k = BitString::random(128, rng);
    EXPECT_EQ(otp_decrypt(otp_encrypt(m, k), k), m);
  }
}

TEST(Otp, XorAlgebra) {
  Rng rng(61);
  for (int t = 0; t < 200; ++t) {
    const auto a = BitString::random(64, rng);
    const auto b = BitString::random(64, rng);
    const auto c = BitString::random(64, rng);
    EXPECT_EQ(a ^ b, b ^ a);
    EXPECT_EQ((a ^ b) ^ c, a ^ (b ^ c));
    EXPECT_EQ(a ^ a, BitString::zeros(64));
  }
}

TEST(TwoTimePad, ReusedKeyLeaksPlaintextXor) {
  Rng rng(62);
  for (int t = 0; t < 200; ++t) {
    const auto m1 = BitString::random(96, rng);
    const auto m2 = BitString::random(96, rng);
    const auto k = BitString::random(96, rng);
    EXPECT_EQ(two_time_pad_leak(otp_encrypt(m1, k), otp_encrypt(m2, k)), m1 ^ m2);
  }
  const auto s = bits("100111");
  EXPECT_EQ(two_time_pad_leak(s, s), BitString::zeros(6));
}

TEST(TwoTimePad, DistinctKeysBreakTheIdentity) {
  // Exhaustive search over 4-bit strings: with k1 != k2 the identity never
  // holds, since s1 ^ s2 = m1 ^ m2 ^ k1 ^ k2.
  std::size_t counterexamples = 0, cases = 0;
  const auto all = [](unsigned v) {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + ((v >> (3 - i)) & 1u));
    return BitString::parse(s);
  };
  for (unsigned m1 = 0; m1 < 16; ++m1) {
    for (unsigned m2 = 0; m2 < 16; m2 += 5) {
      for (unsigned k1 = 0; k1 < 16; ++k1) {
        for (unsigned k2 = 0; k2 < 16; ++k2) {
          if (k1 == k2) continue;
          ++cases;
          const auto leak = two_time_pad_leak(otp_encrypt(all(m1), all(k1)), otp_encrypt(all(m2), all(k2)));
          counterexamples += leak != (all(m1) ^ all(m2));
        }
      }
    }
  }
  EXPECT_GT(cases, 0u);
  EXPECT_EQ(counterexamples, cases);
}

TEST(EncodePair, Examples) {
  const auto z = BlochVector::z_axis();
  const auto a = encode_pair(1, 0, z);
  EXPECT_EQ(a.photon1.amplitudes(), StateVector::qubit(1, 0).amplitudes());
  EXPECT_EQ(a.photon3.amplitudes(), StateVector::qubit(0, 1).amplitudes());
  const auto b = encode_pair(0, 1, z);
  EXPECT_EQ(b.photon1.amplitudes(), StateVector::qubit(0, 1).amplitudes());
  EXPECT_EQ(b.photon3.amplitudes(), StateVector::qubit(0, 1).amplitudes());
  EXPECT_EQ(b.cipher_bit, 1);
  EXPECT_THROW(encode_pair(2, 0, z), InvalidState);
}

TEST(EncodePair, PhotonStatesLieInTheBasis) {
  Rng rng(63);
  for (int t = 0; t < 50; ++t) {
    const auto basis = testing::random_bloch(rng);
    const auto up = spin_state(basis, 1);
    const auto down = orthogonal_state(up);
    for (int m = 0; m < 2; ++m) {
      for (int p = 0; p < 2; ++p) {
        const auto r = encode_pair(m, p, basis);
        for (const auto* photon : {&r.photon1, &r.photon3}) {
          const double f_up = std::norm(inner(up, *photon));
          const double f_down = std::norm(inner(down, *photon));
          EXPECT_TRUE((f_up > 1 - 1e-12 && f_down < 1e-12) || (f_down > 1 - 1e-12 && f_up < 1e-12));
        }
      }
    }
  }
}

TEST(BobDecode, RecoversMessageBitForAllCombinations) {
  Rng rng(64);
  const auto z = BlochVector::z_axis();
  EXPECT_EQ(bob_decode(encode_pair(1, 0, z), z), 1);
  EXPECT_EQ(bob_decode(encode_pair(1, 1, z), z), 1);
  for (int t = 0; t < 50; ++t) {
    const auto basis = testing::random_bloch(rng);
    for (int m = 0; m < 2; ++m) {
      for (int p = 0; p < 2; ++p) EXPECT_EQ(bob_decode(encode_pair(m, p, basis), basis), m);
    }
  }
}

TEST(BobDecode, MisalignedBasisRejected) {
  const auto r = encode_pair(1, 0, BlochVector::z_axis());
  EXPECT_THROW(bob_decode(r, BlochVector::x_axis()), BasisMismatch);
  // The antipodal basis flips both outcomes, which cancel.
  EXPECT_EQ(bob_decode(r, -BlochVector::z_axis()), 1);
}

TEST(PhysicalPreparation, MatchesDirectEncoding) {
  Rng rng(65);
  for (int t = 0; t < 25; ++t) {
    const auto basis = t == 0 ? BlochVector::z_axis() : testing::random_bloch(rng);
    for (int m = 0; m < 2; ++m) {
      for (int p = 0; p < 2; ++p) {
        const auto direct = encode_pair(m, p, basis);
        const auto physical = prepare_pair_physical(m, p, basis);
        EXPECT_NEAR(std::abs(inner(direct.photon1, physical.photon1)), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(inner(direct.photon3, physical.photon3)), 1.0, 1e-12);
        EXPECT_LT((direct.photon1.amplitudes() - physical.photon1.amplitudes()).norm(), 1e-10);
        EXPECT_LT((direct.photon3.amplitudes() - physical.photon3.amplitudes()).norm(), 1e-10);
      }
    }
  }
}

TEST(Session, RoundTripExample) {
  const auto t = run_session(bits("1011"), 42, BlochVector::z_axis(), PrepMode::kDirect);
  EXPECT_EQ(t.decoded, bits("1011"));
  EXPECT_EQ(t.key.size(), 4u);
  EXPECT_EQ(t.records.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(t.records[i].index, i);
    EXPECT_EQ(t.records[i].key_bit, t.key[i]);
    EXPECT_EQ(t.records[i].cipher_bit, t.message[i] ^ t.key[i]);
  }
  EXPECT_FALSE(t.eve.has_value());
}

TEST(Session, PhysicalAndDirectModesAgree) {
  Rng rng(66);
  const auto message = BitString::random(64, rng);
  const auto basis = testing::random_bloch(rng);
  const auto a = run_session(message, 9, basis, PrepMode::kDirect);
  const auto b = run_session(message, 9, basis, PrepMode::kPhysical);
  EXPECT_EQ(a.key, b.key);
  EXPECT_EQ(b.decoded, message);
  for (std::size_t i = 0; i < message.size(); ++i) {
    EXPECT_NEAR(std::abs(inner(a.records[i].photon1, b.records[i].photon1)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(a.records[i].photon3, b.records[i].photon3)), 1.0, 1e-12);
  }
}

TEST(Session, KeyIsSeedReproducible) {
  const auto m = BitString::zeros(256);
  const auto z = BlochVector::z_axis();
  EXPECT_EQ(run_session(m, 5, z).key, run_session(m, 5, z).key);
  EXPECT_NE(run_session(m, 5, z).key, run_session(m, 6, z).key);
}

TEST(Session, RoundTripForManySeedsAndLengths) {
  Rng rng(67);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (std::size_t len : {1u, 7u, 128u, 1000u}) {
      const auto m = BitString::random(len, rng);
      EXPECT_EQ(run_session(m, seed, testing::random_bloch(rng)).decoded, m);
    }
  }
}

TEST(Session, EmptyMessageRejected) {
  EXPECT_THROW(run_session(BitString{}, 0, BlochVector::z_axis()), InvalidState);
}

TEST(Session, TapRecordsOutcomesWithoutDisturbingBob) {
  Rng rng(68);
  const auto m = BitString::random(2000, rng);
  const auto t = run_session(m, 3, BlochVector::z_axis(), PrepMode::kDirect, EveTap{Tap::kPhoton3, BlochVector::x_axis()});
  ASSERT_TRUE(t.eve.has_value());
  EXPECT_EQ(t.decoded, m);
  EXPECT_EQ(t.eve->outcomes.size(), m.size());
  EXPECT_EQ(t.eve->table.trials, m.size());
  EXPECT_LT(std::abs(t.eve->table.frequency(0) - 0.5), three_sigma(m.size()));

  // Tapping photon 3 in the shared basis reads m ⊕ p exactly.
  const auto aligned = run_session(m, 3, BlochVector::z_axis(), PrepMode::kDirect, EveTap{Tap::kPhoton3, BlochVector::z_axis()});
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(aligned.eve->outcomes[i], aligned.records[i].cipher_bit);
}

TEST(EveMarginal, IsMaximallyMixed) {
  const ComplexMatrix half = ComplexMatrix::Identity(2, 2) * 0.5;
  EXPECT_LT(max_abs(eve_marginal(Tap::kPhoton1, 0, BlochVector::z_axis()).matrix() - half), 1e-15);

  // Explicit two-term average for photon 3, m = 1, x basis:
  // ½ projector(χ_{-x}) + ½ projector(χ_x).
  const auto x = BlochVector::x_axis();
  const ComplexMatrix expected = 0.5 * projector(spin_state(x, -1)).matrix() + 0.5 * projector(spin_state(x, 1)).matrix();
  EXPECT_LT(max_abs(eve_marginal(Tap::kPhoton3, 1, x).matrix() - expected), 1e-15);
  EXPECT_LT(max_abs(expected - half), 1e-15);

  Rng rng(69);
  for (int t = 0; t < 100; ++t) {
    const auto basis = testing::random_bloch(rng);
    for (const auto& [label, residual] : eve_marginal_residuals(basis)) EXPECT_LT(residual, 1e-14) << label;
  }
}

TEST(EveStats, FrequenciesWithinThreeSigma) {
  for (const auto& eve_basis : {BlochVector::z_axis(), BlochVector::x_axis(), BlochVector::y_axis()}) {
    const auto table = eve_measure_stats(10000, 11, eve_basis, BlochVector::z_axis());
    EXPECT_EQ(table.trials, 10000u);
    EXPECT_EQ(table.counts[0] + table.counts[1], 10000u);
    EXPECT_LE(std::abs(table.frequency(0) - 0.5), three_sigma(10000));
  }
}

TEST(EveStats, SingleTrialAndDeterminism) {
  const auto one = eve_measure_stats(1, 4, BlochVector::x_axis(), BlochVector::z_axis());
  EXPECT_EQ(one.trials, 1u);
  EXPECT_EQ(one.counts[0] + one.counts[1], 1u);
  const auto a = eve_measure_stats(500, 4, BlochVector::x_axis(), BlochVector::z_axis());
  const auto b = eve_measure_stats(500, 4, BlochVector::x_axis(), BlochVector::z_axis());
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_THROW(eve_measure_stats(0, 4, BlochVector::x_axis(), BlochVector::z_axis()), InvalidState);
}

TEST(Reports, ClassicalAndQuantumPass) {
  Rng rng(70);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = BitString::random(40, rng);
    EXPECT_TRUE(classical_report(m, seed).all_pass());
    EXPECT_TRUE(quantum_report(m, seed, testing::random_bloch(rng)).report.all_pass());
  }
  // A one-bit message still gets a fresh key distinct from the first.
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_TRUE(classical_report(bits("1"), seed).all_pass());
}

}  // namespace
}  // namespace cdm::vernam
