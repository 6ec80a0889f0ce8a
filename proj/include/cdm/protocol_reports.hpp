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

// Self-checking reports for the one-time pad and its photon-pair
// realization.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cdm/report.hpp"
#include "cdm/vernam.hpp"

namespace cdm::vernam {

/// Classical pad: round trip under a random key, the two-time-pad leak when
/// the key is reused, and its failure under a fresh key.
inline ScenarioReport classical_report(const BitString& message, std::uint64_t seed) {
  if (message.empty()) throw InvalidState("classical_report: message is empty");
  ScenarioReport report;
  report.name = "vernam-classical";

  auto engine = detail::make_engine(seed, detail::Stream::kKey);
  const auto key = BitString::random(message.size(), engine);
  const auto other = BitString::random(message.size(), engine);
  auto fresh = BitString::random(message.size(), engine);
  if (fresh == key) {
    auto bits = fresh.bits();
    bits[0] ^= 1;
    fresh = BitString(std::move(bits));
  }

  const auto s1 = otp_encrypt(message, key);
  const auto s2 = otp_encrypt(other, key);
  const auto leak = two_time_pad_leak(s1, s2);
  const auto leak_fresh = two_time_pad_leak(s1, otp_encrypt(other, fresh));

  report.add_output("message", message.str());
  report.add_output("key", key.str());
  report.add_output("cipher", s1.str());
  report.add_output("second_message", other.str());
  report.add_output("second_cipher", s2.str());
  report.add_output("leak", leak.str());

  report.add_check("decrypt(encrypt(m, k), k) == m (differing bits)",
                   static_cast<double>(otp_decrypt(s1, key).hamming(message)), 0.0);
  report.add_check("reused key: s1 ^ s2 == m1 ^ m2 (differing bits)",
                   static_cast<double>(leak.hamming(message ^ other)), 0.0);
  report.add_check("fresh key: s1 ^ s2 != m1 ^ m2 (1 if equal)", leak_fresh == (message ^ other) ? 1.0 : 0.0, 0.0);
  return report;
}

/// The four single-photon marginals an eavesdropper could hold, each
/// compared with I/2.
inline std::vector<std::pair<std::string, double>> eve_marginal_residuals(const BlochVector& basis) {
  const ComplexMatrix half = ComplexMatrix::Identity(2, 2) * 0.5;
  std::vector<std::pair<std::string, double>> out;
  for (Tap which : {Tap::kPhoton1, Tap::kPhoton3}) {
    for (int m = 0; m < 2; ++m) {
      out.emplace_back(std::string(to_string(which)) + ", m=" + std::to_string(m),
                       distance(eve_marginal(which, m, basis).matrix(), half));
    }
  }
  return out;
}

struct QuantumSession {
  ScenarioReport report;
  ProtocolTranscript direct;
  ProtocolTranscript physical;
};

/// Photon-pair session in both preparation modes with a passive tap on
/// photon 3 measured in the shared basis.
inline QuantumSession quantum_report(const BitString& message, std::uint64_t seed, const BlochVector& basis,
                                     double tol = kDefaultTolerance) {
  const auto direct = run_session(message, seed, basis, PrepMode::kDirect, EveTap{Tap::kPhoton3, basis});
  const auto physical = run_session(message, seed, basis, PrepMode::kPhysical);

  ScenarioReport report;
  report.name = "vernam-quantum";
  report.inputs = {{"basis", basis}};

  std::string cipher(message.size(), '0');
  for (std::size_t i = 0; i < message.size(); ++i) cipher[i] = static_cast<char>('0' + direct.records[i].cipher_bit);
  report.add_output("message", message.str());
  report.add_output("key", direct.key.str());
  report.add_output("m_xor_p", cipher);
  report.add_output("decoded", direct.decoded.str());
  report.add_output("decoded_physical", physical.decoded.str());
  report.add_output("eve_photon3_outcomes", direct.eve->outcomes.str());

  report.add_check("direct session decodes the message (differing bits)",
                   static_cast<double>(direct.decoded.hamming(message)), 0.0);
  report.add_check("physical session decodes the message (differing bits)",
                   static_cast<double>(physical.decoded.hamming(message)), 0.0);
  report.add_check("both modes draw the same key (differing bits)", static_cast<double>(physical.key.hamming(direct.key)), 0.0);

  double worst = 0.0;
  for (std::size_t i = 0; i < message.size(); ++i) {
    worst = std::max(worst, distance(projector(physical.records[i].photon1).matrix(), projector(direct.records[i].photon1).matrix()));
    worst = std::max(worst, distance(projector(physical.records[i].photon3).matrix(), projector(direct.records[i].photon3).matrix()));
  }
  report.add_check("physical preparation matches direct photon states", worst, tol);

  for (const auto& [label, residual] : eve_marginal_residuals(basis)) {
    report.add_check("eavesdropper marginal is I/2 (" + label + ")", residual, tol);
  }
  return {std::move(report), direct, physical};
}

/// Three-sigma band for a fair-coin frequency over `n` trials.
inline double three_sigma(std::size_t n) { return 3.0 * 0.5 / std::sqrt(static_cast<double>(n)); }

/// Monte Carlo interception of each photon of the pair in each of
/// `eve_bases`; every outcome frequency must sit within three sigma of 1/2,
/// overall and split by message bit.
inline ScenarioReport eve_stats_report(std::size_t trials, std::uint64_t seed, const BlochVector& basis,
                                       const std::vector<std::pair<std::string, BlochVector>>& eve_bases) {
  ScenarioReport report;
  report.name = "eve-stats";
  report.inputs = {{"basis", basis}};
  for (const auto& [label, b] : eve_bases) report.inputs.emplace_back("eve_" + label, b);
  report.add_output("trials", static_cast<double>(trials));

  std::uint32_t substream = 0;
  for (const auto& [label, eve_basis] : eve_bases) {
    for (Tap which : {Tap::kPhoton1, Tap::kPhoton3}) {
      const auto table = eve_measure_stats(trials, seed, eve_basis, basis, which, substream++);
      const std::string tag = std::string(to_string(which)) + " in " + label;
      report.add_output("frequency0 " + tag, table.frequency(0));
      report.add_check("outcome 0 frequency within 3 sigma of 1/2 (" + tag + ")", table.frequency(0) - 0.5, three_sigma(trials));
      for (int m = 0; m < 2; ++m) {
        const auto& c = table.counts_by_message[m];
        const std::size_t n = c[0] + c[1];
        if (n == 0) continue;
        const double f = static_cast<double>(c[0]) / static_cast<double>(n);
        report.add_check("outcome 0 frequency given m=" + std::to_string(m) + " within 3 sigma of 1/2 (" + tag + ")",
                         f - 0.5, three_sigma(n));
      }
    }
  }
  return report;
}

}  // namespace cdm::vernam
