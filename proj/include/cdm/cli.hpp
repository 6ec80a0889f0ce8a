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

// Command-line driver: `cdm run <scenario> [options]`.
//
// Exit status: 0 when every check passes, 1 on a check failure or internal
// error (the report is still written), 2 on a usage error.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"

#include "cdm/io.hpp"
#include "cdm/protocol_reports.hpp"
#include "cdm/scenarios.hpp"

namespace cdm::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::array<std::string_view, 7> kScenarios = {
    "parapositronium", "teleportation", "four-photon-pairs", "vernam-classical", "vernam-quantum", "eve-stats", "all"};

enum class OutputFormat { kText, kStructured };

struct RunConfig {
  std::string scenario;
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::kText;
  BlochVector m = BlochVector::x_axis();
  BlochVector n = BlochVector::z_axis();
  BlochVector s = BlochVector::z_axis();
  BlochVector basis = BlochVector::z_axis();
  vernam::BitString message = vernam::BitString::parse("1011");
  std::size_t trials = 10000;
};

struct ParseResult {
  std::optional<RunConfig> config;
  /// Exit status to use when `config` is empty.
  int exit_code = kExitSuccess;
  /// Help text or error message when `config` is empty.
  std::string message;
};

/// Parses "x,y,z".  Rejects a norm more than 1e-6 away from 1, otherwise
/// renormalizes.
inline BlochVector parse_bloch(const std::string& text) {
  std::array<double, 3> v{};
  std::istringstream is(text);
  std::string part;
  std::size_t k = 0;
  while (std::getline(is, part, ',')) {
    if (k == 3) throw CLI::ValidationError("expected three components x,y,z: " + text);
    std::size_t used = 0;
    try {
      v[k] = std::stod(part, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("unparseable number in vector: " + text);
    }
    if (used != part.size() || !std::isfinite(v[k])) throw CLI::ValidationError("unparseable number in vector: " + text);
    ++k;
  }
  if (k != 3) throw CLI::ValidationError("expected three components x,y,z: " + text);
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (std::abs(norm - 1.0) > 1e-6) throw CLI::ValidationError("vector is not normalized: " + text);
  return BlochVector::normalized(v[0], v[1], v[2]);
}

/// `args` excludes the program name.
inline ParseResult parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Conditional density matrix scenarios and photon-pair one-time pad", "cdm"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run a scenario and print its report");

  std::string scenario;
  std::string m, n, s, basis, message;
  std::string format = "text";
  RunConfig config;

  std::vector<std::string> names(kScenarios.begin(), kScenarios.end());
  run->add_option("scenario", scenario, "Scenario name")->required()->check(CLI::IsMember(names));
  run->add_option("--m", m, "Bloch vector m as x,y,z (default 1,0,0)");
  run->add_option("--n", n, "Bloch vector n as x,y,z (default 0,0,1)");
  run->add_option("--s", s, "Bloch vector s as x,y,z (default 0,0,1)");
  run->add_option("--basis", basis, "Shared polarization basis as x,y,z (default 0,0,1)");
  run->add_option("--message", message, "Message bits, e.g. 1011");
  run->add_option("--trials", config.trials, "Monte Carlo trials for eve-stats")->check(CLI::PositiveNumber);
  run->add_option("--seed", config.seed, "Random seed");
  run->add_option("--tol", config.tolerance, "Check tolerance")->check(CLI::PositiveNumber);
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (!m.empty()) config.m = parse_bloch(m);
    if (!n.empty()) config.n = parse_bloch(n);
    if (!s.empty()) config.s = parse_bloch(s);
    if (!basis.empty()) config.basis = parse_bloch(basis);
    if (run->count("--message") > 0) {
      if (message.empty() || message.find_first_not_of("01") != std::string::npos) {
        throw CLI::ValidationError("--message must be a nonempty run of 0 and 1");
      }
      config.message = vernam::BitString::parse(message);
    }
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, kExitSuccess, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return {std::nullopt, kExitSuccess, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::Error& e) {
    return {std::nullopt, kExitUsage, e.what()};
  }
  config.scenario = scenario;
  config.format = format == "structured" ? OutputFormat::kStructured : OutputFormat::kText;
  return {config, kExitSuccess, {}};
}

/// Eavesdropper measurement bases used by eve-stats.
inline std::vector<std::pair<std::string, BlochVector>> eve_bases() {
  return {{"z", BlochVector::z_axis()}, {"x", BlochVector::x_axis()}, {"y", BlochVector::y_axis()}};
}

struct ScenarioOutcome {
  ScenarioReport report;
  io::Json document;
};

namespace detail {

inline io::Json base_params(const RunConfig& c) {
  return {{"tolerance", io::round12(c.tolerance)}, {"seed", c.seed}};
}

inline ScenarioOutcome run_one(const std::string& name, const RunConfig& c) {
  auto params = base_params(c);
  if (name == "parapositronium") {
    auto r = scenarios::parapositronium(c.n, c.m, c.tolerance);
    return {r, io::to_json(r, params)};
  }
  if (name == "teleportation") {
    auto r = scenarios::teleportation(c.m, c.n, c.tolerance);
    return {r, io::to_json(r, params)};
  }
  if (name == "four-photon-pairs") {
    auto r = scenarios::four_photon_pairs(c.m, c.s, c.tolerance);
    return {r, io::to_json(r, params)};
  }
  if (name == "vernam-classical") {
    params["message"] = c.message.str();
    auto r = vernam::classical_report(c.message, c.seed);
    return {r, io::to_json(r, params)};
  }
  if (name == "vernam-quantum") {
    params["message"] = c.message.str();
    auto session = vernam::quantum_report(c.message, c.seed, c.basis, c.tolerance);
    auto doc = io::to_json(session.report, params);
    doc["transcript"] = io::to_json(session.direct);
    return {std::move(session.report), std::move(doc)};
  }
  if (name == "eve-stats") {
    params["trials"] = c.trials;
    auto r = vernam::eve_stats_report(c.trials, c.seed, c.basis, eve_bases());
    return {r, io::to_json(r, params)};
  }
  throw std::logic_error("unknown scenario " + name);
}

}  // namespace detail

/// Runs the configured scenario, writes the report to `out` and diagnostics
/// to `err`, and returns the exit status.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (std::find(kScenarios.begin(), kScenarios.end(), config.scenario) == kScenarios.end()) {
    err << "unknown scenario: " << config.scenario << '\n';
    return kExitUsage;
  }
  std::vector<std::string> names;
  if (config.scenario == "all") {
    names.assign(kScenarios.begin(), kScenarios.end() - 1);
  } else {
    names.push_back(config.scenario);
  }

  std::vector<ScenarioOutcome> outcomes;
  bool ok = true;
  for (const auto& name : names) {
    try {
      outcomes.push_back(detail::run_one(name, config));
      ok = ok && outcomes.back().report.all_pass();
    } catch (const std::exception& e) {
      err << name << ": internal error: " << e.what() << '\n';
      ok = false;
    }
  }
  const int status = ok ? kExitSuccess : kExitFailure;

  if (config.format == OutputFormat::kStructured) {
    if (config.scenario == "all") {
      io::Json runs = io::Json::array();
      for (auto& o : outcomes) runs.push_back(std::move(o.document));
      auto params = detail::base_params(config);
      params["message"] = config.message.str();
      params["trials"] = config.trials;
      io::Json doc = {{"scenario", "all"}, {"params", std::move(params)}, {"runs", std::move(runs)}, {"exit", status}};
      out << doc.dump(2) << '\n';
    } else if (!outcomes.empty()) {
      out << outcomes.front().document.dump(2) << '\n';
    } else {
      out << io::Json{{"scenario", config.scenario}, {"exit", status}}.dump(2) << '\n';
    }
  } else {
    for (const auto& o : outcomes) io::write_text(out, o.report);
    if (config.scenario == "all") out << "all exit " << status << '\n';
  }
  return status;
}

}  // namespace cdm::cli
