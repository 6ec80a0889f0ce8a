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

// Text and structured (JSON) rendering of scenario reports and Vernam
// session transcripts.
//
// Matrix and vector entries are printed as real/imaginary pairs at 12
// significant digits; residuals in scientific notation at the same
// precision, so both renderings carry identical values.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

#include "json.hpp"

#include "cdm/report.hpp"
#include "cdm/vernam.hpp"

namespace cdm::io {

using Json = nlohmann::ordered_json;

/// `x` rounded to 12 significant digits (negative zero folded to zero).
inline double round12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline std::string fmt_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}

inline std::string fmt_residual(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", round12(x));
  return buf;
}

/// "x,y,z" with three decimals per component.
inline std::string fmt_basis(const BlochVector& b) {
  const auto r3 = [](double x) {
    const double r = std::round(x * 1000.0) / 1000.0;
    return r == 0.0 ? 0.0 : r;
  };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f,%.3f,%.3f", r3(b.x()), r3(b.y()), r3(b.z()));
  return buf;
}

inline Json to_json(Complex z) { return Json::array({round12(z.real()), round12(z.imag())}); }

inline Json to_json(const BlochVector& b) { return Json::array({round12(b.x()), round12(b.y()), round12(b.z())}); }

inline Json to_json(const ComplexVector& v) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back(to_json(v(i)));
  return entries;
}

inline Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(to_json(m(i, j)));
  }
  return {{"kind", "matrix"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Json to_json(const OutputValue& value) {
  struct Visitor {
    Json operator()(const ComplexMatrix& m) const { return to_json(m); }
    Json operator()(const ComplexVector& v) const { return {{"kind", "vector"}, {"entries", to_json(v)}}; }
    Json operator()(double x) const { return {{"kind", "scalar"}, {"value", round12(x)}}; }
    Json operator()(const std::string& s) const { return {{"kind", "bits"}, {"value", s}}; }
  };
  return std::visit(Visitor{}, value);
}

inline Json to_json(const Check& c) {
  return {{"description", c.description}, {"residual", round12(c.residual)}, {"threshold", round12(c.threshold)}, {"pass", c.pass}};
}

/// {scenario, params, outputs, checks, exit}.  `params` may carry extra
/// run-level settings beyond the report's Bloch-vector inputs.
inline Json to_json(const ScenarioReport& r, Json params = Json::object()) {
  for (const auto& [name, v] : r.inputs) params[name] = to_json(v);
  Json outputs = Json::object();
  for (const auto& o : r.outputs) outputs[o.name] = to_json(o.value);
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"scenario", r.name}, {"params", std::move(params)}, {"outputs", std::move(outputs)},
          {"checks", std::move(checks)}, {"exit", r.all_pass() ? 0 : 1}};
}

inline Json to_json(const vernam::FrequencyTable& t) {
  return {{"trials", t.trials},
          {"counts", {t.counts[0], t.counts[1]}},
          {"frequencies", {round12(t.frequency(0)), round12(t.frequency(1))}},
          {"counts_by_message", {{"0", {t.counts_by_message[0][0], t.counts_by_message[0][1]}},
                                 {"1", {t.counts_by_message[1][0], t.counts_by_message[1][1]}}}}};
}

/// Session transcript: message, seed, basis, records[i] = {p, m_xor_p,
/// photon1, photon3}, decoded and the optional eavesdropper table.
inline Json to_json(const vernam::ProtocolTranscript& t) {
  Json records = Json::array();
  for (const auto& r : t.records) {
    records.push_back({{"p", r.key_bit}, {"m_xor_p", r.cipher_bit},
                       {"photon1", to_json(r.photon1.amplitudes())}, {"photon3", to_json(r.photon3.amplitudes())}});
  }
  Json doc = {{"message", t.message.str()}, {"seed", t.seed}, {"basis", fmt_basis(t.basis)},
              {"mode", vernam::to_string(t.mode)}, {"key", t.key.str()}, {"records", std::move(records)},
              {"decoded", t.decoded.str()}};
  if (t.eve) {
    Json eve = to_json(t.eve->table);
    eve["tap"] = vernam::to_string(t.eve->tap.which);
    eve["eve_basis"] = fmt_basis(t.eve->tap.basis);
    eve["outcomes"] = t.eve->outcomes.str();
    doc["eve"] = std::move(eve);
  }
  return doc;
}

inline void write_text(std::ostream& os, const ComplexMatrix& m, const std::string& indent) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << indent;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? "  " : "") << '(' << fmt_number(m(i, j).real()) << ", " << fmt_number(m(i, j).imag()) << ')';
    }
    os << '\n';
  }
}

inline void write_text(std::ostream& os, const ScenarioReport& r) {
  os << "scenario " << r.name << '\n';
  for (const auto& [name, v] : r.inputs) {
    os << "  param " << name << " = (" << fmt_number(v.x()) << ", " << fmt_number(v.y()) << ", " << fmt_number(v.z()) << ")\n";
  }
  for (const auto& o : r.outputs) {
    os << "  output " << o.name;
    if (const auto* m = std::get_if<ComplexMatrix>(&o.value)) {
      os << " [" << m->rows() << 'x' << m->cols() << "] =\n";
      write_text(os, *m, "    ");
    } else if (const auto* v = std::get_if<ComplexVector>(&o.value)) {
      os << " [" << v->size() << "] =\n";
      write_text(os, ComplexMatrix(v->transpose()), "    ");
    } else if (const auto* x = std::get_if<double>(&o.value)) {
      os << " = " << fmt_number(*x) << '\n';
    } else {
      os << " = " << std::get<std::string>(o.value) << '\n';
    }
  }
  for (const auto& c : r.checks) {
    os << "  check " << (c.pass ? "PASS" : "FAIL") << "  residual=" << fmt_residual(c.residual)
       << "  threshold=" << fmt_number(c.threshold) << "  " << c.description << '\n';
  }
  os << "exit " << (r.all_pass() ? 0 : 1) << '\n';
}

}  // namespace cdm::io
