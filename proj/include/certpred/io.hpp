// Copyright 2026 The Certpred Authors.
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

#ifndef CERTPRED_IO_HPP
#define CERTPRED_IO_HPP

#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "certpred/analytic_bounds.hpp"
#include "certpred/error_engine.hpp"
#include "certpred/mc_harness.hpp"

namespace certpred {

// Output schemas are versioned in the emitted metadata. The worker count is
// deliberately not part of it: partitioning cannot change the numbers, so two
// runs that differ only in workers emit identical bytes.
inline constexpr int kOutputSchemaVersion = 1;

/// Deterministic round-trippable rendering: %.17g.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string tail_experiment_metadata(const ExperimentConfig& cfg) {
  return "# certpred tail-experiment schema=" + std::to_string(kOutputSchemaVersion) +
         " dim=" + std::to_string(cfg.dim) + " domain=" + to_string(cfg.domain) +
         " samples=" + std::to_string(cfg.samples) + " seed=" + std::to_string(cfg.seed);
}

inline std::string tail_rows_to_csv(const ExperimentConfig& cfg,
                                    std::span<const ExperimentRow> rows) {
  std::string out = tail_experiment_metadata(cfg) + "\n";
  out += "V,empirical,stderr,analytic_ball,analytic_cube,samples\n";
  for (const ExperimentRow& r : rows) {
    out += format_double(r.v) + "," + format_double(r.empirical) + "," +
           format_double(r.std_error) + "," + format_double(r.analytic_ball) + "," +
           format_double(r.analytic_cube) + "," + std::to_string(r.samples) + "\n";
  }
  return out;
}

inline nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json grid = nlohmann::json::array();
  const std::vector<double> v =
      cfg.v_grid.empty() ? ExperimentConfig::default_v_grid() : cfg.v_grid;
  for (double x : v) grid.push_back(x);
  return {{"dim", cfg.dim},
          {"domain", to_string(cfg.domain)},
          {"samples", cfg.samples},
          {"seed", cfg.seed},
          {"v_grid", grid}};
}

inline nlohmann::json tail_rows_to_json(const ExperimentConfig& cfg,
                                        std::span<const ExperimentRow> rows) {
  nlohmann::json jrows = nlohmann::json::array();
  for (const ExperimentRow& r : rows) {
    jrows.push_back({{"V", r.v},
                     {"empirical", r.empirical},
                     {"stderr", r.std_error},
                     {"analytic_ball", r.analytic_ball},
                     {"analytic_cube", r.analytic_cube},
                     {"samples", r.samples}});
  }
  return {{"schema", kOutputSchemaVersion},
          {"kind", "tail-experiment"},
          {"config", experiment_config_to_json(cfg)},
          {"rows", jrows}};
}

inline std::string filter_result_to_csv(const ExperimentConfig& cfg,
                                        const FilterExperimentResult& r) {
  std::string out = "# certpred filter-experiment schema=" +
                    std::to_string(kOutputSchemaVersion) + " dim=" + std::to_string(cfg.dim) +
                    " domain=" + to_string(cfg.domain) + " samples=" + std::to_string(cfg.samples) +
                    " seed=" + std::to_string(cfg.seed) +
                    " precision=" + std::to_string(r.mantissa_bits) + "\n";
  out += "samples,fallback_count,fallback_rate,certified_wrong,threshold,precision\n";
  out += std::to_string(r.samples) + "," + std::to_string(r.fallback_count) + "," +
         format_double(r.fallback_rate) + "," + std::to_string(r.certified_wrong) + "," +
         format_double(r.threshold) + "," + std::to_string(r.mantissa_bits) + "\n";
  return out;
}

inline nlohmann::json filter_result_to_json(const ExperimentConfig& cfg,
                                            const FilterExperimentResult& r) {
  nlohmann::json j = {{"schema", kOutputSchemaVersion},
                      {"kind", "filter-experiment"},
                      {"config", experiment_config_to_json(cfg)},
                      {"samples", r.samples},
                      {"fallback_count", r.fallback_count},
                      {"fallback_rate", r.fallback_rate},
                      {"certified_wrong", r.certified_wrong},
                      {"threshold", r.threshold},
                      {"precision", r.mantissa_bits}};
  return j;
}

/// Plain-text table in the classic layout:
/// ref | description | typical expression | upper bound | error bound.
/// Rows whose error bound differs from the hand-computed reference are
/// marked with '*' and the reference value is shown.
inline std::string filter_report_to_text(const FilterReport& rep) {
  std::string out = rep.role + " analysis, d=" + std::to_string(rep.dim) + ", " +
                    std::to_string(rep.mantissa_bits) + "-bit mantissa (unit roundoff 2^-" +
                    std::to_string(rep.mantissa_bits + 1) + ")\n";
  out += "ref | description | typical expression | upper bound | error bound | reference\n";
  for (const FilterRow& row : rep.rows) {
    out += row.ref + " | " + row.description + " | " + row.expression + " | " +
           row.mag_bound.to_string() + " | " + row.err_bound.to_string() + " | ";
    if (!row.reference_err.has_value())
      out += "-";
    else if (row.matches_reference)
      out += "=";
    else
      out += "* " + row.reference_err->to_string();
    out += "\n";
  }
  out += "threshold: " + rep.threshold.to_string() + " (" +
         format_double(rep.threshold_double()) + ")\n";
  out += "magnitude bound: " + rep.mag_bound.to_string() + "\n";
  for (const std::string& n : rep.notes) out += "note: " + n + "\n";
  return out;
}

inline nlohmann::json filter_report_to_json(const FilterReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const FilterRow& row : rep.rows) {
    nlohmann::json j = {{"ref", row.ref},
                        {"description", row.description},
                        {"expression", row.expression},
                        {"upper_bound", row.mag_bound.to_string()},
                        {"error_bound", row.err_bound.to_string()},
                        {"error_bound_double", row.err_bound.to_double_round_up()}};
    if (row.reference_err.has_value()) {
      j["reference_error_bound"] = row.reference_err->to_string();
      j["matches_reference"] = row.matches_reference;
    }
    rows.push_back(j);
  }
  return {{"schema", kOutputSchemaVersion},
          {"kind", "filter-analysis"},
          {"role", rep.role},
          {"dim", rep.dim},
          {"precision", rep.mantissa_bits},
          {"threshold", rep.threshold.to_string()},
          {"threshold_double", rep.threshold_double()},
          {"magnitude_bound", rep.mag_bound.to_string()},
          {"rows", rows},
          {"notes", rep.notes}};
}

}  // namespace certpred

#endif  // CERTPRED_IO_HPP
