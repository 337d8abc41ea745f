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

// Command-line front end: filtered predicates on streamed coordinate rows,
// filter-threshold derivations, the analytic constants table and the Monte
// Carlo experiments, with text/CSV/JSON output for scripting.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "certpred/certpred.hpp"
#include "certpred/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool ci_mode() {
  const char* v = std::getenv("CERTPRED_CI");
  return v != nullptr && std::string(v) == "1";
}

std::uint64_t pick_seed(const std::optional<std::uint64_t>& seed_flag) {
  if (seed_flag.has_value()) return *seed_flag;
  if (ci_mode())
    throw UsageError("CERTPRED_CI=1: randomized commands require an explicit --seed");
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
}

certpred::SampleDomain parse_domain(const std::string& s) {
  if (s == "ball") return certpred::SampleDomain::Ball;
  if (s == "cube") return certpred::SampleDomain::Cube;
  throw UsageError("domain must be 'ball' or 'cube'");
}

// Decimal or hexadecimal (0x1.8p-1) floating-point literal; the full token
// must parse so bit-exact fixtures can be written safely.
double parse_coordinate(const std::string& token, size_t line_no) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size() || token.empty())
    throw DataError("line " + std::to_string(line_no) + ": malformed coordinate '" + token + "'");
  if (!std::isfinite(v))
    throw DataError("line " + std::to_string(line_no) + ": non-finite coordinate '" + token + "'");
  return v;
}

std::vector<std::string> tokenize(std::string line) {
  for (char& c : line)
    if (c == ',') c = ' ';
  std::istringstream iss(line);
  std::vector<std::string> tokens;
  std::string t;
  while (iss >> t) tokens.push_back(t);
  return tokens;
}

int run_predicate(const std::string& input_path, int dim, const std::string& test,
                  int precision, const std::string& format) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!input_path.empty() && input_path != "-") {
    file.open(input_path);
    if (!file) throw UsageError("cannot open input file '" + input_path + "'");
    in = &file;
  }
  const bool orientation = test == "orientation";
  const size_t points_per_row = static_cast<size_t>(dim) + (orientation ? 0 : 1);
  const size_t coords_per_row = points_per_row * static_cast<size_t>(dim);

  nlohmann::json jout = nlohmann::json::array();
  if (format == "csv") std::cout << "line,sign,certificate,float_value,threshold\n";

  std::string line;
  size_t line_no = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != coords_per_row)
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(coords_per_row) + " coordinates, got " +
                      std::to_string(tokens.size()));
    std::vector<certpred::Point> pts(points_per_row);
    for (size_t p = 0; p < points_per_row; ++p) {
      std::array<double, certpred::kMaxDim> c{};
      for (int j = 0; j < dim; ++j)
        c[static_cast<size_t>(j)] =
            parse_coordinate(tokens[p * static_cast<size_t>(dim) + static_cast<size_t>(j)], line_no);
      try {
        pts[p] = certpred::Point::from_span(std::span<const double>(c.data(), static_cast<size_t>(dim)));
      } catch (const std::domain_error& e) {
        throw DataError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    const certpred::PredicateResult r =
        orientation ? certpred::orientation_predicate(pts, dim, precision)
                    : certpred::insphere_predicate(pts, dim, precision);
    if (format == "json") {
      jout.push_back({{"line", line_no},
                      {"sign", r.sign},
                      {"certificate", certpred::to_string(r.certificate)},
                      {"float_value", r.float_value},
                      {"threshold", r.threshold}});
    } else if (format == "csv") {
      std::cout << line_no << "," << r.sign << "," << certpred::to_string(r.certificate) << ","
                << certpred::format_double(r.float_value) << ","
                << certpred::format_double(r.threshold) << "\n";
    } else {
      std::cout << "line " << line_no << ": sign=" << (r.sign > 0 ? "+1" : r.sign < 0 ? "-1" : "0")
                << " certificate=" << certpred::to_string(r.certificate)
                << " value=" << certpred::format_double(r.float_value)
                << " threshold=" << certpred::format_double(r.threshold) << "\n";
    }
  }
  if (format == "json") std::cout << jout.dump(2) << "\n";
  return kExitOk;
}

int run_bounds(int dim, int precision, const std::string& test, const std::string& format) {
  const certpred::ExprDag dag = test == "orientation" ? certpred::build_orientation_dag(dim)
                                                      : certpred::build_insphere_dag(dim);
  const certpred::FilterReport rep = certpred::analyze(dag, precision);
  if (format == "json") {
    std::cout << certpred::filter_report_to_json(rep).dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "ref,description,expression,upper_bound,error_bound,reference,matches\n";
    for (const certpred::FilterRow& row : rep.rows) {
      std::cout << row.ref << "," << row.description << ",\"" << row.expression << "\","
                << row.mag_bound.to_string() << "," << row.err_bound.to_string() << ","
                << (row.reference_err ? row.reference_err->to_string() : "") << ","
                << (row.reference_err ? (row.matches_reference ? "yes" : "no") : "") << "\n";
    }
    std::cout << "threshold," << rep.threshold.to_string() << ","
              << certpred::format_double(rep.threshold_double()) << ",,,,\n";
  } else {
    std::cout << certpred::filter_report_to_text(rep);
  }
  return kExitOk;
}

int run_constants(const std::string& format) {
  using certpred::SampleDomain;
  nlohmann::json jrows = nlohmann::json::array();
  std::ostringstream csv;
  csv << "dim,ball_volume,sigma,psi,ball_log_coeff,ball_linear_coeff,cube_log_coeff,"
         "cube_linear_coeff,exponent\n";
  if (format == "text") {
    std::cout << "dim | v_d | sigma_d | psi_d | ball bound (log, linear) | cube bound (log, "
                 "linear) | V power\n";
  }
  for (int d = 1; d <= certpred::kMaxDim; ++d) {
    const certpred::AnalyticConstants c = certpred::AnalyticConstants::for_dim(d);
    const certpred::TailBound ball = certpred::TailBound::insphere(d, SampleDomain::Ball);
    const certpred::TailBound cube = certpred::TailBound::insphere(d, SampleDomain::Cube);
    if (format == "json") {
      jrows.push_back({{"dim", d},
                       {"ball_volume", c.ball_volume},
                       {"sigma", c.sigma},
                       {"psi", c.psi},
                       {"ball_log_coeff", ball.log_coeff},
                       {"ball_linear_coeff", ball.linear_coeff},
                       {"cube_log_coeff", cube.log_coeff},
                       {"cube_linear_coeff", cube.linear_coeff},
                       {"exponent", ball.exponent}});
    } else if (format == "csv") {
      csv << d << "," << certpred::format_double(c.ball_volume) << ","
          << certpred::format_double(c.sigma) << "," << certpred::format_double(c.psi) << ","
          << certpred::format_double(ball.log_coeff) << ","
          << certpred::format_double(ball.linear_coeff) << ","
          << certpred::format_double(cube.log_coeff) << ","
          << certpred::format_double(cube.linear_coeff) << ","
          << certpred::format_double(ball.exponent) << "\n";
    } else {
      char buf[256];
      if (d == 1) {
        std::snprintf(buf, sizeof(buf), "%d | %.6g | %.6g | %.6g | %.6g*V^(2/3) | %.6g*V^(2/3) | 2/3",
                      d, c.ball_volume, c.sigma, c.psi, ball.linear_coeff, cube.linear_coeff);
      } else {
        std::snprintf(buf, sizeof(buf), "%d | %.6g | %.6g | %.6g | (%.6g, %.6g) | (%.6g, %.6g) | 1",
                      d, c.ball_volume, c.sigma, c.psi, ball.log_coeff, ball.linear_coeff,
                      cube.log_coeff, cube.linear_coeff);
      }
      std::cout << buf << "\n";
    }
  }
  if (format == "json")
    std::cout << nlohmann::json{{"schema", certpred::kOutputSchemaVersion},
                                {"kind", "constants"},
                                {"rows", jrows}}
                     .dump(2)
              << "\n";
  else if (format == "csv")
    std::cout << csv.str();
  return kExitOk;
}

int run_simulate(certpred::ExperimentConfig cfg, const std::string& mode, int precision,
                 const std::string& format) {
  if (mode == "filter") {
    const certpred::FilterExperimentResult r = certpred::run_filter_experiment(cfg, precision);
    if (format == "json")
      std::cout << certpred::filter_result_to_json(cfg, r).dump(2) << "\n";
    else if (format == "csv")
      std::cout << certpred::filter_result_to_csv(cfg, r);
    else
      std::cout << "samples=" << r.samples << " fallback_count=" << r.fallback_count
                << " fallback_rate=" << certpred::format_double(r.fallback_rate)
                << " certified_wrong=" << r.certified_wrong
                << " threshold=" << certpred::format_double(r.threshold)
                << " precision=" << r.mantissa_bits << "\n";
    return kExitOk;
  }
  const std::vector<certpred::ExperimentRow> rows = certpred::run_tail_experiment(cfg);
  if (format == "json")
    std::cout << certpred::tail_rows_to_json(cfg, rows).dump(2) << "\n";
  else
    std::cout << certpred::tail_rows_to_csv(cfg, rows);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certpred: statically filtered exact geometric predicates, filter-threshold "
               "derivation, analytic tail bounds and Monte Carlo experiments"};
  app.require_subcommand(1);

  // predicate
  auto* pred = app.add_subcommand("predicate", "evaluate filtered predicates on coordinate rows");
  int p_dim = 3;
  std::string p_test = "insphere";
  int p_precision = 53;
  std::string p_input = "-";
  std::string p_format = "text";
  pred->add_option("--dim", p_dim, "dimension, 1..6")->required()->check(CLI::Range(1, 6));
  pred->add_option("--test", p_test, "orientation or insphere")
      ->check(CLI::IsMember({"orientation", "insphere"}));
  pred->add_option("--precision", p_precision, "mantissa bits: 53 or 24")
      ->check(CLI::IsMember({53, 24}));
  pred->add_option("--input", p_input, "input file of coordinate rows ('-' for stdin)");
  pred->add_option("--format", p_format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  // bounds
  auto* bounds = app.add_subcommand("bounds", "derive and print the static filter analysis");
  int b_dim = 3;
  int b_precision = 53;
  std::string b_test = "insphere";
  std::string b_format = "text";
  bounds->add_option("--dim", b_dim, "dimension, 1..6")->required()->check(CLI::Range(1, 6));
  bounds->add_option("--precision", b_precision, "mantissa bits: 53 or 24")
      ->check(CLI::IsMember({53, 24}));
  bounds->add_option("--test", b_test, "insphere or orientation")
      ->check(CLI::IsMember({"insphere", "orientation"}));
  bounds->add_option("--format", b_format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  // constants
  auto* consts = app.add_subcommand("constants", "print the analytic constants and bound "
                                                 "coefficients for d = 1..6");
  std::string c_format = "text";
  consts->add_option("--format", c_format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo tail / filter-rate experiments");
  int s_dim = 3;
  std::string s_domain = "cube";
  std::uint64_t s_samples = 0;
  std::optional<std::uint64_t> s_seed;
  std::string s_vgrid;
  int s_workers = 1;
  std::string s_mode = "tail";
  int s_precision = 53;
  std::string s_format = "csv";
  sim->add_option("--dim", s_dim, "dimension, 1..6")->required()->check(CLI::Range(1, 6));
  sim->add_option("--domain", s_domain, "ball or cube")->check(CLI::IsMember({"ball", "cube"}));
  sim->add_option("--samples", s_samples, "number of trials (>= 1)")->required();
  sim->add_option("--seed", s_seed, "RNG seed (required when CERTPRED_CI=1)");
  sim->add_option("--v-grid", s_vgrid, "comma-separated ascending thresholds in (0,1)");
  sim->add_option("--workers", s_workers, "worker threads (never changes the numbers)");
  sim->add_option("--mode", s_mode, "tail or filter")->check(CLI::IsMember({"tail", "filter"}));
  sim->add_option("--precision", s_precision, "mantissa bits for --mode filter: 53 or 24")
      ->check(CLI::IsMember({53, 24}));
  sim->add_option("--format", s_format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (pred->parsed()) return run_predicate(p_input, p_dim, p_test, p_precision, p_format);
    if (bounds->parsed()) return run_bounds(b_dim, b_precision, b_test, b_format);
    if (consts->parsed()) return run_constants(c_format);
    if (sim->parsed()) {
      certpred::ExperimentConfig cfg;
      cfg.dim = s_dim;
      cfg.domain = parse_domain(s_domain);
      cfg.samples = s_samples;
      cfg.workers = s_workers;
      cfg.seed = pick_seed(s_seed);
      if (!s_vgrid.empty()) {
        for (const std::string& tok : tokenize(s_vgrid)) {
          char* end = nullptr;
          const double v = std::strtod(tok.c_str(), &end);
          if (end != tok.c_str() + tok.size()) throw UsageError("malformed --v-grid value '" + tok + "'");
          cfg.v_grid.push_back(v);
        }
      }
      try {
        cfg.validate();
      } catch (const std::domain_error& e) {
        throw UsageError(e.what());
      }
      return run_simulate(cfg, s_mode, s_precision, s_format);
    }
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
