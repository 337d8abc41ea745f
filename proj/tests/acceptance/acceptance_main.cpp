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

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any fail. The heavy criteria use the
// sample counts they promise, so a full run takes a few minutes.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "certpred/certpred.hpp"
#include "certpred/io.hpp"
#include "support/fixtures.hpp"
#include "support/rational_oracle.hpp"
#include "support/subprocess.hpp"

namespace {

using namespace certpred;

struct Check {
  bool ok = true;
  std::vector<std::string> details;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      details.push_back(what);
    }
  }
};

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream iss(s);
  std::string line;
  while (std::getline(iss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  for (std::string& f : fields) {
    while (!f.empty() && f.front() == ' ') f.erase(f.begin());
    while (!f.empty() && f.back() == ' ') f.pop_back();
  }
  return fields;
}

// ---- criterion 1: 3-D filter table via the CLI ----------------------------
Check criterion1() {
  Check c;
  const auto run = testing::run_command(testing::cli_path() + " bounds --dim 3 --precision 53");
  c.expect(run.exit_code == 0, "bounds command failed");
  const std::vector<std::string> lines = split_lines(run.output);

  const std::vector<std::string> want_mag = {"1", "1", "2", "2", "4", "6", "3", "18", "36", "72"};
  const std::vector<std::string> want_err_exact = {"2^-54", "3*2^-54", "2^-51", "", "", "",
                                                   "7*2^-53", "", "", ""};
  int seen_rows = 0;
  bool x4_flagged = false;
  for (const std::string& line : lines) {
    if (line.rfind("X", 0) != 0) continue;
    const std::vector<std::string> f = split_fields(line, '|');
    if (f.size() < 6) continue;
    const int idx = seen_rows++;
    if (idx >= 10) continue;
    c.expect(f[3] == want_mag[static_cast<size_t>(idx)],
             "row " + f[0] + " magnitude " + f[3] + " != " + want_mag[static_cast<size_t>(idx)]);
    if (!want_err_exact[static_cast<size_t>(idx)].empty())
      c.expect(f[4] == want_err_exact[static_cast<size_t>(idx)],
               "row " + f[0] + " error bound " + f[4] +
                   " != " + want_err_exact[static_cast<size_t>(idx)]);
    if (f[0] == "X4") x4_flagged = f[5].rfind("*", 0) == 0;
  }
  c.expect(seen_rows == 10, "expected 10 table rows, saw " + std::to_string(seen_rows));
  c.expect(x4_flagged, "X4 divergence not flagged in output");

  const FilterReport rep = analyze(build_insphere_dag(3), 53);
  c.expect(rep.threshold >= kReferenceInsphere3Threshold53,
           "threshold below 129*2^-51");
  c.expect(rep.threshold <= kReferenceInsphere3Threshold53 * DyadicBound(BigInt(5), -2),
           "threshold above 1.25 * 129*2^-51");
  bool printed_threshold = false;
  for (const std::string& line : lines)
    if (line.rfind("threshold: " + rep.threshold.to_string(), 0) == 0) printed_threshold = true;
  c.expect(printed_threshold, "threshold line missing");
  return c;
}

// ---- criterion 2: filter soundness at scale --------------------------------
Check criterion2() {
  Check c;
  std::uint64_t certified_wrong = 0;
  std::uint64_t fallbacks = 0;
  for (int dim : {2, 3}) {
    const std::uint64_t n = 10000000;
    const double threshold = filter_threshold(dim, 53);
    std::array<Point, kMaxDim + 1> pts{};
    for (std::uint64_t t = 0; t < n; ++t) {
      RngStream rng(0xacce5500u + static_cast<std::uint64_t>(dim), t);
      for (int i = 0; i <= dim; ++i) pts[static_cast<size_t>(i)] = testing::random_cube_point(dim, rng);
      const std::span<const Point> view(pts.data(), static_cast<size_t>(dim) + 1);
      const double value = insphere_value<double>(view, dim);
      if (std::fabs(value) > threshold) {
        const int sign = value > 0.0 ? 1 : -1;
        if (sign != exact_insphere_sign(view, dim)) ++certified_wrong;
      } else {
        ++fallbacks;
      }
    }
  }
  // Adversarial near-degenerate family: ulp-perturbed exact cosphericals.
  RngStream adv(0xadead5, 0);
  for (int i = 0; i < 100000; ++i) {
    const int dim = (i % 2 == 0) ? 3 : 2;
    const std::vector<Point> pts = testing::cospherical_instance(
        dim, adv, {.max_ulps = 16, .reflect = true, .permute = true, .max_downscale = 3});
    const PredicateResult r = insphere_predicate(pts, dim, 53);
    if (r.certificate == Certificate::FloatCertified &&
        r.sign != exact_insphere_sign(pts, dim))
      ++certified_wrong;
  }
  c.expect(certified_wrong == 0,
           std::to_string(certified_wrong) + " certified results disagreed with the exact sign");
  c.details.push_back("uniform fallbacks seen: " + std::to_string(fallbacks));
  return c;
}

// ---- criterion 3: error-bound soundness -------------------------------------
Check criterion3() {
  Check c;
  for (int dim : {1, 2, 3}) {
    for (int bits : {53, 24}) {
      if (dim != 3 && bits == 24) continue;  // 3-D is the contract; 53-bit covers the rest
      const double threshold = filter_threshold(dim, bits);
      std::uint64_t violations = 0;
      std::array<Point, kMaxDim + 1> pts{};
      for (std::uint64_t t = 0; t < 1000000; ++t) {
        RngStream rng(0xe44b0000u + static_cast<std::uint64_t>(dim * 10 + (bits == 24)), t);
        for (int i = 0; i <= dim; ++i) {
          pts[static_cast<size_t>(i)] = testing::random_cube_point(dim, rng);
          if (bits == 24) pts[static_cast<size_t>(i)] = pts[static_cast<size_t>(i)].rounded_to_bits24();
        }
        const std::span<const Point> view(pts.data(), static_cast<size_t>(dim) + 1);
        const double value = bits == 53 ? insphere_value<double>(view, dim)
                                        : static_cast<double>(insphere_value<float>(view, dim));
        const double exact = exact_insphere_value(view, dim).to_double();
        if (std::fabs(value - exact) > threshold) ++violations;
      }
      c.expect(violations == 0, "dim " + std::to_string(dim) + ", " + std::to_string(bits) +
                                    "-bit: " + std::to_string(violations) + " violations");
    }
  }
  return c;
}

// ---- criterion 4: failure-probability claim ---------------------------------
Check criterion4() {
  Check c;
  const double p53 = insphere_tail(3, 129.0 * 0x1p-51, SampleDomain::Cube);
  c.expect(p53 <= 6e-11, "P at 129*2^-51 = " + format_double(p53) + " > 6e-11");
  const double p24 = insphere_tail(3, 129.0 * 0x1p-22, SampleDomain::Cube);
  c.expect(std::fabs(p24 - 0.011) <= 0.1 * 0.011,
           "P at 129*2^-22 = " + format_double(p24) + " not within 10% of 0.011");
  c.details.push_back("P53=" + format_double(p53) + " P24=" + format_double(p24));
  return c;
}

// ---- criterion 5: constants table -------------------------------------------
Check criterion5() {
  Check c;
  const double pi = 3.14159265358979323846;
  struct Row {
    int dim;
    double v, sig, ps;
    double v_tol, sig_tol, psi_tol;
  };
  const Row rows[] = {
      {1, 2.0, 1.0, 1.0, 1e-12, 1e-12, 1e-12},
      {2, pi, 8.0 / pi, pi, 1e-12, 1e-12, 1e-12},
      {3, 4.2, 5.3, 21.0, 0.05, 0.05, 2.1},
      {4, 4.9, 10.0, 380.0, 0.05, 1.0, 38.0},
      {5, 5.3, 19.0, 22000.0, 0.05, 1.9, 2200.0},
      {6, 5.2, 35.0, 4.5e6, 0.05, 3.5, 4.5e5},
  };
  for (const Row& r : rows) {
    c.expect(std::fabs(ball_volume(r.dim) - r.v) <= r.v_tol,
             "v_" + std::to_string(r.dim) + " = " + format_double(ball_volume(r.dim)));
    c.expect(std::fabs(sigma(r.dim) - r.sig) <= r.sig_tol,
             "sigma_" + std::to_string(r.dim) + " = " + format_double(sigma(r.dim)));
    c.expect(std::fabs(psi(r.dim) - r.ps) <= r.psi_tol,
             "psi_" + std::to_string(r.dim) + " = " + format_double(psi(r.dim)));
  }
  return c;
}

// ---- criterion 6: printed bound coefficients --------------------------------
Check criterion6() {
  Check c;
  const struct {
    int dim;
    double ball_log, ball_lin, cube_log, cube_lin;
  } printed[] = {
      {2, 5.0, 4.5, 4.9, 4.7},       {3, 16.0, 8.0, 32.0, 22.0},
      {4, 40.0, 14.0, 468.0, 381.0}, {5, 95.0, 24.0, 18000.0, 22000.0},
      {6, 207.0, 40.0, 2200000.0, 4500000.0},
  };
  for (const auto& row : printed) {
    const TailBound ball = TailBound::insphere(row.dim, SampleDomain::Ball);
    const TailBound cube = TailBound::insphere(row.dim, SampleDomain::Cube);
    const auto within5 = [](double got, double want) {
      return std::fabs(got - want) <= 0.05 * want;
    };
    c.expect(within5(ball.log_coeff, row.ball_log),
             "dim " + std::to_string(row.dim) + " ball log " + format_double(ball.log_coeff));
    c.expect(within5(ball.linear_coeff, row.ball_lin),
             "dim " + std::to_string(row.dim) + " ball lin " + format_double(ball.linear_coeff));
    c.expect(within5(cube.log_coeff, row.cube_log),
             "dim " + std::to_string(row.dim) + " cube log " + format_double(cube.log_coeff));
    c.expect(within5(cube.linear_coeff, row.cube_lin),
             "dim " + std::to_string(row.dim) + " cube lin " + format_double(cube.linear_coeff));
  }
  return c;
}

// ---- criterion 7: tail slopes and bound domination ---------------------------
Check criterion7() {
  Check c;
  const struct {
    int dim;
    double want_slope, tol;
  } cases[] = {{1, 2.0 / 3.0, 0.05}, {2, 1.0, 0.1}, {3, 1.0, 0.1}};
  for (const auto& cs : cases) {
    ExperimentConfig cfg;
    cfg.dim = cs.dim;
    cfg.domain = SampleDomain::Ball;
    cfg.samples = 1000000;
    cfg.seed = 1889;
    const std::vector<ExperimentRow> rows = run_tail_experiment(cfg);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const ExperimentRow& r : rows) {
      if (r.v < 1e-6 || r.v > 1e-2) continue;
      c.expect(r.empirical <= (cs.dim == 1 ? TailBound::insphere(1, SampleDomain::Ball).evaluate(r.v)
                                           : r.analytic_ball) +
                                  3.0 * r.std_error,
               "dim " + std::to_string(cs.dim) + ": empirical " + format_double(r.empirical) +
                   " above bound at V=" + format_double(r.v));
      if (r.empirical <= 0.0) continue;
      const double x = std::log(r.v);
      const double y = std::log(r.empirical);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    c.expect(std::fabs(slope - cs.want_slope) <= cs.tol,
             "dim " + std::to_string(cs.dim) + " slope " + format_double(slope));
    c.details.push_back("dim " + std::to_string(cs.dim) + " slope " + format_double(slope));
  }
  return c;
}

// ---- criterion 8: filter fallback rates --------------------------------------
Check criterion8() {
  Check c;
  ExperimentConfig cfg;
  cfg.dim = 3;
  cfg.domain = SampleDomain::Cube;
  cfg.samples = 1000000;
  cfg.seed = 421;

  const FilterExperimentResult r24 = run_filter_experiment(cfg, 24);
  const double sigma_bin = std::sqrt(0.011 * (1.0 - 0.011) / static_cast<double>(cfg.samples));
  c.expect(r24.fallback_rate <= 0.011 + 3.0 * sigma_bin,
           "24-bit fallback rate " + format_double(r24.fallback_rate));
  c.expect(r24.certified_wrong == 0, "24-bit certified-wrong nonzero");

  const FilterExperimentResult r53 = run_filter_experiment(cfg, 53);
  c.expect(r53.fallback_count == 0,
           "53-bit fallbacks observed: " + std::to_string(r53.fallback_count));
  c.expect(r53.certified_wrong == 0, "53-bit certified-wrong nonzero");
  c.details.push_back("rate24=" + format_double(r24.fallback_rate) +
                      " fallbacks53=" + std::to_string(r53.fallback_count));
  return c;
}

// ---- criterion 9: decomposition identity -------------------------------------
Check criterion9() {
  Check c;
  using certpred::testing::Rational;
  using certpred::testing::rational_from_double;
  for (int dim = 2; dim <= 4; ++dim) {
    int tested = 0;
    std::uint64_t trial = 0;
    while (tested < 10000) {
      RngStream rng(0xdec0 + static_cast<std::uint64_t>(dim), trial++);
      const std::vector<Point> pts =
          testing::random_cube_points(dim, static_cast<size_t>(dim) + 1, rng);
      const std::vector<Point> base(pts.begin(), pts.end() - 1);
      const Rational det = testing::oracle_orientation(base, dim);
      if (det == 0) continue;
      ++tested;

      // Exact right side: orientation times power of the query point, with the
      // sphere solved exactly from the linear system.
      std::vector<Rational> nums(static_cast<size_t>(dim));
      for (int col = 0; col < dim; ++col) {
        std::vector<std::vector<Rational>> m(static_cast<size_t>(dim),
                                             std::vector<Rational>(static_cast<size_t>(dim)));
        for (int i = 0; i < dim; ++i)
          for (int j = 0; j < dim; ++j) {
            if (j == col) {
              Rational norm = 0;
              for (int k = 0; k < dim; ++k) {
                const Rational v = rational_from_double(base[static_cast<size_t>(i)][k]);
                norm += v * v;
              }
              m[static_cast<size_t>(i)][static_cast<size_t>(j)] = norm;
            } else {
              m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                  rational_from_double(base[static_cast<size_t>(i)][j]);
            }
          }
        nums[static_cast<size_t>(col)] = testing::rational_det(std::move(m));
      }
      Rational power = 0;
      for (int j = 0; j < dim; ++j) {
        const Rational qj = rational_from_double(pts.back()[j]);
        power += qj * qj - nums[static_cast<size_t>(j)] / det * qj;
      }
      const Rational rhs = det * power;
      const double lhs = insphere_value<double>(pts, dim);
      const Rational diff = Rational(boost::multiprecision::abs(rational_from_double(lhs) - rhs));
      const Rational abs_lhs = Rational(boost::multiprecision::abs(rational_from_double(lhs)));
      const Rational rel = Rational(1, 1000000000) * std::max(Rational(1), abs_lhs);
      if (diff > rel) {
        c.expect(false, "dim " + std::to_string(dim) + ": decomposition residual too large");
        break;
      }
    }
  }
  return c;
}

// ---- criterion 10: byte-identical CSV across worker counts --------------------
Check criterion10() {
  Check c;
  const std::string base = testing::cli_path() +
                           " simulate --dim 2 --domain ball --samples 1000000 --seed 7";
  const auto a = testing::run_command(base + " --workers 1");
  const auto b = testing::run_command(base + " --workers 3");
  c.expect(a.exit_code == 0 && b.exit_code == 0, "simulate run failed");
  c.expect(a.output == b.output, "worker count changed the CSV bytes");
  const std::vector<std::string> lines = split_lines(a.output);
  c.expect(lines.size() == 2 + 168,
           "expected 168 data rows, got " + std::to_string(lines.size() - 2));
  return c;
}

}  // namespace

int main() {
  const struct {
    const char* name;
    std::function<Check()> fn;
  } criteria[] = {
      {"1: dim-3 filter table, reference rows and threshold bracket", criterion1},
      {"2: filter soundness on 2x10^7 uniform + 10^5 adversarial instances", criterion2},
      {"3: rounded evaluation within derived bound, 10^6 per dim/precision", criterion3},
      {"4: fallback-probability bound at the reference thresholds", criterion4},
      {"5: constants table to displayed precision", criterion5},
      {"6: all ten bound-coefficient lines within 5%", criterion6},
      {"7: tail slopes (2/3 and ~1) with bounds dominating", criterion7},
      {"8: observed fallback rates vs claim", criterion8},
      {"9: determinant = orientation x power, 10^4 instances per dim", criterion9},
      {"10: byte-identical CSV across worker counts", criterion10},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    Check c;
    try {
      c = cr.fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.details.push_back(std::string("exception: ") + e.what());
    }
    std::printf("criterion %s: %s\n", cr.name, c.ok ? "PASS" : "FAIL");
    for (const std::string& d : c.details) std::printf("    %s\n", d.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
