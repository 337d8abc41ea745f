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

#ifndef CERTPRED_MC_HARNESS_HPP
#define CERTPRED_MC_HARNESS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "certpred/analytic_bounds.hpp"
#include "certpred/exact_det.hpp"
#include "certpred/geometry.hpp"
#include "certpred/predicates.hpp"
#include "certpred/rng.hpp"

namespace certpred {

// Monte Carlo side: empirical tail probabilities of the exact in-sphere
// determinant and observed filter fallback rates, for comparison against the
// analytic bounds. Every trial index owns a counter-based RNG stream, so the
// numbers are reproducible and independent of the worker count.

struct ExperimentConfig {
  int dim = 3;
  SampleDomain domain = SampleDomain::Cube;
  std::uint64_t samples = 0;
  std::vector<double> v_grid;  // ascending; empty means default_v_grid()
  std::uint64_t seed = 0;
  int workers = 1;

  /// 24 log-spaced thresholds per decade: 10^(-8 + j/24), j = 1..168,
  /// spanning (1e-8, 1e-1].
  static std::vector<double> default_v_grid() {
    std::vector<double> g;
    g.reserve(168);
    for (int j = 1; j <= 168; ++j) g.push_back(std::pow(10.0, -8.0 + j / 24.0));
    return g;
  }

  void validate() const {
    if (dim < 1 || dim > kMaxDim) throw std::domain_error("ExperimentConfig: dim outside [1,6]");
    if (samples < 1) throw std::domain_error("ExperimentConfig: samples must be >= 1");
    if (workers < 1) throw std::domain_error("ExperimentConfig: workers must be >= 1");
    for (double v : v_grid)
      if (!(v > 0.0) || v >= 1.0)
        throw std::domain_error("ExperimentConfig: V grid values must lie in (0,1)");
    if (!std::is_sorted(v_grid.begin(), v_grid.end()))
      throw std::domain_error("ExperimentConfig: V grid must be ascending");
  }
};

struct ExperimentRow {
  double v = 0.0;
  double empirical = 0.0;      // fraction of trials with |det| <= v
  double std_error = 0.0;      // binomial sqrt(p(1-p)/n)
  double analytic_ball = 0.0;  // in-sphere tail bound, ball domain
  double analytic_cube = 0.0;  // in-sphere tail bound, cube domain
  std::uint64_t samples = 0;
};

struct FilterExperimentResult {
  std::uint64_t samples = 0;
  std::uint64_t fallback_count = 0;
  double fallback_rate = 0.0;
  std::uint64_t certified_wrong = 0;  // must be zero: the filter is sound
  double threshold = 0.0;
  int mantissa_bits = 53;
};

/// Uniform point: cube coordinates directly, ball by rejection from the cube
/// (acceptance rate v_dim / 2^dim, at worst ~8% in dimension 6).
inline Point sample_point(int dim, SampleDomain domain, RngStream& rng) {
  if (dim < 1 || dim > kMaxDim) throw std::domain_error("sample_point: dim outside [1,6]");
  Point p;
  p.dim = dim;
  for (;;) {
    for (int j = 0; j < dim; ++j) p.c[static_cast<size_t>(j)] = rng.uniform_pm1();
    if (domain == SampleDomain::Cube) return p;
    double norm2 = p.c[0] * p.c[0];
    for (int j = 1; j < dim; ++j) norm2 += p.c[static_cast<size_t>(j)] * p.c[static_cast<size_t>(j)];
    if (norm2 <= 1.0) return p;
  }
}

namespace detail {

template <class PerTrial>
void run_partitioned(const ExperimentConfig& cfg, PerTrial&& per_trial) {
  const int workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.workers), cfg.samples));
  if (workers <= 1) {
    per_trial(0, std::uint64_t{0}, cfg.samples);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  const std::uint64_t chunk = cfg.samples / workers;
  const std::uint64_t extra = cfg.samples % workers;
  std::uint64_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t end = begin + chunk + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
    pool.emplace_back([w, begin, end, &per_trial] { per_trial(w, begin, end); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Empirical tail of |in-sphere determinant| over the V grid. The statistic
/// is the exact determinant (converted to binary64 for thresholding); the
/// rows carry both analytic bounds alongside.
inline std::vector<ExperimentRow> run_tail_experiment(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.v_grid.empty()) cfg.v_grid = ExperimentConfig::default_v_grid();
  cfg.validate();
  const size_t n_grid = cfg.v_grid.size();

  const int workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.workers), cfg.samples));
  std::vector<std::vector<std::uint64_t>> hists(
      static_cast<size_t>(std::max(workers, 1)), std::vector<std::uint64_t>(n_grid + 1, 0));

  detail::run_partitioned(cfg, [&](int w, std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t>& hist = hists[static_cast<size_t>(w)];
    std::array<Point, kMaxDim + 1> pts{};
    for (std::uint64_t t = begin; t < end; ++t) {
      RngStream rng(cfg.seed, t);
      for (int i = 0; i <= cfg.dim; ++i) pts[static_cast<size_t>(i)] = sample_point(cfg.dim, cfg.domain, rng);
      const double mag = std::fabs(
          exact_insphere_value(std::span<const Point>(pts.data(), static_cast<size_t>(cfg.dim) + 1),
                               cfg.dim)
              .to_double());
      const auto it = std::lower_bound(cfg.v_grid.begin(), cfg.v_grid.end(), mag);
      ++hist[static_cast<size_t>(it - cfg.v_grid.begin())];
    }
  });

  std::vector<std::uint64_t> hist(n_grid + 1, 0);
  for (const auto& h : hists)
    for (size_t i = 0; i <= n_grid; ++i) hist[i] += h[i];

  std::vector<ExperimentRow> rows;
  rows.reserve(n_grid);
  std::uint64_t cumulative = 0;
  const double n = static_cast<double>(cfg.samples);
  for (size_t i = 0; i < n_grid; ++i) {
    cumulative += hist[i];
    ExperimentRow row;
    row.v = cfg.v_grid[i];
    row.samples = cfg.samples;
    row.empirical = static_cast<double>(cumulative) / n;
    row.std_error = std::sqrt(row.empirical * (1.0 - row.empirical) / n);
    row.analytic_ball = insphere_tail(cfg.dim, row.v, SampleDomain::Ball);
    row.analytic_cube = insphere_tail(cfg.dim, row.v, SampleDomain::Cube);
    rows.push_back(row);
  }
  return rows;
}

/// Observed behavior of the filtered in-sphere predicate: fallback rate and
/// the count of certified results that disagree with the exact sign.
inline FilterExperimentResult run_filter_experiment(const ExperimentConfig& cfg_in,
                                                    int mantissa_bits) {
  ExperimentConfig cfg = cfg_in;
  if (cfg.v_grid.empty()) cfg.v_grid = ExperimentConfig::default_v_grid();
  cfg.validate();
  if (mantissa_bits != 53 && mantissa_bits != 24)
    throw std::domain_error("run_filter_experiment: mantissa bits must be 53 or 24");

  const int workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.workers), cfg.samples));
  std::vector<std::uint64_t> fallbacks(static_cast<size_t>(std::max(workers, 1)), 0);
  std::vector<std::uint64_t> wrong(static_cast<size_t>(std::max(workers, 1)), 0);

  detail::run_partitioned(cfg, [&](int w, std::uint64_t begin, std::uint64_t end) {
    std::array<Point, kMaxDim + 1> pts{};
    for (std::uint64_t t = begin; t < end; ++t) {
      RngStream rng(cfg.seed, t);
      for (int i = 0; i <= cfg.dim; ++i) pts[static_cast<size_t>(i)] = sample_point(cfg.dim, cfg.domain, rng);
      if (mantissa_bits == 24)
        for (int i = 0; i <= cfg.dim; ++i) pts[static_cast<size_t>(i)] = pts[static_cast<size_t>(i)].rounded_to_bits24();
      const std::span<const Point> view(pts.data(), static_cast<size_t>(cfg.dim) + 1);
      const PredicateResult r = insphere_predicate(view, cfg.dim, mantissa_bits);
      if (r.certificate == Certificate::ExactFallback) {
        ++fallbacks[static_cast<size_t>(w)];
      } else if (r.sign != exact_insphere_sign(view, cfg.dim)) {
        ++wrong[static_cast<size_t>(w)];
      }
    }
  });

  FilterExperimentResult res;
  res.samples = cfg.samples;
  res.mantissa_bits = mantissa_bits;
  res.threshold = filter_threshold(cfg.dim, mantissa_bits);
  for (std::uint64_t f : fallbacks) res.fallback_count += f;
  for (std::uint64_t c : wrong) res.certified_wrong += c;
  res.fallback_rate = static_cast<double>(res.fallback_count) / static_cast<double>(cfg.samples);
  return res;
}

}  // namespace certpred

#endif  // CERTPRED_MC_HARNESS_HPP
