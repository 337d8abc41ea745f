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

// Degenerate and adversarial in-sphere configurations.
//
// Exactly cospherical fixtures come from integer points on spheres through
// the origin: x^2 + y^2 = R*y in the plane and x^2 + y^2 + z^2 = R*z in
// space, scaled by a power of two into the unit box. Dyadic scaling, axis
// reflections and coordinate permutations preserve both exactness and the
// through-the-origin property, so they generate a large family from a few
// base point sets. Perturbing coordinates by a few ulps then yields the
// near-degenerate instances a filter finds hardest.

#ifndef CERTPRED_TESTS_FIXTURES_HPP
#define CERTPRED_TESTS_FIXTURES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "certpred/geometry.hpp"
#include "certpred/rng.hpp"

namespace certpred::testing {

// Integer points with x^2 + y^2 = 25 y, scaled by 1/32.
inline const std::vector<std::array<int, 2>>& circle_points_25() {
  static const std::vector<std::array<int, 2>> pts = {
      {0, 25}, {10, 5}, {-10, 5}, {12, 9}, {-12, 9}, {12, 16}, {-12, 16}, {10, 20}, {-10, 20},
  };
  return pts;
}

// Integer points with x^2 + y^2 + z^2 = 25 z, scaled by 1/32.
inline const std::vector<std::array<int, 3>>& sphere_points_25() {
  static const std::vector<std::array<int, 3>> pts = {
      {0, 0, 25}, {10, 0, 5},  {0, 10, 5},  {6, 8, 5},   {8, 6, 5},   {-6, 8, 5}, {-8, 6, 5},
      {12, 0, 9}, {0, 12, 9},  {-12, 0, 9}, {0, -12, 9}, {12, 0, 16}, {0, 12, 16}, {-12, 0, 16},
      {10, 0, 20}, {0, 10, 20}, {6, 8, 20},  {8, 6, 20},  {-6, -8, 20},
  };
  return pts;
}

inline double ulp_perturb(double x, int ulps, bool up) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, up ? 2.0 : -2.0);
  return x;
}

struct DegenerateOptions {
  int max_ulps = 0;      // 0 = exactly cospherical
  bool reflect = true;   // random axis reflections
  bool permute = true;   // random coordinate permutation
  int max_downscale = 3; // extra power-of-two shrink, 0..max
};

/// dim+1 points lying exactly on a sphere through the origin (before any ulp
/// perturbation), dim in {2,3}.
inline std::vector<Point> cospherical_instance(int dim, RngStream& rng,
                                               const DegenerateOptions& opt = {}) {
  const size_t count = static_cast<size_t>(dim) + 1;
  std::array<int, 3> perm = {0, 1, 2};
  std::array<int, 3> flip = {1, 1, 1};
  if (opt.permute) {
    for (int j = dim - 1; j > 0; --j)
      std::swap(perm[static_cast<size_t>(j)],
                perm[static_cast<size_t>(rng.next_u64() % static_cast<std::uint64_t>(j + 1))]);
  }
  if (opt.reflect)
    for (int j = 0; j < dim; ++j) flip[static_cast<size_t>(j)] = (rng.next_u64() & 1) ? -1 : 1;
  const int shrink = opt.max_downscale > 0
                         ? static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(opt.max_downscale + 1))
                         : 0;
  const double scale = std::ldexp(1.0, -5 - shrink);  // base family has |coord| <= 25

  std::vector<Point> pts(count);
  std::vector<size_t> chosen;
  const size_t family_size = dim == 2 ? circle_points_25().size() : sphere_points_25().size();
  while (chosen.size() < count) {
    const size_t k = static_cast<size_t>(rng.next_u64() % family_size);
    if (std::find(chosen.begin(), chosen.end(), k) == chosen.end()) chosen.push_back(k);
  }
  for (size_t i = 0; i < count; ++i) {
    Point p;
    p.dim = dim;
    for (int j = 0; j < dim; ++j) {
      const int raw = dim == 2 ? circle_points_25()[chosen[i]][static_cast<size_t>(perm[static_cast<size_t>(j)])]
                               : sphere_points_25()[chosen[i]][static_cast<size_t>(perm[static_cast<size_t>(j)])];
      double x = flip[static_cast<size_t>(j)] * raw * scale;
      if (opt.max_ulps > 0) {
        const int ulps = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(opt.max_ulps + 1));
        x = ulp_perturb(x, ulps, (rng.next_u64() & 1) != 0);
      }
      p.c[static_cast<size_t>(j)] = x;
    }
    pts[i] = p;
  }
  return pts;
}

inline Point random_cube_point(int dim, RngStream& rng) {
  Point p;
  p.dim = dim;
  for (int j = 0; j < dim; ++j) p.c[static_cast<size_t>(j)] = rng.uniform_pm1();
  return p;
}

inline std::vector<Point> random_cube_points(int dim, size_t count, RngStream& rng) {
  std::vector<Point> pts(count);
  for (Point& p : pts) p = random_cube_point(dim, rng);
  return pts;
}

}  // namespace certpred::testing

#endif  // CERTPRED_TESTS_FIXTURES_HPP
