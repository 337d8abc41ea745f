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

#ifndef CERTPRED_GEOMETRY_HPP
#define CERTPRED_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>

namespace certpred {

inline constexpr int kMaxDim = 6;

/// Point with 1..6 binary64 coordinates, each finite and inside [-1,1].
/// That box is the validity domain of the static filters; callers with wider
/// data must pre-scale.
struct Point {
  int dim = 0;
  std::array<double, kMaxDim> c{};

  Point() = default;

  Point(std::initializer_list<double> coords) {
    if (coords.size() < 1 || coords.size() > kMaxDim)
      throw std::domain_error("Point: dimension outside [1,6]");
    dim = static_cast<int>(coords.size());
    int i = 0;
    for (double x : coords) c[i++] = checked(x);
  }

  static Point from_span(std::span<const double> coords) {
    Point p;
    if (coords.size() < 1 || coords.size() > kMaxDim)
      throw std::domain_error("Point: dimension outside [1,6]");
    p.dim = static_cast<int>(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) p.c[i] = checked(coords[i]);
    return p;
  }

  double operator[](int i) const { return c[static_cast<size_t>(i)]; }

  /// Coordinates rounded to the nearest 24-bit-mantissa value, as used by the
  /// single-precision filter path.
  Point rounded_to_bits24() const {
    Point p = *this;
    for (int i = 0; i < dim; ++i) p.c[static_cast<size_t>(i)] = static_cast<double>(static_cast<float>(c[static_cast<size_t>(i)]));
    return p;
  }

 private:
  static double checked(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Point: non-finite coordinate");
    if (std::fabs(x) > 1.0) throw std::domain_error("Point: coordinate out of [-1,1]");
    return x;
  }
};

/// Sphere given by center and squared radius. Produced by the circumsphere
/// solve, whose center may well lie outside the unit box.
struct Sphere {
  int dim = 0;
  std::array<double, kMaxDim> center{};
  double radius_squared = 0.0;
};

/// Raised when a geometric construction is impossible (exactly singular
/// input), as opposed to merely ill-conditioned.
class DegeneracyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline void require_points(std::span<const Point> pts, int dim, size_t expected,
                           const char* what) {
  if (dim < 1 || dim > kMaxDim) throw std::domain_error(std::string(what) + ": dim outside [1,6]");
  if (pts.size() != expected)
    throw std::domain_error(std::string(what) + ": expected " + std::to_string(expected) +
                            " points, got " + std::to_string(pts.size()));
  for (const Point& p : pts)
    if (p.dim != dim) throw std::domain_error(std::string(what) + ": point dimension mismatch");
}

}  // namespace certpred

#endif  // CERTPRED_GEOMETRY_HPP
