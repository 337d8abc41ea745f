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

#ifndef CERTPRED_PREDICATES_HPP
#define CERTPRED_PREDICATES_HPP

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "certpred/error_engine.hpp"
#include "certpred/exact_det.hpp"
#include "certpred/expression.hpp"
#include "certpred/geometry.hpp"

namespace certpred {

enum class Certificate { FloatCertified, ExactFallback };

inline const char* to_string(Certificate c) {
  return c == Certificate::FloatCertified ? "float-certified" : "exact-fallback";
}

/// Outcome of a filtered predicate. The sign is always the exact sign of the
/// underlying determinant; the certificate records whether the rounded
/// evaluation alone proved it (|float_value| > threshold) or the exact
/// fallback was consulted.
struct PredicateResult {
  int sign = 0;
  Certificate certificate = Certificate::ExactFallback;
  double float_value = 0.0;
  double threshold = 0.0;
};

namespace detail {

template <typename FT>
struct PointMatrixOps {
  using value_type = FT;
  std::span<const Point> pts;
  FT input(int i, int j) const { return static_cast<FT>(pts[static_cast<size_t>(i)][j]); }
  static FT add(FT a, FT b) { return a + b; }
  static FT sub(FT a, FT b) { return a - b; }
  static FT mul(FT a, FT b) { return a * b; }
};

template <typename FT>
struct DoubleMatrixOps {
  using value_type = FT;
  const std::array<std::array<double, kMaxDim>, kMaxDim>* m;
  FT input(int i, int j) const {
    return static_cast<FT>((*m)[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  }
  static FT add(FT a, FT b) { return a + b; }
  static FT sub(FT a, FT b) { return a - b; }
  static FT mul(FT a, FT b) { return a * b; }
};

}  // namespace detail

/// Rounded orientation determinant in FT arithmetic, in the exact operation
/// order the error analysis is derived for.
template <typename FT = double>
FT orientation_value(std::span<const Point> pts, int dim) {
  require_points(pts, dim, static_cast<size_t>(dim), "orientation");
  detail::PointMatrixOps<FT> ops{pts};
  return expr::orientation_expression(ops, dim);
}

/// Rounded in-sphere determinant (sphere through pts[0..dim-1] and the
/// origin, queried with pts[dim]) in FT arithmetic, pinned operation order.
template <typename FT = double>
FT insphere_value(std::span<const Point> pts, int dim) {
  require_points(pts, dim, static_cast<size_t>(dim) + 1, "insphere");
  detail::PointMatrixOps<FT> ops{pts};
  return expr::insphere_expression(ops, dim);
}

namespace detail {

inline void check_precision(int mantissa_bits) {
  if (mantissa_bits != 53 && mantissa_bits != 24)
    throw std::domain_error("predicate: precision must be 53 or 24 mantissa bits");
}

// Copy of the input with every coordinate snapped to a 24-bit mantissa.
// Identity if the caller already rounded, which is the documented precondition;
// the predicate rounds anyway so both paths always see the same data.
inline std::array<Point, kMaxDim + 1> rounded_copy(std::span<const Point> pts) {
  std::array<Point, kMaxDim + 1> out{};
  for (size_t i = 0; i < pts.size(); ++i) out[i] = pts[i].rounded_to_bits24();
  return out;
}

}  // namespace detail

inline PredicateResult insphere_predicate(std::span<const Point> pts, int dim,
                                          int mantissa_bits = 53) {
  detail::check_precision(mantissa_bits);
  require_points(pts, dim, static_cast<size_t>(dim) + 1, "insphere");
  PredicateResult r;
  r.threshold = filter_threshold(dim, mantissa_bits);
  std::array<Point, kMaxDim + 1> rounded;
  if (mantissa_bits == 24) {
    rounded = detail::rounded_copy(pts);
    pts = std::span<const Point>(rounded.data(), pts.size());
    r.float_value = static_cast<double>(insphere_value<float>(pts, dim));
  } else {
    r.float_value = insphere_value<double>(pts, dim);
  }
  if (std::fabs(r.float_value) > r.threshold) {
    r.certificate = Certificate::FloatCertified;
    r.sign = r.float_value > 0.0 ? 1 : -1;
  } else {
    r.certificate = Certificate::ExactFallback;
    r.sign = exact_insphere_sign(pts, dim);
  }
  return r;
}

inline PredicateResult orientation_predicate(std::span<const Point> pts, int dim,
                                             int mantissa_bits = 53) {
  detail::check_precision(mantissa_bits);
  require_points(pts, dim, static_cast<size_t>(dim), "orientation");
  PredicateResult r;
  r.threshold = orientation_threshold(dim, mantissa_bits);
  std::array<Point, kMaxDim + 1> rounded;
  if (mantissa_bits == 24) {
    rounded = detail::rounded_copy(pts);
    pts = std::span<const Point>(rounded.data(), pts.size());
    r.float_value = static_cast<double>(orientation_value<float>(pts, dim));
  } else {
    r.float_value = orientation_value<double>(pts, dim);
  }
  if (std::fabs(r.float_value) > r.threshold) {
    r.certificate = Certificate::FloatCertified;
    r.sign = r.float_value > 0.0 ? 1 : -1;
  } else {
    r.certificate = Certificate::ExactFallback;
    r.sign = exact_orientation_sign(pts, dim);
  }
  return r;
}

/// Sphere through the dim input points and the origin, solved from
/// sum_j c_j x_ij = |p_i|^2 by Cramer's rule in binary64. Center is c/2 and
/// r^2 = |c/2|^2. An exactly singular system raises DegeneracyError; if the
/// rounded determinant merely underflows to zero, the exactly computed
/// determinant is used as the divisor instead.
inline Sphere circumsphere_through_origin(std::span<const Point> pts, int dim) {
  require_points(pts, dim, static_cast<size_t>(dim), "circumsphere");
  double det = orientation_value<double>(pts, dim);
  if (det == 0.0) {
    const ExactScalar exact = exact_orientation_value(pts, dim);
    if (exact.sign() == 0)
      throw DegeneracyError("circumsphere: points and origin are affinely dependent");
    det = exact.to_double();
  }

  // Right-hand side: squared norms, in the pinned summation order.
  std::array<double, kMaxDim> rhs{};
  for (int i = 0; i < dim; ++i) {
    double acc = pts[static_cast<size_t>(i)][0] * pts[static_cast<size_t>(i)][0];
    for (int j = 1; j < dim; ++j)
      acc += pts[static_cast<size_t>(i)][j] * pts[static_cast<size_t>(i)][j];
    rhs[static_cast<size_t>(i)] = acc;
  }

  Sphere s;
  s.dim = dim;
  std::array<std::array<double, kMaxDim>, kMaxDim> work{};
  for (int col = 0; col < dim; ++col) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        work[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            (j == col) ? rhs[static_cast<size_t>(i)] : pts[static_cast<size_t>(i)][j];
    detail::DoubleMatrixOps<double> ops{&work};
    const double num = expr::orientation_expression(ops, dim);
    s.center[static_cast<size_t>(col)] = (num / det) / 2.0;
  }
  double r2 = s.center[0] * s.center[0];
  for (int j = 1; j < dim; ++j)
    r2 += s.center[static_cast<size_t>(j)] * s.center[static_cast<size_t>(j)];
  s.radius_squared = r2;
  return s;
}

/// power(p, S) = |p - center|^2 - r^2: positive outside, negative inside,
/// zero on the sphere.
inline double power_of_point(const Point& p, const Sphere& s) {
  if (p.dim != s.dim) throw std::domain_error("power_of_point: dimension mismatch");
  double acc = (p[0] - s.center[0]) * (p[0] - s.center[0]);
  for (int j = 1; j < p.dim; ++j) {
    const double d = p[j] - s.center[static_cast<size_t>(j)];
    acc += d * d;
  }
  return acc - s.radius_squared;
}

}  // namespace certpred

#endif  // CERTPRED_PREDICATES_HPP
