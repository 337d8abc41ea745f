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

#ifndef CERTPRED_ANALYTIC_BOUNDS_HPP
#define CERTPRED_ANALYTIC_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "certpred/error_engine.hpp"

namespace certpred {

// Closed-form tail-probability bounds for the orientation and in-sphere
// determinants of points drawn uniformly from the unit ball B_d or the cube
// C_d = [-1,1]^d. For d >= 2 the in-sphere tail is near-linear,
// A*V*ln(1/V) + B*V; in dimension 1 it is c * V^(2/3). All constants are
// recomputed from their closed forms; the rounded values quoted in the
// reference tables serve as test checks only.

enum class SampleDomain { Ball, Cube };

inline const char* to_string(SampleDomain d) {
  return d == SampleDomain::Ball ? "ball" : "cube";
}

namespace detail {

inline void check_dim(int dim, const char* what) {
  if (dim < 1 || dim > kMaxDim) throw std::domain_error(std::string(what) + ": dim outside [1,6]");
}

inline double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

inline double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace detail

/// Volume v_d of the unit ball, via v_d = (2*pi/d) * v_{d-2}.
inline double ball_volume(int dim) {
  detail::check_dim(dim, "ball_volume");
  double v_even = 1.0;  // v_0
  double v_odd = 2.0;   // v_1
  for (int d = 2; d <= dim; ++d) {
    if (d % 2 == 0)
      v_even = 2.0 * std::numbers::pi / d * v_even;
    else
      v_odd = 2.0 * std::numbers::pi / d * v_odd;
  }
  return dim % 2 == 0 ? v_even : v_odd;
}

/// Orientation tail coefficient for the ball: sigma_d = d * v_{d-1}^d / v_d^(d-1).
inline double sigma(int dim) {
  detail::check_dim(dim, "sigma");
  const double v_prev = dim == 1 ? 1.0 : ball_volume(dim - 1);
  return dim * detail::ipow(v_prev, dim) / detail::ipow(ball_volume(dim), dim - 1);
}

/// Orientation tail coefficient for the cube:
/// psi_d = d * v_d * v_{d-1}^d * d^(d(d-1)/2) / 2^(d^2).
inline double psi(int dim) {
  detail::check_dim(dim, "psi");
  const double v_prev = dim == 1 ? 1.0 : ball_volume(dim - 1);
  return dim * ball_volume(dim) * detail::ipow(v_prev, dim) *
         detail::ipow(static_cast<double>(dim), dim * (dim - 1) / 2) /
         detail::ipow(2.0, dim * dim);
}

/// Per-dimension bundle of the closed-form constants.
struct AnalyticConstants {
  int dim = 0;
  double ball_volume = 0.0;
  double sigma = 0.0;
  double psi = 0.0;

  static AnalyticConstants for_dim(int dim) {
    detail::check_dim(dim, "AnalyticConstants");
    return {dim, certpred::ball_volume(dim), certpred::sigma(dim), certpred::psi(dim)};
  }
};

/// P(|orientation| <= V) <= sigma_d * V (ball) or psi_d * V (cube), clamped.
inline double orientation_tail(int dim, double v, SampleDomain domain) {
  detail::check_dim(dim, "orientation_tail");
  if (!(v >= 0.0)) throw std::domain_error("orientation_tail: V must be >= 0");
  const double coeff = domain == SampleDomain::Ball ? sigma(dim) : psi(dim);
  return detail::clamp01(coeff * v);
}

/// P(|power(p, S)| <= V) <= d*V (ball) or d*v_d/2^d * V (cube), clamped.
inline double power_tail(int dim, double v, SampleDomain domain) {
  detail::check_dim(dim, "power_tail");
  if (!(v >= 0.0)) throw std::domain_error("power_tail: V must be >= 0");
  const double coeff = domain == SampleDomain::Ball
                           ? static_cast<double>(dim)
                           : dim * ball_volume(dim) / detail::ipow(2.0, dim);
  return detail::clamp01(coeff * v);
}

/// Tail bound for a product of random variables a (density <= A) and b
/// (conditional tail <= B*V): P(|ab| <= V) <= (A+B)V + A*B*V*ln(1/V).
inline double product_tail(double a_coeff, double b_coeff, double v) {
  if (!(v > 0.0) || v > 1.0) throw std::domain_error("product_tail: V outside (0,1]");
  if (a_coeff < 0.0 || b_coeff < 0.0)
    throw std::domain_error("product_tail: coefficients must be >= 0");
  return (a_coeff + b_coeff) * v + a_coeff * b_coeff * v * std::log(1.0 / v);
}

/// In-sphere tail bound as an explicit coefficient bundle:
/// evaluate(V) = log_coeff * V * ln(1/V) + linear_coeff * V^exponent.
struct TailBound {
  int dim = 0;
  SampleDomain domain = SampleDomain::Ball;
  double log_coeff = 0.0;
  double linear_coeff = 0.0;
  double exponent = 1.0;

  static TailBound insphere(int dim, SampleDomain domain) {
    detail::check_dim(dim, "TailBound");
    TailBound t;
    t.dim = dim;
    t.domain = domain;
    if (dim == 1) {
      // In dimension 1 (ball and cube coincide) the tail is sublinear:
      // (17 * 2^(1/3) / 4) * V^(2/3).
      t.log_coeff = 0.0;
      t.linear_coeff = 17.0 * std::cbrt(2.0) / 4.0;
      t.exponent = 2.0 / 3.0;
      return t;
    }
    if (domain == SampleDomain::Ball) {
      const double s = sigma(dim);
      t.log_coeff = s * dim;
      t.linear_coeff = s + dim;
    } else {
      const double p = psi(dim);
      const double power_coeff = dim * ball_volume(dim) / detail::ipow(2.0, dim);
      t.log_coeff = p * power_coeff;
      t.linear_coeff = p + power_coeff;
    }
    t.exponent = 1.0;
    return t;
  }

  double evaluate(double v) const {
    if (!(v >= 0.0) || v > 1.0) throw std::domain_error("TailBound: V outside [0,1]");
    if (v == 0.0) return 0.0;
    const double log_term = log_coeff == 0.0 ? 0.0 : log_coeff * v * std::log(1.0 / v);
    const double lin_term =
        exponent == 1.0 ? linear_coeff * v : linear_coeff * std::pow(v, exponent);
    return detail::clamp01(log_term + lin_term);
  }
};

/// P(|insphere determinant| <= V), clamped to [0,1].
inline double insphere_tail(int dim, double v, SampleDomain domain) {
  return TailBound::insphere(dim, domain).evaluate(v);
}

/// Probability that the static filter must fall back to exact arithmetic:
/// the in-sphere tail evaluated at the certification threshold.
inline double failure_probability(int dim, int mantissa_bits, SampleDomain domain) {
  return insphere_tail(dim, filter_threshold(dim, mantissa_bits), domain);
}

}  // namespace certpred

#endif  // CERTPRED_ANALYTIC_BOUNDS_HPP
