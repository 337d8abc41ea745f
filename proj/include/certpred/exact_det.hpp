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

#ifndef CERTPRED_EXACT_DET_HPP
#define CERTPRED_EXACT_DET_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "certpred/exact_scalar.hpp"
#include "certpred/expression.hpp"
#include "certpred/geometry.hpp"

namespace certpred {

/// Row-major matrix of exact scalars, at most 7x7, column-homogeneous in
/// weight (each column one degree).
class ExactMatrix {
 public:
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1 || rows > 7 || cols > 7)
      throw std::domain_error("ExactMatrix: size outside [1,7]");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  ExactScalar& at(int i, int j) { return data_[static_cast<size_t>(i) * 7 + static_cast<size_t>(j)]; }
  const ExactScalar& at(int i, int j) const {
    return data_[static_cast<size_t>(i) * 7 + static_cast<size_t>(j)];
  }

 private:
  int rows_, cols_;
  std::array<ExactScalar, 49> data_{};
};

namespace detail {

struct ExactMatrixOps {
  using value_type = ExactScalar;
  const ExactMatrix* m;
  ExactScalar input(int i, int j) const { return m->at(i, j); }
  static ExactScalar add(const ExactScalar& a, const ExactScalar& b) { return a + b; }
  static ExactScalar sub(const ExactScalar& a, const ExactScalar& b) { return a - b; }
  static ExactScalar mul(const ExactScalar& a, const ExactScalar& b) { return a * b; }
};

inline ExactScalar cofactor_det(const ExactMatrix& m) {
  ExactMatrixOps ops{&m};
  std::array<int, kMaxDim + 1> rows{};
  for (int i = 0; i < m.rows(); ++i) rows[static_cast<size_t>(i)] = i;
  return expr::detail::first_col_minor(ops, rows, m.rows(), 0);
}

// Fraction-free (Bareiss) elimination over the scaled integer image of the
// matrix. Intermediates are minors of the integer matrix, so every division
// is exact; a nonzero remainder would mean a broken invariant, not bad input.
inline ExactScalar bareiss_det(const ExactMatrix& m) {
  const int n = m.rows();
  std::vector<BigInt> a(static_cast<size_t>(n) * static_cast<size_t>(n));
  auto elem = [&](int i, int j) -> BigInt& {
    return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
  };

  int64_t total_exp = 0;
  int total_weight = 0;
  for (int j = 0; j < n; ++j) {
    const int col_weight = m.at(0, j).weight();
    int64_t col_exp = 0;
    bool seen = false;
    for (int i = 0; i < n; ++i) {
      const ExactScalar& e = m.at(i, j);
      if (e.weight() != col_weight)
        throw std::logic_error("bareiss_det: column not weight-homogeneous");
      if (e.is_zero()) continue;
      col_exp = seen ? std::min(col_exp, e.exponent()) : e.exponent();
      seen = true;
    }
    for (int i = 0; i < n; ++i) {
      const ExactScalar& e = m.at(i, j);
      elem(i, j) = e.is_zero()
                       ? BigInt(0)
                       : BigInt(e.mantissa() << static_cast<unsigned>(e.exponent() - col_exp));
    }
    total_exp += col_exp;
    total_weight += col_weight;
  }

  int det_sign = 1;
  BigInt prev = 1;
  for (int k = 0; k + 1 < n && det_sign != 0; ++k) {
    if (elem(k, k).is_zero()) {
      int pivot_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (!elem(r, k).is_zero()) {
          pivot_row = r;
          break;
        }
      if (pivot_row < 0) {
        det_sign = 0;
        break;
      }
      for (int j = 0; j < n; ++j) std::swap(elem(k, j), elem(pivot_row, j));
      det_sign = -det_sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        BigInt num = elem(k, k) * elem(i, j) - elem(i, k) * elem(k, j);
        BigInt q, r;
        boost::multiprecision::divide_qr(num, prev, q, r);
        if (!r.is_zero()) throw std::logic_error("bareiss_det: inexact division");
        elem(i, j) = std::move(q);
      }
      elem(i, k) = 0;
    }
    prev = elem(k, k);
  }

  BigInt det = det_sign == 0 ? BigInt(0)
                             : (det_sign < 0 ? BigInt(-elem(n - 1, n - 1)) : elem(n - 1, n - 1));
  return ExactScalar::from_parts(std::move(det), total_exp, total_weight);
}

// Coordinate rows as exact scalars. pts.size() rows, dim coordinate columns.
inline std::vector<std::array<ExactScalar, kMaxDim>> to_exact_rows(std::span<const Point> pts,
                                                                   int dim) {
  std::vector<std::array<ExactScalar, kMaxDim>> rows(pts.size());
  for (size_t i = 0; i < pts.size(); ++i)
    for (int j = 0; j < dim; ++j)
      rows[i][static_cast<size_t>(j)] = ExactScalar::from_double(pts[i][j]);
  return rows;
}

struct ExactRowOps {
  using value_type = ExactScalar;
  std::span<const std::array<ExactScalar, kMaxDim>> rows;
  ExactScalar input(int i, int j) const {
    return rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  static ExactScalar add(const ExactScalar& a, const ExactScalar& b) { return a + b; }
  static ExactScalar sub(const ExactScalar& a, const ExactScalar& b) { return a - b; }
  static ExactScalar mul(const ExactScalar& a, const ExactScalar& b) { return a * b; }
};

inline ExactScalar insphere_value_from_rows(
    std::span<const std::array<ExactScalar, kMaxDim>> rows, int dim) {
  if (dim <= 4) {
    ExactRowOps ops{rows};
    return expr::insphere_expression(ops, dim);
  }
  ExactMatrix m(dim + 1, dim + 1);
  ExactRowOps ops{rows};
  for (int i = 0; i <= dim; ++i) {
    for (int j = 0; j < dim; ++j) m.at(i, j) = ops.input(i, j);
    m.at(i, dim) = expr::detail::squared_norm(ops, i, dim);
  }
  return bareiss_det(m);
}

}  // namespace detail

/// Exact determinant; cofactor expansion up to 5x5, Bareiss above.
inline ExactScalar exact_det(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("exact_det: matrix not square");
  return m.rows() <= 5 ? detail::cofactor_det(m) : detail::bareiss_det(m);
}

/// Exact value of the orientation determinant of dim points.
inline ExactScalar exact_orientation_value(std::span<const Point> pts, int dim) {
  require_points(pts, dim, static_cast<size_t>(dim), "exact_orientation");
  auto rows = detail::to_exact_rows(pts, dim);
  if (dim <= 4) {
    detail::ExactRowOps ops{rows};
    return expr::orientation_expression(ops, dim);
  }
  ExactMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return detail::bareiss_det(m);
}

/// Exact value of the in-sphere determinant of dim+1 points (sphere through
/// the first dim points and the origin).
inline ExactScalar exact_insphere_value(std::span<const Point> pts, int dim) {
  require_points(pts, dim, static_cast<size_t>(dim) + 1, "exact_insphere");
  auto rows = detail::to_exact_rows(pts, dim);
  return detail::insphere_value_from_rows(rows, dim);
}

inline int exact_orientation_sign(std::span<const Point> pts, int dim) {
  return exact_orientation_value(pts, dim).sign();
}

inline int exact_insphere_sign(std::span<const Point> pts, int dim) {
  return exact_insphere_value(pts, dim).sign();
}

/// General dim+2 point in-sphere test (last point is the reference): exact
/// translation by the reference point, then the through-the-origin form.
/// Exact path only; translated coordinates leave [-1,1], so no filter exists.
inline int exact_insphere_general_sign(std::span<const Point> pts, int dim) {
  require_points(pts, dim, static_cast<size_t>(dim) + 2, "exact_insphere_general");
  std::vector<std::array<ExactScalar, kMaxDim>> rows(static_cast<size_t>(dim) + 1);
  const Point& ref = pts[static_cast<size_t>(dim) + 1];
  for (int i = 0; i <= dim; ++i)
    for (int j = 0; j < dim; ++j)
      rows[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          ExactScalar::from_double(pts[static_cast<size_t>(i)][j]) -
          ExactScalar::from_double(ref[j]);
  return detail::insphere_value_from_rows(rows, dim).sign();
}

}  // namespace certpred

#endif  // CERTPRED_EXACT_DET_HPP
