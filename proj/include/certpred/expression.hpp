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

#ifndef CERTPRED_EXPRESSION_HPP
#define CERTPRED_EXPRESSION_HPP

#include <array>
#include <stdexcept>
#include <utility>

#include "certpred/geometry.hpp"

namespace certpred::expr {

// The operation order of the filtered evaluations is part of their contract:
// the static error bound is derived for one specific expression shape, so the
// floating-point evaluator, the exact evaluator and the analysis DAG must all
// be instances of the same structure. These templates are that structure; an
// Ops type supplies input(row, col), add, sub, mul and the value_type.
//
// Shape, for an n x n matrix:
//   - orientation: expansion along the first column, recursively, with the
//     cofactor sum folded left to right: (t1 - t2) + t3 - ...
//   - insphere: expansion along the trailing squared-norm column. Norms are
//     summed left to right; the dim+1 signed cofactor terms are folded
//     pairwise (balanced), so four terms combine as (t2-t1)+(t4-t3).

template <class Ops>
concept ExpressionOps = requires(Ops ops, typename Ops::value_type v) {
  { ops.input(0, 0) } -> std::convertible_to<typename Ops::value_type>;
  { ops.add(v, v) } -> std::convertible_to<typename Ops::value_type>;
  { ops.sub(v, v) } -> std::convertible_to<typename Ops::value_type>;
  { ops.mul(v, v) } -> std::convertible_to<typename Ops::value_type>;
};


namespace detail {

template <class Ops, class V = typename Ops::value_type>
V first_col_minor(Ops& ops, const std::array<int, kMaxDim + 1>& rows, int nrows, int col) {
  if (nrows == 1) return ops.input(rows[0], col);
  V acc{};
  for (int i = 0; i < nrows; ++i) {
    std::array<int, kMaxDim + 1> sub{};
    int n = 0;
    for (int r = 0; r < nrows; ++r)
      if (r != i) sub[n++] = rows[r];
    V term = ops.mul(ops.input(rows[i], col), first_col_minor<Ops, V>(ops, sub, n, col + 1));
    if (i == 0)
      acc = std::move(term);
    else if (i % 2 == 1)
      acc = ops.sub(std::move(acc), std::move(term));
    else
      acc = ops.add(std::move(acc), std::move(term));
  }
  return acc;
}

template <class Ops, class V = typename Ops::value_type>
V squared_norm(Ops& ops, int row, int dim) {
  V acc = ops.mul(ops.input(row, 0), ops.input(row, 0));
  for (int j = 1; j < dim; ++j)
    acc = ops.add(std::move(acc), ops.mul(ops.input(row, j), ops.input(row, j)));
  return acc;
}

// Balanced pairwise fold of signed terms. For dims 1..6 the alternating sign
// pattern guarantees the final carry is positive.
template <class Ops, class V = typename Ops::value_type>
V fold_signed_terms(Ops& ops, std::array<std::pair<V, bool>, kMaxDim + 1>& terms, int n) {
  while (n > 1) {
    int m = 0;
    for (int i = 0; i + 1 < n; i += 2) {
      auto& [av, ap] = terms[i];
      auto& [bv, bp] = terms[i + 1];
      if (ap == bp)
        terms[m++] = {ops.add(std::move(av), std::move(bv)), ap};
      else if (ap)
        terms[m++] = {ops.sub(std::move(av), std::move(bv)), true};
      else
        terms[m++] = {ops.sub(std::move(bv), std::move(av)), true};
    }
    if (n % 2 == 1) terms[m++] = std::move(terms[n - 1]);
    n = m;
  }
  if (!terms[0].second) throw std::logic_error("fold_signed_terms: negative carry");
  return std::move(terms[0].first);
}

}  // namespace detail

/// det(x_ij), i,j in [0,dim): which side of the hyperplane through the origin.
template <class Ops, class V = typename Ops::value_type>
  requires ExpressionOps<Ops>
V orientation_expression(Ops& ops, int dim) {
  if (dim < 1 || dim > kMaxDim) throw std::domain_error("orientation: dim outside [1,6]");
  std::array<int, kMaxDim + 1> rows{};
  for (int i = 0; i < dim; ++i) rows[i] = i;
  return detail::first_col_minor<Ops, V>(ops, rows, dim, 0);
}

/// det of the (dim+1) x (dim+1) matrix whose rows are (coords, |coords|^2):
/// the in-sphere test against the sphere through rows 0..dim-1 and the origin.
template <class Ops, class V = typename Ops::value_type>
  requires ExpressionOps<Ops>
V insphere_expression(Ops& ops, int dim) {
  if (dim < 1 || dim > kMaxDim) throw std::domain_error("insphere: dim outside [1,6]");
  std::array<std::pair<V, bool>, kMaxDim + 1> terms{};
  for (int i = 0; i <= dim; ++i) {
    std::array<int, kMaxDim + 1> rows{};
    int n = 0;
    for (int r = 0; r <= dim; ++r)
      if (r != i) rows[n++] = r;
    V minor = detail::first_col_minor<Ops, V>(ops, rows, n, 0);
    V norm = detail::squared_norm<Ops, V>(ops, i, dim);
    // cofactor sign of entry (i, dim) in 0-based indexing: (-1)^(i+dim)
    terms[i] = {ops.mul(std::move(minor), std::move(norm)), ((i + dim) % 2) == 0};
  }
  return detail::fold_signed_terms<Ops, V>(ops, terms, dim + 1);
}

}  // namespace certpred::expr

#endif  // CERTPRED_EXPRESSION_HPP
