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

#ifndef CERTPRED_ERROR_ENGINE_HPP
#define CERTPRED_ERROR_ENGINE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "certpred/dyadic_bound.hpp"
#include "certpred/expression.hpp"

namespace certpred {

// Forward error analysis over the expression DAGs actually executed by the
// floating-point evaluators. Magnitude and rounding-error bounds are carried
// as exact dyadic numbers and propagated bottom-up with the rules
//
//   mag(x +- y) = mag(x) + mag(y)
//   err(x +- y) = err(x) + err(y) + (mag(x) + mag(y)) * u
//   mag(x * y)  = mag(x) * mag(y)
//   err(x * y)  = mag(x) * err(y) + mag(y) * err(x) + mag(x) * mag(y) * u
//
// with u = 2^-(m+1) the unit roundoff of m-bit-mantissa arithmetic, inputs
// bounded by 1 with entry error u (data snapped to the representable grid).
// The rules are applied literally and uniformly; where the hand-computed
// reference table for the 3-D case drops a term (its row X4), the engine
// keeps the larger strict value and reports the difference.

enum class NodeKind { Input, Add, Sub, Mul };

struct ExprNode {
  NodeKind kind = NodeKind::Input;
  const ExprNode* left = nullptr;
  const ExprNode* right = nullptr;
  int input_row = -1;
  int input_col = -1;
};

/// Arena + hash-consing builder: structurally equal subexpressions are the
/// same node, mirroring reuse of repeated minors in the evaluators.
class ExprGraph {
 public:
  const ExprNode* input(int row, int col) {
    auto [it, inserted] = inputs_.try_emplace({row, col}, nullptr);
    if (inserted) {
      ExprNode n;
      n.kind = NodeKind::Input;
      n.input_row = row;
      n.input_col = col;
      it->second = &nodes_.emplace_back(n);
    }
    return it->second;
  }

  const ExprNode* add(const ExprNode* l, const ExprNode* r) { return binary(NodeKind::Add, l, r); }
  const ExprNode* sub(const ExprNode* l, const ExprNode* r) { return binary(NodeKind::Sub, l, r); }
  const ExprNode* mul(const ExprNode* l, const ExprNode* r) { return binary(NodeKind::Mul, l, r); }

  size_t size() const { return nodes_.size(); }

 private:
  const ExprNode* binary(NodeKind k, const ExprNode* l, const ExprNode* r) {
    auto [it, inserted] = composites_.try_emplace({k, l, r}, nullptr);
    if (inserted) {
      ExprNode n;
      n.kind = k;
      n.left = l;
      n.right = r;
      it->second = &nodes_.emplace_back(n);
    }
    return it->second;
  }

  std::deque<ExprNode> nodes_;  // stable addresses
  std::map<std::pair<int, int>, const ExprNode*> inputs_;
  std::map<std::tuple<NodeKind, const ExprNode*, const ExprNode*>, const ExprNode*> composites_;
};

struct DagOps {
  using value_type = const ExprNode*;
  ExprGraph* g;
  const ExprNode* input(int i, int j) { return g->input(i, j); }
  const ExprNode* add(const ExprNode* a, const ExprNode* b) { return g->add(a, b); }
  const ExprNode* sub(const ExprNode* a, const ExprNode* b) { return g->sub(a, b); }
  const ExprNode* mul(const ExprNode* a, const ExprNode* b) { return g->mul(a, b); }
};

struct ExprDag {
  std::shared_ptr<ExprGraph> graph;
  const ExprNode* root = nullptr;
  int dim = 0;
  std::string role;  // "insphere test" / "orientation test"
};

inline ExprDag build_insphere_dag(int dim) {
  ExprDag d;
  d.graph = std::make_shared<ExprGraph>();
  DagOps ops{d.graph.get()};
  d.root = expr::insphere_expression(ops, dim);
  d.dim = dim;
  d.role = "insphere test";
  return d;
}

inline ExprDag build_orientation_dag(int dim) {
  ExprDag d;
  d.graph = std::make_shared<ExprGraph>();
  DagOps ops{d.graph.get()};
  d.root = expr::orientation_expression(ops, dim);
  d.dim = dim;
  d.role = "orientation test";
  return d;
}

/// One row of the analysis table: a structural class of subexpressions
/// (add and sub share a class, as do products with the same operand classes).
struct FilterRow {
  std::string ref;          // "X4"
  std::string description;  // "X1 x X3"
  std::string expression;   // representative, e.g. "x1*(y2*z3 - y3*z2)"
  DyadicBound mag_bound;
  DyadicBound err_bound;
  std::optional<DyadicBound> reference_err;  // hand-computed 3-D table, when known
  bool matches_reference = true;
};

struct FilterReport {
  int dim = 0;
  int mantissa_bits = 0;
  std::string role;
  DyadicBound threshold;  // err bound of the root
  DyadicBound mag_bound;  // magnitude bound of the root
  std::vector<FilterRow> rows;
  std::vector<std::string> notes;

  /// Threshold as a binary64, rounded up so the certificate never lies.
  double threshold_double() const { return threshold.to_double_round_up(); }
};

// Hand-computed reference rows for the 3-D insphere analysis under m-bit
// arithmetic: (magnitude, error in units of u = 2^-(m+1)). Row 4 of this
// reference drops one first-order term of the product rule; the strict rule
// gives 12u there, and the difference propagates to every later row.
inline constexpr std::array<std::pair<int, int>, 10> kInsphere3ReferenceRows = {{
    {1, 1}, {1, 3}, {2, 8}, {2, 10}, {4, 24}, {6, 40}, {3, 14}, {18, 222}, {36, 480}, {72, 1032},
}};

/// 129*2^-51: the reference certification threshold for the 3-D insphere
/// test with 53-bit arithmetic (1032 u at u = 2^-54).
inline const DyadicBound kReferenceInsphere3Threshold53 = DyadicBound(BigInt(129), -51);
/// 129*2^-22, the 24-bit analogue.
inline const DyadicBound kReferenceInsphere3Threshold24 = DyadicBound(BigInt(129), -22);

namespace detail {

struct ClassInfo {
  NodeKind rep_kind = NodeKind::Input;  // Add/Sub collapse to the rep's kind
  int left_class = -1, right_class = -1;  // in representative order
  const ExprNode* representative = nullptr;
  DyadicBound mag;
  DyadicBound err;
};

struct NodeState {
  int class_id = -1;
  int mark = 0;  // 0 unvisited, 1 on stack, 2 done
};

inline std::string coordinate_name(int row, int col) {
  static constexpr const char* kAxis = "xyzwvu";
  return std::string(1, kAxis[static_cast<size_t>(col)]) + std::to_string(row + 1);
}

}  // namespace detail

/// Bottom-up analysis of the DAG under m-bit mantissa arithmetic.
/// Deterministic and exact: all bound arithmetic is dyadic.
inline FilterReport analyze(const ExprDag& dag, int mantissa_bits) {
  if (mantissa_bits < 2 || mantissa_bits > 64)
    throw std::domain_error("analyze: mantissa bits outside [2,64]");
  const DyadicBound u = DyadicBound::unit_roundoff(mantissa_bits);
  const DyadicBound one(BigInt(1), 0);

  std::unordered_map<const ExprNode*, detail::NodeState> state;
  std::vector<detail::ClassInfo> classes;
  // (merged kind, sorted child classes) -> class id; inputs all share class 0.
  std::map<std::tuple<int, int, int>, int> class_index;

  // Iterative post-order with cycle detection.
  std::vector<std::pair<const ExprNode*, int>> stack;
  stack.push_back({dag.root, 0});
  while (!stack.empty()) {
    auto& [node, phase] = stack.back();
    if (node == nullptr) throw std::logic_error("analyze: null node");
    detail::NodeState& st = state[node];
    if (phase == 0) {
      if (st.mark == 1) throw std::logic_error("analyze: cycle in expression graph");
      if (st.mark == 2) {
        stack.pop_back();
        continue;
      }
      st.mark = 1;
      phase = 1;
      const ExprNode* n = node;  // references into the stack dangle on push
      if (n->kind != NodeKind::Input) {
        stack.push_back({n->right, 0});
        stack.push_back({n->left, 0});  // left on top: processed first
      }
      continue;
    }
    // children done; classify and bound
    int cls;
    if (node->kind == NodeKind::Input) {
      auto [it, inserted] = class_index.try_emplace({-1, -1, -1}, -1);
      if (inserted) {
        detail::ClassInfo info;
        info.rep_kind = NodeKind::Input;
        info.representative = node;
        info.mag = one;
        info.err = u;
        it->second = static_cast<int>(classes.size());
        classes.push_back(info);
      }
      cls = it->second;
    } else {
      const int cl = state.at(node->left).class_id;
      const int cr = state.at(node->right).class_id;
      const bool is_mul = node->kind == NodeKind::Mul;
      const int kind_key = is_mul ? 1 : 0;  // Add and Sub share a key
      auto [it, inserted] =
          class_index.try_emplace({kind_key, std::min(cl, cr), std::max(cl, cr)}, -1);
      if (inserted) {
        detail::ClassInfo info;
        info.rep_kind = node->kind;
        info.left_class = cl;
        info.right_class = cr;
        info.representative = node;
        const DyadicBound& ml = classes[static_cast<size_t>(cl)].mag;
        const DyadicBound& mr = classes[static_cast<size_t>(cr)].mag;
        const DyadicBound& el = classes[static_cast<size_t>(cl)].err;
        const DyadicBound& er = classes[static_cast<size_t>(cr)].err;
        if (is_mul) {
          info.mag = ml * mr;
          info.err = ml * er + mr * el + ml * mr * u;
        } else {
          info.mag = ml + mr;
          info.err = el + er + (ml + mr) * u;
        }
        it->second = static_cast<int>(classes.size());
        classes.push_back(info);
      }
      cls = it->second;
    }
    st.class_id = cls;
    st.mark = 2;
    stack.pop_back();
  }

  FilterReport report;
  report.dim = dag.dim;
  report.mantissa_bits = mantissa_bits;
  report.role = dag.role;
  const int root_class = state[dag.root].class_id;
  report.mag_bound = classes[static_cast<size_t>(root_class)].mag;
  report.threshold = classes[static_cast<size_t>(root_class)].err;

  // Render rows; the typical expression is the representative node's actual
  // subtree, shortened where it stops being readable.
  std::unordered_map<const ExprNode*, std::string> rendered;
  auto render = [&rendered](const ExprNode* n, auto&& self) -> const std::string& {
    auto it = rendered.find(n);
    if (it != rendered.end()) return it->second;
    std::string e;
    if (n->kind == NodeKind::Input) {
      e = detail::coordinate_name(n->input_row, n->input_col);
    } else if (n->kind == NodeKind::Mul) {
      auto wrap = [](const std::string& s) {
        return s.find(' ') != std::string::npos ? "(" + s + ")" : s;
      };
      e = wrap(self(n->left, self)) + "*" + wrap(self(n->right, self));
    } else {
      e = self(n->left, self) + (n->kind == NodeKind::Sub ? " - " : " + ") +
          self(n->right, self);
    }
    return rendered.emplace(n, std::move(e)).first->second;
  };

  for (size_t i = 0; i < classes.size(); ++i) {
    const detail::ClassInfo& info = classes[i];
    FilterRow row;
    row.ref = "X" + std::to_string(i + 1);
    if (info.rep_kind == NodeKind::Input) {
      row.description = "entry";
    } else {
      row.description = "X" + std::to_string(info.left_class + 1) +
                        (info.rep_kind == NodeKind::Mul ? " x " : " + ") + "X" +
                        std::to_string(info.right_class + 1);
    }
    const std::string& e = render(info.representative, render);
    row.expression = e.size() <= 44 ? e : "...";
    row.mag_bound = info.mag;
    row.err_bound = info.err;
    report.rows.push_back(std::move(row));
  }
  if (static_cast<size_t>(root_class) == classes.size() - 1 && !report.rows.empty())
    report.rows.back().expression = dag.role + " (d=" + std::to_string(dag.dim) + ")";

  // Attach the 3-D reference values where the layout matches.
  if (dag.dim == 3 && dag.role == "insphere test" &&
      report.rows.size() == kInsphere3ReferenceRows.size()) {
    bool first_mismatch = true;
    for (size_t i = 0; i < report.rows.size(); ++i) {
      const auto [ref_mag, ref_err_ulps] = kInsphere3ReferenceRows[i];
      DyadicBound ref_err = DyadicBound(BigInt(ref_err_ulps), 0) * u;
      report.rows[i].reference_err = ref_err;
      report.rows[i].matches_reference =
          report.rows[i].err_bound == ref_err &&
          report.rows[i].mag_bound == DyadicBound(BigInt(ref_mag), 0);
      if (!report.rows[i].matches_reference && first_mismatch) {
        first_mismatch = false;
        report.notes.push_back(
            report.rows[i].ref +
            ": strict application of the product rule gives " +
            report.rows[i].err_bound.to_string() + "; the hand-computed reference lists " +
            ref_err.to_string() + " (one first-order term dropped). The strict, larger "
            "bound is kept; the difference propagates to every later row.");
      }
    }
    if (!report.notes.empty())
      report.notes.push_back("threshold " + report.threshold.to_string() +
                             " >= reference threshold " +
                             (DyadicBound(BigInt(1032), 0) * u).to_string() +
                             "; both are sound, the strict one is used.");
  }
  return report;
}

/// Certification threshold for the filtered in-sphere test: the root error
/// bound of the analyzed DAG, rounded up to binary64.
inline double filter_threshold(int dim, int mantissa_bits) {
  if (mantissa_bits != 53 && mantissa_bits != 24)
    throw std::domain_error("filter_threshold: mantissa bits must be 53 or 24");
  static const auto table = [] {
    std::array<std::array<double, 2>, kMaxDim + 1> t{};
    for (int d = 1; d <= kMaxDim; ++d) {
      const ExprDag dag = build_insphere_dag(d);
      t[static_cast<size_t>(d)][0] = analyze(dag, 53).threshold_double();
      t[static_cast<size_t>(d)][1] = analyze(dag, 24).threshold_double();
    }
    return t;
  }();
  if (dim < 1 || dim > kMaxDim) throw std::domain_error("filter_threshold: dim outside [1,6]");
  return table[static_cast<size_t>(dim)][mantissa_bits == 53 ? 0 : 1];
}

/// Same, for the orientation determinant.
inline double orientation_threshold(int dim, int mantissa_bits) {
  if (mantissa_bits != 53 && mantissa_bits != 24)
    throw std::domain_error("orientation_threshold: mantissa bits must be 53 or 24");
  static const auto table = [] {
    std::array<std::array<double, 2>, kMaxDim + 1> t{};
    for (int d = 1; d <= kMaxDim; ++d) {
      const ExprDag dag = build_orientation_dag(d);
      t[static_cast<size_t>(d)][0] = analyze(dag, 53).threshold_double();
      t[static_cast<size_t>(d)][1] = analyze(dag, 24).threshold_double();
    }
    return t;
  }();
  if (dim < 1 || dim > kMaxDim) throw std::domain_error("orientation_threshold: dim outside [1,6]");
  return table[static_cast<size_t>(dim)][mantissa_bits == 53 ? 0 : 1];
}

}  // namespace certpred

#endif  // CERTPRED_ERROR_ENGINE_HPP
