// Copyright 2026 The pdlp-lite Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PDLP_SCALING_HPP
#define PDLP_SCALING_HPP

#include <cmath>
#include <span>
#include <string>
#include <utility>

#include "pdlp/errors.hpp"
#include "pdlp/problem.hpp"
#include "pdlp/sparse_matrix.hpp"

namespace pdlp {

// Diagonal preconditioner: the working matrix is diag(row_scale) * K *
// diag(col_scale). All entries are positive and finite.
struct ScalingInfo {
  Vector row_scale;  // D1, one per constraint
  Vector col_scale;  // D2, one per variable

  static ScalingInfo Identity(int64_t rows, int64_t cols) {
    return {Vector(rows, 1.0), Vector(cols, 1.0)};
  }

  // `then` was computed on the matrix already scaled by `*this`.
  ScalingInfo ComposedWith(const ScalingInfo& then) const {
    ScalingInfo out = *this;
    for (size_t i = 0; i < out.row_scale.size(); ++i) {
      out.row_scale[i] *= then.row_scale[i];
    }
    for (size_t j = 0; j < out.col_scale.size(); ++j) {
      out.col_scale[j] *= then.col_scale[j];
    }
    return out;
  }
};

enum class ScalingMode { kNone, kRuiz, kPockChambolle, kRuizThenPockChambolle };

namespace internal {

// Row and column infinity norms of diag(d1) M diag(d2).
inline std::pair<Vector, Vector> ScaledInfNorms(const SparseMatrix& m,
                                                std::span<const double> d1,
                                                std::span<const double> d2) {
  Vector row(m.rows(), 0.0);
  Vector col(m.cols(), 0.0);
  const auto start = m.row_start();
  const auto index = m.col_index();
  const auto value = m.values();
  for (int64_t r = 0; r < m.rows(); ++r) {
    for (int64_t k = start[r]; k < start[r + 1]; ++k) {
      const double a = std::abs(d1[r] * value[k] * d2[index[k]]);
      row[r] = std::max(row[r], a);
      col[index[k]] = std::max(col[index[k]], a);
    }
  }
  return {std::move(row), std::move(col)};
}

}  // namespace internal

// Ruiz equilibration: every pass divides each row and each column of the
// current scaled matrix by the square root of its infinity norm. Empty rows
// and columns keep scale 1.
inline ScalingInfo RuizRescale(const SparseMatrix& m, int num_iters) {
  ScalingInfo s = ScalingInfo::Identity(m.rows(), m.cols());
  for (int it = 0; it < num_iters; ++it) {
    const auto [row, col] = internal::ScaledInfNorms(m, s.row_scale, s.col_scale);
    for (int64_t r = 0; r < m.rows(); ++r) {
      if (row[r] > 0.0) s.row_scale[r] /= std::sqrt(row[r]);
    }
    for (int64_t c = 0; c < m.cols(); ++c) {
      if (col[c] > 0.0) s.col_scale[c] /= std::sqrt(col[c]);
    }
  }
  return s;
}

// Diagonal preconditioner of Pock and Chambolle with exponent alpha in [0, 2]:
//   D1_i = 1 / sqrt(sum_j |M_ij|^(2 - alpha)),  D2_j = 1 / sqrt(sum_i |M_ij|^alpha)
inline ScalingInfo PockChambolleRescale(const SparseMatrix& m,
                                        double alpha = 1.0) {
  if (!(alpha >= 0.0 && alpha <= 2.0)) {
    throw Error(ErrorCode::kConfigInvalid,
                "Pock-Chambolle exponent must lie in [0, 2]");
  }
  Vector row_sum(m.rows(), 0.0);
  Vector col_sum(m.cols(), 0.0);
  const auto start = m.row_start();
  const auto index = m.col_index();
  const auto value = m.values();
  for (int64_t r = 0; r < m.rows(); ++r) {
    for (int64_t k = start[r]; k < start[r + 1]; ++k) {
      const double a = std::abs(value[k]);
      row_sum[r] += std::pow(a, 2.0 - alpha);
      col_sum[index[k]] += std::pow(a, alpha);
    }
  }
  ScalingInfo s = ScalingInfo::Identity(m.rows(), m.cols());
  for (int64_t r = 0; r < m.rows(); ++r) {
    if (row_sum[r] > 0.0) s.row_scale[r] = 1.0 / std::sqrt(row_sum[r]);
  }
  for (int64_t c = 0; c < m.cols(); ++c) {
    if (col_sum[c] > 0.0) s.col_scale[c] = 1.0 / std::sqrt(col_sum[c]);
  }
  return s;
}

inline ScalingInfo ComputeScaling(const SparseMatrix& m, ScalingMode mode,
                                  int ruiz_iters = 10, double pc_alpha = 1.0) {
  switch (mode) {
    case ScalingMode::kNone:
      return ScalingInfo::Identity(m.rows(), m.cols());
    case ScalingMode::kRuiz:
      return RuizRescale(m, ruiz_iters);
    case ScalingMode::kPockChambolle:
      return PockChambolleRescale(m, pc_alpha);
    case ScalingMode::kRuizThenPockChambolle: {
      const ScalingInfo ruiz = RuizRescale(m, ruiz_iters);
      const SparseMatrix scaled = m.Scaled(ruiz.row_scale, ruiz.col_scale);
      return ruiz.ComposedWith(PockChambolleRescale(scaled, pc_alpha));
    }
  }
  return ScalingInfo::Identity(m.rows(), m.cols());
}

// K~ = D1 K D2, q~ = D1 q, c~ = D2 c, l~ = l / D2, u~ = u / D2.
inline SaddleForm ApplyScaling(const SaddleForm& saddle,
                               const ScalingInfo& s) {
  if (static_cast<int64_t>(s.row_scale.size()) != saddle.num_constraints() ||
      static_cast<int64_t>(s.col_scale.size()) != saddle.num_variables()) {
    throw Error(ErrorCode::kDimensionMismatch, "scaling vector sizes");
  }
  SaddleForm out = saddle;
  out.constraint_matrix =
      saddle.constraint_matrix.Scaled(s.row_scale, s.col_scale);
  for (size_t i = 0; i < out.rhs.size(); ++i) out.rhs[i] *= s.row_scale[i];
  for (size_t j = 0; j < out.objective.size(); ++j) {
    out.objective[j] *= s.col_scale[j];
    // Infinite bounds stay infinite since the scales are positive.
    out.lower_bounds[j] /= s.col_scale[j];
    out.upper_bounds[j] /= s.col_scale[j];
  }
  return out;
}

// Maps a point of the scaled problem back to the original: x = D2 x~,
// y = D1 y~. Also used for rays (certificates), which transform the same way.
inline std::pair<Vector, Vector> UnscaleSolution(std::span<const double> x,
                                                 std::span<const double> y,
                                                 const ScalingInfo& s) {
  if (x.size() != s.col_scale.size() || y.size() != s.row_scale.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "unscale point sizes");
  }
  Vector ux(x.begin(), x.end());
  Vector uy(y.begin(), y.end());
  for (size_t j = 0; j < ux.size(); ++j) ux[j] *= s.col_scale[j];
  for (size_t i = 0; i < uy.size(); ++i) uy[i] *= s.row_scale[i];
  return {std::move(ux), std::move(uy)};
}

// Inverse of UnscaleSolution.
inline std::pair<Vector, Vector> ScaleSolution(std::span<const double> x,
                                               std::span<const double> y,
                                               const ScalingInfo& s) {
  if (x.size() != s.col_scale.size() || y.size() != s.row_scale.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "scale point sizes");
  }
  Vector sx(x.begin(), x.end());
  Vector sy(y.begin(), y.end());
  for (size_t j = 0; j < sx.size(); ++j) sx[j] /= s.col_scale[j];
  for (size_t i = 0; i < sy.size(); ++i) sy[i] /= s.row_scale[i];
  return {std::move(sx), std::move(sy)};
}

}  // namespace pdlp

#endif  // PDLP_SCALING_HPP
