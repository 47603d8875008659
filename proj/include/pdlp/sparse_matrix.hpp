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

#ifndef PDLP_SPARSE_MATRIX_HPP
#define PDLP_SPARSE_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "pdlp/errors.hpp"

namespace pdlp {

using Vector = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double Dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double SquaredNorm(std::span<const double> a) { return Dot(a, a); }
inline double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

inline double InfNorm(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double Distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

struct Triplet {
  int64_t row;
  int64_t col;
  double value;
};

// Compressed sparse row matrix with a compressed column mirror, so that both
// M x and M^T y are row-oriented gathers. Immutable after construction.
// Column indices are strictly increasing within a row and no explicit zero is
// stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  SparseMatrix(int64_t rows, int64_t cols) : rows_(rows), cols_(cols) {
    row_start_.assign(rows + 1, 0);
    col_start_.assign(cols + 1, 0);
  }

  // Duplicate (row, col) entries are summed; entries that sum to zero are
  // dropped.
  static SparseMatrix FromTriplets(int64_t rows, int64_t cols,
                                   std::vector<Triplet> triplets) {
    for (const Triplet& t : triplets) {
      if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "triplet (" + std::to_string(t.row) + ", " +
                        std::to_string(t.col) + ") outside " +
                        std::to_string(rows) + "x" + std::to_string(cols));
      }
      if (!std::isfinite(t.value)) {
        throw Error(ErrorCode::kNonFiniteData, "non-finite matrix entry");
      }
    }
    std::sort(triplets.begin(), triplets.end(),
              [](const Triplet& a, const Triplet& b) {
                return std::tie(a.row, a.col) < std::tie(b.row, b.col);
              });
    SparseMatrix m(rows, cols);
    m.col_index_.reserve(triplets.size());
    m.value_.reserve(triplets.size());
    size_t k = 0;
    for (int64_t r = 0; r < rows; ++r) {
      while (k < triplets.size() && triplets[k].row == r) {
        const int64_t c = triplets[k].col;
        double v = 0.0;
        while (k < triplets.size() && triplets[k].row == r &&
               triplets[k].col == c) {
          v += triplets[k].value;
          ++k;
        }
        if (v != 0.0) {
          m.col_index_.push_back(c);
          m.value_.push_back(v);
        }
      }
      m.row_start_[r + 1] = static_cast<int64_t>(m.value_.size());
    }
    m.BuildColumnMirror();
    return m;
  }

  static SparseMatrix FromDense(const std::vector<Vector>& dense) {
    const int64_t rows = static_cast<int64_t>(dense.size());
    const int64_t cols = rows == 0 ? 0 : static_cast<int64_t>(dense[0].size());
    std::vector<Triplet> t;
    for (int64_t i = 0; i < rows; ++i) {
      for (int64_t j = 0; j < cols; ++j) {
        if (dense[i][j] != 0.0) t.push_back({i, j, dense[i][j]});
      }
    }
    return FromTriplets(rows, cols, std::move(t));
  }

  static SparseMatrix Identity(int64_t n) {
    std::vector<Triplet> t;
    for (int64_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return FromTriplets(n, n, std::move(t));
  }

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }
  int64_t nonzeros() const { return static_cast<int64_t>(value_.size()); }

  std::span<const int64_t> row_start() const { return row_start_; }
  std::span<const int64_t> col_index() const { return col_index_; }
  std::span<const double> values() const { return value_; }
  std::span<const int64_t> col_start() const { return col_start_; }
  std::span<const int64_t> row_index_by_col() const { return row_index_; }
  std::span<const double> values_by_col() const { return value_by_col_; }

  std::vector<Triplet> ToTriplets() const {
    std::vector<Triplet> out;
    out.reserve(value_.size());
    for (int64_t r = 0; r < rows_; ++r) {
      for (int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
        out.push_back({r, col_index_[k], value_[k]});
      }
    }
    return out;
  }

  std::vector<Vector> ToDense() const {
    std::vector<Vector> d(rows_, Vector(cols_, 0.0));
    for (const Triplet& t : ToTriplets()) d[t.row][t.col] = t.value;
    return d;
  }

  // Entry (r, c) or 0.
  double At(int64_t r, int64_t c) const {
    const auto first = col_index_.begin() + row_start_[r];
    const auto last = col_index_.begin() + row_start_[r + 1];
    const auto it = std::lower_bound(first, last, c);
    return (it != last && *it == c) ? value_[it - col_index_.begin()] : 0.0;
  }

  // Returns diag(row_scale) * this * diag(col_scale).
  SparseMatrix Scaled(std::span<const double> row_scale,
                      std::span<const double> col_scale) const {
    SparseMatrix m = *this;
    for (int64_t r = 0; r < rows_; ++r) {
      for (int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
        m.value_[k] *= row_scale[r] * col_scale[col_index_[k]];
      }
    }
    m.BuildColumnMirror();
    return m;
  }

  // Stacks `top` above `bottom`; both must have the same column count.
  static SparseMatrix VStack(const SparseMatrix& top,
                             const SparseMatrix& bottom) {
    if (top.cols_ != bottom.cols_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "vstack column counts differ");
    }
    SparseMatrix m(top.rows_ + bottom.rows_, top.cols_);
    m.col_index_ = top.col_index_;
    m.col_index_.insert(m.col_index_.end(), bottom.col_index_.begin(),
                        bottom.col_index_.end());
    m.value_ = top.value_;
    m.value_.insert(m.value_.end(), bottom.value_.begin(), bottom.value_.end());
    for (int64_t r = 0; r <= top.rows_; ++r) m.row_start_[r] = top.row_start_[r];
    for (int64_t r = 1; r <= bottom.rows_; ++r) {
      m.row_start_[top.rows_ + r] = top.nonzeros() + bottom.row_start_[r];
    }
    m.BuildColumnMirror();
    return m;
  }

  // Rows [first, first + count) as a new matrix.
  SparseMatrix RowBlock(int64_t first, int64_t count) const {
    SparseMatrix m(count, cols_);
    const int64_t begin = row_start_[first];
    const int64_t end = row_start_[first + count];
    m.col_index_.assign(col_index_.begin() + begin, col_index_.begin() + end);
    m.value_.assign(value_.begin() + begin, value_.begin() + end);
    for (int64_t r = 0; r <= count; ++r) {
      m.row_start_[r] = row_start_[first + r] - begin;
    }
    m.BuildColumnMirror();
    return m;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.row_start_ == b.row_start_ && a.col_index_ == b.col_index_ &&
           a.value_ == b.value_;
  }

 private:
  void BuildColumnMirror() {
    col_start_.assign(cols_ + 1, 0);
    for (int64_t c : col_index_) ++col_start_[c + 1];
    for (int64_t c = 0; c < cols_; ++c) col_start_[c + 1] += col_start_[c];
    row_index_.resize(value_.size());
    value_by_col_.resize(value_.size());
    std::vector<int64_t> next(col_start_.begin(), col_start_.end() - 1);
    for (int64_t r = 0; r < rows_; ++r) {
      for (int64_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
        const int64_t dst = next[col_index_[k]]++;
        row_index_[dst] = r;
        value_by_col_[dst] = value_[k];
      }
    }
  }

  int64_t rows_ = 0;
  int64_t cols_ = 0;
  std::vector<int64_t> row_start_ = {0};
  std::vector<int64_t> col_index_;
  Vector value_;
  std::vector<int64_t> col_start_ = {0};
  std::vector<int64_t> row_index_;
  Vector value_by_col_;
};

// out = M x
inline void MatVecInto(const SparseMatrix& m, std::span<const double> x,
                       std::span<double> out) {
  const auto start = m.row_start();
  const auto index = m.col_index();
  const auto value = m.values();
  for (int64_t r = 0; r < m.rows(); ++r) {
    double sum = 0.0;
    for (int64_t k = start[r]; k < start[r + 1]; ++k) {
      sum += value[k] * x[index[k]];
    }
    out[r] = sum;
  }
}

// out = M^T y, evaluated through the column mirror.
inline void MatVecTransposeInto(const SparseMatrix& m,
                                std::span<const double> y,
                                std::span<double> out) {
  const auto start = m.col_start();
  const auto index = m.row_index_by_col();
  const auto value = m.values_by_col();
  for (int64_t c = 0; c < m.cols(); ++c) {
    double sum = 0.0;
    for (int64_t k = start[c]; k < start[c + 1]; ++k) {
      sum += value[k] * y[index[k]];
    }
    out[c] = sum;
  }
}

inline Vector MatVec(const SparseMatrix& m, std::span<const double> x) {
  if (static_cast<int64_t>(x.size()) != m.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matvec: vector has " + std::to_string(x.size()) +
                    " entries, matrix has " + std::to_string(m.cols()) +
                    " columns");
  }
  Vector out(m.rows());
  MatVecInto(m, x, out);
  return out;
}

inline Vector MatVecTranspose(const SparseMatrix& m,
                              std::span<const double> y) {
  if (static_cast<int64_t>(y.size()) != m.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matvec_transpose: vector has " + std::to_string(y.size()) +
                    " entries, matrix has " + std::to_string(m.rows()) +
                    " rows");
  }
  Vector out(m.cols());
  MatVecTransposeInto(m, y, out);
  return out;
}

struct SpectralNormEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Power iteration on M^T M from a seeded Gaussian start. Stops once the
// eigen-residual |M^T M v - theta v| <= tol * theta, which bounds the relative
// error of the returned singular value by tol / 2 for the eigenvalue the
// iteration locked onto. On failure the best estimate is returned with
// `converged == false`.
inline SpectralNormEstimate EstimateSpectralNorm(const SparseMatrix& m,
                                                 double tol = 1e-4,
                                                 int max_iters = 5000,
                                                 uint64_t seed = 0) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kNonPositiveInput, "spectral norm tol must be > 0");
  }
  SpectralNormEstimate result;
  if (m.nonzeros() == 0) {
    result.converged = true;
    return result;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(m.cols());
  for (double& e : v) e = normal(rng);
  double nv = Norm(v);
  for (double& e : v) e /= nv;
  Vector mv(m.rows());
  Vector w(m.cols());
  for (int it = 1; it <= max_iters; ++it) {
    MatVecInto(m, v, mv);
    MatVecTransposeInto(m, mv, w);
    const double theta = Dot(v, w);
    result.value = std::max(result.value, std::sqrt(std::max(theta, 0.0)));
    result.iterations = it;
    double residual = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
      const double d = w[i] - theta * v[i];
      residual += d * d;
    }
    if (std::sqrt(residual) <= tol * theta) {
      result.converged = true;
      return result;
    }
    const double nw = Norm(w);
    if (nw == 0.0) {
      result.converged = true;
      return result;
    }
    for (size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nw;
  }
  return result;
}

}  // namespace pdlp

#endif  // PDLP_SPARSE_MATRIX_HPP
