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

// Independent oracles and instance builders for the tests.

#ifndef PDLP_TESTS_SUPPORT_ORACLES_HPP
#define PDLP_TESTS_SUPPORT_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "pdlp/pdhg.hpp"
#include "pdlp/problem.hpp"
#include "pdlp/sparse_matrix.hpp"

namespace pdlp::testing {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// max g^T delta  s.t.  |delta| <= r,  lo <= delta <= hi  (lo <= 0 <= hi),
// by enumerating which coordinates sit at a box face. At a maximizer every
// coordinate is either at a face or proportional to g with one common factor,
// so one of the 3^d patterns attains the optimum. Exponential: d <= 8 only.
inline double BallBoxMaxByEnumeration(const std::vector<double>& g,
                                      const std::vector<double>& lo,
                                      const std::vector<double>& hi,
                                      double r) {
  const size_t d = g.size();
  size_t patterns = 1;
  for (size_t i = 0; i < d; ++i) patterns *= 3;
  double best = 0.0;  // delta = 0 is always feasible
  std::vector<double> delta(d);
  for (size_t code = 0; code < patterns; ++code) {
    size_t c = code;
    double used = 0.0;
    double free_norm2 = 0.0;
    bool ok = true;
    std::vector<char> is_free(d, 0);
    for (size_t i = 0; i < d; ++i, c /= 3) {
      const int s = static_cast<int>(c % 3);
      if (s == 0) {
        is_free[i] = 1;
        free_norm2 += g[i] * g[i];
      } else {
        const double face = s == 1 ? lo[i] : hi[i];
        if (!std::isfinite(face)) {
          ok = false;
          break;
        }
        delta[i] = face;
        used += face * face;
      }
    }
    if (!ok || used > r * r * (1.0 + 1e-12)) continue;
    const double rest = std::sqrt(std::max(r * r - used, 0.0));
    const double scale = free_norm2 > 0.0 ? rest / std::sqrt(free_norm2) : 0.0;
    double value = 0.0;
    for (size_t i = 0; i < d; ++i) {
      if (is_free[i]) {
        delta[i] = scale * g[i];
        if (delta[i] < lo[i] - 1e-12 || delta[i] > hi[i] + 1e-12) {
          ok = false;
          break;
        }
      }
      value += g[i] * delta[i];
    }
    if (ok) best = std::max(best, value);
  }
  return best;
}

// Normalized duality gap from the definition: the Lagrangian difference is
// affine in the comparison point with gradient (K^T y - c, q - K x), which is
// maximized over the ball of radius r intersected with X x Y.
inline double NormalizedGapOracle(const std::vector<std::vector<double>>& k,
                                  const std::vector<double>& q, int m1,
                                  const std::vector<double>& c,
                                  const std::vector<double>& l,
                                  const std::vector<double>& u,
                                  const std::vector<double>& x,
                                  const std::vector<double>& y, double r) {
  const size_t n = c.size();
  const size_t m = q.size();
  std::vector<double> g, lo, hi;
  for (size_t j = 0; j < n; ++j) {
    double kty = 0.0;
    for (size_t i = 0; i < m; ++i) kty += k[i][j] * y[i];
    g.push_back(kty - c[j]);
    lo.push_back(l[j] - x[j]);
    hi.push_back(u[j] - x[j]);
  }
  for (size_t i = 0; i < m; ++i) {
    double kx = 0.0;
    for (size_t j = 0; j < n; ++j) kx += k[i][j] * x[j];
    g.push_back(q[i] - kx);
    lo.push_back(static_cast<int>(i) < m1 ? -y[i] : -kInfinity);
    hi.push_back(kInfinity);
  }
  return BallBoxMaxByEnumeration(g, lo, hi, r) / r;
}

struct PlantedSolution {
  std::vector<double> x;
  std::vector<double> y;  // inequality rows first
};

// Feasible bounded LP with a planted primal-dual optimum. Rows are split
// into `m_ineq` inequalities and `m_eq` equalities; about a third of the
// inequalities and bounds are active at the planted point, which is a
// saddle point (returned through `planted` when given). With
// `log10_spread` > 0, rows and columns are multiplied by 10^U(-s, s).
inline LpProblem RandomFeasibleLp(int n, int m_ineq, int m_eq, uint64_t seed,
                                  double density = 0.5,
                                  double log10_spread = 0.0,
                                  PlantedSolution* planted = nullptr) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int m = m_ineq + m_eq;
  std::vector<double> row_f(m, 1.0), col_f(n, 1.0);
  if (log10_spread > 0.0) {
    for (double& f : row_f) f = std::pow(10.0, log10_spread * (2 * unit(rng) - 1));
    for (double& f : col_f) f = std::pow(10.0, log10_spread * (2 * unit(rng) - 1));
  }
  std::vector<std::vector<double>> dense(m, std::vector<double>(n, 0.0));
  for (int i = 0; i < m; ++i) {
    bool any = false;
    for (int j = 0; j < n; ++j) {
      if (unit(rng) < density) {
        dense[i][j] = normal(rng);
        any = true;
      }
    }
    if (!any) dense[i][rng() % n] = 1.0;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) dense[i][j] *= row_f[i] * col_f[j];
  }
  // Planted point: x >= 0 with some zeros, duals complementary.
  std::vector<double> x(n), lambda(n), y(m);
  for (int j = 0; j < n; ++j) {
    const bool at_bound = unit(rng) < 0.35;
    x[j] = at_bound ? 0.0 : unit(rng) * 2.0 / col_f[j];
    lambda[j] = at_bound ? unit(rng) * col_f[j] : 0.0;
  }
  LpProblem p;
  std::vector<Triplet> g, a;
  for (int i = 0; i < m; ++i) {
    double ax = 0.0;
    for (int j = 0; j < n; ++j) ax += dense[i][j] * x[j];
    if (i < m_ineq) {
      const bool active = unit(rng) < 0.35;
      y[i] = active ? unit(rng) * row_f[i] : 0.0;
      p.ineq_rhs.push_back(active ? ax : ax - unit(rng) * row_f[i]);
      for (int j = 0; j < n; ++j) {
        if (dense[i][j] != 0.0) g.push_back({i, j, dense[i][j]});
      }
    } else {
      y[i] = normal(rng) * row_f[i];
      p.eq_rhs.push_back(ax);
      for (int j = 0; j < n; ++j) {
        if (dense[i][j] != 0.0) a.push_back({i - m_ineq, j, dense[i][j]});
      }
    }
  }
  p.objective.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double kty = 0.0;
    for (int i = 0; i < m; ++i) kty += dense[i][j] * y[i];
    p.objective[j] = kty + lambda[j];
  }
  p.ineq_matrix = SparseMatrix::FromTriplets(m_ineq, n, std::move(g));
  p.eq_matrix = SparseMatrix::FromTriplets(m_eq, n, std::move(a));
  p.lower_bounds.assign(n, 0.0);
  p.upper_bounds.assign(n, kInfinity);
  if (planted) *planted = {x, y};
  return p;
}

struct RandomGapCase {
  pdlp::SaddleForm saddle;
  std::vector<Vector> dense;
  PrimalDualPoint z;
};

// n + m <= 6 with a mix of bound types and row kinds; z lies in Z.
inline RandomGapCase MakeGapCase(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 1 + static_cast<int>(rng() % 4);
  const int m = 1 + static_cast<int>(rng() % (6 - n));
  RandomGapCase c;
  c.dense.assign(m, Vector(n, 0.0));
  std::vector<pdlp::Triplet> t;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (unit(rng) < 0.7) {
        c.dense[i][j] = normal(rng);
        t.push_back({i, j, c.dense[i][j]});
      }
    }
  }
  auto& s = c.saddle;
  s.constraint_matrix = pdlp::SparseMatrix::FromTriplets(m, n, std::move(t));
  s.num_ineq = static_cast<int64_t>(rng() % (m + 1));
  for (int i = 0; i < m; ++i) s.rhs.push_back(normal(rng));
  for (int j = 0; j < n; ++j) {
    s.objective.push_back(normal(rng));
    const int kind = static_cast<int>(rng() % 4);
    const double a = normal(rng);
    const double w = 0.1 + 2 * unit(rng);
    s.lower_bounds.push_back(kind == 1 || kind == 3 ? -pdlp::kInf : a);
    s.upper_bounds.push_back(kind == 2 || kind == 3 ? pdlp::kInf : a + w);
  }
  for (int j = 0; j < n; ++j) {
    const double l = s.lower_bounds[j], u = s.upper_bounds[j];
    double x = normal(rng);
    // Put some coordinates exactly on a finite bound.
    if (std::isfinite(l) && unit(rng) < 0.3) x = l;
    if (std::isfinite(u) && unit(rng) < 0.3) x = u;
    c.z.x.push_back(std::clamp(x, l, u));
  }
  for (int i = 0; i < m; ++i) {
    double y = normal(rng);
    if (i < s.num_ineq) y = unit(rng) < 0.4 ? 0.0 : std::abs(y);
    c.z.y.push_back(y);
  }
  return c;
}

inline double OracleGap(const RandomGapCase& c, double r) {
  const auto& s = c.saddle;
  return NormalizedGapOracle(
      c.dense, s.rhs, static_cast<int>(s.num_ineq), s.objective,
      s.lower_bounds, s.upper_bounds, c.z.x, c.z.y, r);
}

}  // namespace pdlp::testing

#endif  // PDLP_TESTS_SUPPORT_ORACLES_HPP
