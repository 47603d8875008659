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

#ifndef PDLP_GENERATORS_HPP
#define PDLP_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pdlp/errors.hpp"
#include "pdlp/problem.hpp"
#include "pdlp/sparse_matrix.hpp"

namespace pdlp {

struct PagerankSpec {
  int64_t num_nodes = 0;
  int64_t attach_degree = 3;
  double damping = 0.85;
  uint64_t seed = 0;
};

namespace internal {

// Uniform integer in [0, bound) by rejection on raw 64-bit draws, so the
// stream is the same on every standard library.
inline uint64_t UniformBelow(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace internal

// Undirected Barabasi-Albert edge list. Starts from `attach_degree` isolated
// vertices; every later vertex attaches to `attach_degree` distinct existing
// vertices chosen with probability proportional to degree (the first one, with
// no degrees yet, links to the whole core).
inline std::vector<std::pair<int64_t, int64_t>> BarabasiAlbertEdges(
    int64_t num_nodes, int64_t attach_degree, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int64_t, int64_t>> edges;
  edges.reserve(static_cast<size_t>(attach_degree * (num_nodes - attach_degree)));
  std::vector<int64_t> repeated;  // vertex v appears deg(v) times
  std::vector<int64_t> targets;
  std::vector<char> picked(static_cast<size_t>(num_nodes), 0);
  for (int64_t v = attach_degree; v < num_nodes; ++v) {
    targets.clear();
    if (v == attach_degree) {
      for (int64_t u = 0; u < attach_degree; ++u) targets.push_back(u);
    } else {
      while (static_cast<int64_t>(targets.size()) < attach_degree) {
        const int64_t u = repeated[internal::UniformBelow(rng, repeated.size())];
        if (!picked[u]) {
          picked[u] = 1;
          targets.push_back(u);
        }
      }
      for (int64_t u : targets) picked[u] = 0;
    }
    for (int64_t u : targets) {
      edges.emplace_back(u, v);
      repeated.push_back(u);
      repeated.push_back(v);
    }
  }
  return edges;
}

// PageRank feasibility LP on a Barabasi-Albert graph: with S' the
// column-normalized adjacency,
//   x_i - damping (S' x)_i >= (1 - damping) / n   for all i,
//   sum_i x_i = 1,   x >= 0,   zero objective.
inline LpProblem GeneratePagerank(const PagerankSpec& spec) {
  if (spec.attach_degree < 1 || spec.num_nodes <= spec.attach_degree) {
    throw Error(ErrorCode::kSpecInvalid,
                "pagerank needs num_nodes > attach_degree >= 1");
  }
  if (!(spec.damping > 0.0 && spec.damping < 1.0)) {
    throw Error(ErrorCode::kSpecInvalid, "pagerank damping must lie in (0, 1)");
  }
  const int64_t n = spec.num_nodes;
  const auto edges = BarabasiAlbertEdges(n, spec.attach_degree, spec.seed);
  std::vector<int64_t> degree(static_cast<size_t>(n), 0);
  for (const auto& [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  for (int64_t j = 0; j < n; ++j) {
    if (degree[j] == 0) {
      throw Error(ErrorCode::kSpecInvalid, "dangling vertex in generated graph");
    }
  }
  std::vector<Triplet> g;
  g.reserve(static_cast<size_t>(n + 2 * edges.size()));
  for (int64_t i = 0; i < n; ++i) g.push_back({i, i, 1.0});
  for (const auto& [u, v] : edges) {
    g.push_back({u, v, -spec.damping / static_cast<double>(degree[v])});
    g.push_back({v, u, -spec.damping / static_cast<double>(degree[u])});
  }
  std::vector<Triplet> a;
  a.reserve(static_cast<size_t>(n));
  for (int64_t j = 0; j < n; ++j) a.push_back({0, j, 1.0});

  LpProblem p;
  p.name = "PAGERANK_" + std::to_string(n);
  p.objective.assign(static_cast<size_t>(n), 0.0);
  p.ineq_matrix = SparseMatrix::FromTriplets(n, n, std::move(g));
  p.ineq_rhs.assign(static_cast<size_t>(n),
                    (1.0 - spec.damping) / static_cast<double>(n));
  p.eq_matrix = SparseMatrix::FromTriplets(1, n, std::move(a));
  p.eq_rhs = {1.0};
  p.lower_bounds.assign(static_cast<size_t>(n), 0.0);
  p.upper_bounds.assign(static_cast<size_t>(n), kInf);
  return p;
}

// min 0 x  s.t.  x = 3, x >= 0. Saddle form min_{x>=0} max_y (3 - x) y with
// unique saddle point (3, 0).
inline LpProblem GenerateBilinearToy() {
  LpProblem p;
  p.name = "BILINEAR";
  p.objective = {0.0};
  p.ineq_matrix = SparseMatrix::FromTriplets(0, 1, {});
  p.eq_matrix = SparseMatrix::FromTriplets(1, 1, {{0, 0, 1.0}});
  p.eq_rhs = {3.0};
  p.lower_bounds = {0.0};
  p.upper_bounds = {kInf};
  p.variable_names = {"X"};
  p.eq_row_names = {"R"};
  return p;
}

}  // namespace pdlp

#endif  // PDLP_GENERATORS_HPP
