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


#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "pdlp/generators.hpp"
#include "pdlp/mps.hpp"
#include "pdlp/solver.hpp"

using pdlp::PagerankSpec;
using pdlp::Vector;

namespace {

int64_t Nonzeros(const pdlp::LpProblem& p) {
  return p.ineq_matrix.nonzeros() + p.eq_matrix.nonzeros();
}

// Damped random-walk stationary vector by fixed-point iteration
// x <- damping S' x + (1 - damping) / n, a contraction in the 1-norm.
Vector StationaryDistribution(int64_t n,
                              const std::vector<std::pair<int64_t, int64_t>>& edges,
                              double damping) {
  std::vector<std::vector<int64_t>> adj(static_cast<size_t>(n));
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  Vector x(static_cast<size_t>(n), 1.0 / static_cast<double>(n));
  for (int it = 0; it < 500; ++it) {
    Vector next(static_cast<size_t>(n), (1.0 - damping) / static_cast<double>(n));
    for (int64_t j = 0; j < n; ++j) {
      const double share = damping * x[j] / static_cast<double>(adj[j].size());
      for (int64_t i : adj[j]) next[i] += share;
    }
    x = std::move(next);
  }
  return x;
}

}  // namespace

TEST_CASE("pagerank nonzero count", "[generators]") {
  CHECK(Nonzeros(pdlp::GeneratePagerank({10, 3, 0.85, 0})) == 62);
  const auto big = pdlp::GeneratePagerank({10000, 3, 0.85, 1});
  CHECK(Nonzeros(big) == 8 * 10000 - 18);
  CHECK(Nonzeros(big) == 79982);
  for (int64_t d : {1, 2, 4}) {
    for (int64_t n : {d + 1, int64_t{20}, int64_t{57}}) {
      const auto edges = pdlp::BarabasiAlbertEdges(n, d, 3);
      CHECK(static_cast<int64_t>(edges.size()) == d * (n - d));
      CHECK(Nonzeros(pdlp::GeneratePagerank({n, d, 0.5, 3})) ==
            2 * static_cast<int64_t>(edges.size()) + 2 * n);
    }
  }
}

TEST_CASE("pagerank LP shape", "[generators]") {
  const auto p = pdlp::GeneratePagerank({10, 3, 0.85, 0});
  CHECK(p.num_variables() == 10);
  CHECK(p.num_ineq() == 10);
  CHECK(p.num_eq() == 1);
  CHECK(p.objective == Vector(10, 0.0));
  CHECK(p.ineq_rhs == Vector(10, (1.0 - 0.85) / 10));
  CHECK(p.eq_rhs == Vector{1.0});
  CHECK(p.lower_bounds == Vector(10, 0.0));
  // Columns of S' sum to one: every column of G sums to 1 - damping.
  const auto g = p.ineq_matrix.ToDense();
  for (size_t j = 0; j < 10; ++j) {
    double sum = 0.0;
    for (size_t i = 0; i < 10; ++i) sum += g[i][j];
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(0.15, 1e-15));
  }
}

TEST_CASE("Barabasi-Albert graph structure", "[generators]") {
  const int64_t n = 10000, d = 3;
  const auto edges = pdlp::BarabasiAlbertEdges(n, d, 5);
  std::set<std::pair<int64_t, int64_t>> seen;
  std::vector<int64_t> degree(n, 0), attached(n, 0);
  for (const auto& [u, v] : edges) {
    REQUIRE(u < v);  // new vertex v links back to an older vertex u
    REQUIRE(seen.insert({u, v}).second);
    ++degree[u];
    ++degree[v];
    ++attached[v];
  }
  for (int64_t v = 0; v < n; ++v) {
    CHECK(attached[v] == (v < d ? 0 : d));
    CHECK(degree[v] >= 1);
  }
  // Preferential attachment produces hubs; uniform attachment would keep the
  // largest degree near d ln n ~ 30.
  CHECK(*std::max_element(degree.begin(), degree.end()) > 100);
}

TEST_CASE("generation is deterministic", "[generators]") {
  const PagerankSpec spec{500, 3, 0.85, 42};
  const auto a = pdlp::GeneratePagerank(spec);
  const auto b = pdlp::GeneratePagerank(spec);
  CHECK(a.ineq_matrix.ToTriplets().size() == b.ineq_matrix.ToTriplets().size());
  CHECK(pdlp::WriteMps(a) == pdlp::WriteMps(b));
  const auto c = pdlp::GeneratePagerank({500, 3, 0.85, 43});
  CHECK(pdlp::WriteMps(a) != pdlp::WriteMps(c));
}

TEST_CASE("invalid pagerank specs", "[generators]") {
  using pdlp::Error;
  CHECK_THROWS_AS(pdlp::GeneratePagerank({2, 3, 0.85, 0}), Error);
  CHECK_THROWS_AS(pdlp::GeneratePagerank({3, 3, 0.85, 0}), Error);
  CHECK_THROWS_AS(pdlp::GeneratePagerank({10, 0, 0.85, 0}), Error);
  CHECK_THROWS_AS(pdlp::GeneratePagerank({10, 3, 1.0, 0}), Error);
  CHECK_THROWS_AS(pdlp::GeneratePagerank({10, 3, 0.0, 0}), Error);
  try {
    pdlp::GeneratePagerank({2, 3, 0.85, 0});
  } catch (const Error& e) {
    CHECK(e.code() == pdlp::ErrorCode::kSpecInvalid);
  }
}

TEST_CASE("pagerank LPs are feasible", "[generators][property]") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const PagerankSpec spec{200, 3, 0.85, seed};
    const auto p = pdlp::GeneratePagerank(spec);
    const Vector x = StationaryDistribution(
        spec.num_nodes,
        pdlp::BarabasiAlbertEdges(spec.num_nodes, spec.attach_degree, seed),
        spec.damping);
    const auto saddle = pdlp::ToSaddle(pdlp::Validate(p));
    const auto kkt = pdlp::KktError(saddle, x, Vector(saddle.num_constraints(), 0.0));
    CHECK(kkt.primal_residual <= 1e-12);

    const auto report = pdlp::Solve(p);
    CHECK(report.status == pdlp::SolveStatus::kOptimal);
  }
}

TEST_CASE("bilinear toy", "[generators]") {
  const auto toy = pdlp::GenerateBilinearToy();
  CHECK(toy.num_variables() == 1);
  CHECK(toy.num_ineq() == 0);
  CHECK(toy.num_eq() == 1);
  CHECK(toy.eq_rhs == Vector{3.0});
  const auto saddle = pdlp::ToSaddle(pdlp::Validate(toy));
  CHECK(pdlp::Lagrangian(saddle, Vector{3}, Vector{0}) == 0.0);
  CHECK(pdlp::Lagrangian(saddle, Vector{2}, Vector{2}) == 2.0);
}
