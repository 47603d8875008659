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
#include <random>

#include "pdlp/generators.hpp"
#include "pdlp/problem.hpp"
#include "support/oracles.hpp"

using Catch::Matchers::WithinAbs;
using pdlp::ErrorCode;
using pdlp::LpProblem;
using pdlp::SparseMatrix;
using pdlp::Vector;

namespace {

LpProblem OneVariable() {
  LpProblem p;
  p.objective = {0.0};
  p.eq_matrix = SparseMatrix::FromDense({{1.0}});
  p.eq_rhs = {3.0};
  p.lower_bounds = {0.0};
  p.upper_bounds = {pdlp::kInf};
  return p;
}

}  // namespace

TEST_CASE("well-formed toy validates", "[problem]") {
  CHECK_NOTHROW(pdlp::Validate(OneVariable()));
}

TEST_CASE("inverted bounds are rejected", "[problem]") {
  LpProblem p = OneVariable();
  p.lower_bounds = {1.0};
  p.upper_bounds = {0.0};
  try {
    pdlp::Validate(p);
    FAIL("expected an error");
  } catch (const pdlp::Error& e) {
    CHECK(e.Has(ErrorCode::kInconsistentBounds));
  }
}

TEST_CASE("column count mismatch is rejected", "[problem]") {
  LpProblem p;
  p.objective = {1.0, 1.0, 1.0};
  p.ineq_matrix = SparseMatrix::FromDense({{1.0, 1.0}});
  p.ineq_rhs = {1.0};
  p.lower_bounds.assign(3, 0.0);
  p.upper_bounds.assign(3, pdlp::kInf);
  try {
    pdlp::Validate(p);
    FAIL("expected an error");
  } catch (const pdlp::Error& e) {
    CHECK(e.Has(ErrorCode::kDimensionMismatch));
  }
}

TEST_CASE("validation reports every violation at once", "[problem]") {
  LpProblem p = OneVariable();
  p.lower_bounds = {2.0};
  p.upper_bounds = {1.0};
  p.eq_rhs = {std::nan("")};
  try {
    pdlp::Validate(p);
    FAIL("expected an error");
  } catch (const pdlp::Error& e) {
    CHECK(e.Has(ErrorCode::kInconsistentBounds));
    CHECK(e.Has(ErrorCode::kNonFiniteData));
    CHECK(e.issues().size() == 2);
  }
}

TEST_CASE("saddle form of a single equality", "[problem]") {
  const auto s = pdlp::ToSaddle(pdlp::Validate(OneVariable()));
  CHECK(s.constraint_matrix.ToDense() == std::vector<Vector>{{1.0}});
  CHECK(s.rhs == Vector{3.0});
  CHECK(s.num_ineq == 0);
}

TEST_CASE("saddle form of a single inequality", "[problem]") {
  LpProblem p = OneVariable();
  p.eq_matrix = SparseMatrix::FromTriplets(0, 1, {});
  p.eq_rhs = {};
  p.ineq_matrix = SparseMatrix::FromDense({{1.0}});
  p.ineq_rhs = {2.0};
  const auto s = pdlp::ToSaddle(pdlp::Validate(p));
  CHECK(s.constraint_matrix.ToDense() == std::vector<Vector>{{1.0}});
  CHECK(s.rhs == Vector{2.0});
  CHECK(s.num_ineq == 1);
}

TEST_CASE("inequality rows come first and blocks round trip", "[problem]") {
  const LpProblem p = pdlp::testing::RandomFeasibleLp(4, 2, 3, 11);
  const auto s = pdlp::ToSaddle(pdlp::Validate(p));
  CHECK(s.constraint_matrix.rows() == 5);
  CHECK(s.num_ineq == 2);
  CHECK(s.IneqBlock() == p.ineq_matrix);
  CHECK(s.EqBlock() == p.eq_matrix);
  CHECK(Vector(s.rhs.begin(), s.rhs.begin() + 2) == p.ineq_rhs);
  CHECK(Vector(s.rhs.begin() + 2, s.rhs.end()) == p.eq_rhs);
}

TEST_CASE("lagrangian of the toy", "[problem]") {
  const auto s = pdlp::ToSaddle(pdlp::Validate(pdlp::GenerateBilinearToy()));
  CHECK(pdlp::Lagrangian(s, Vector{3}, Vector{0}) == 0.0);
  CHECK(pdlp::Lagrangian(s, Vector{2}, Vector{2}) == 2.0);
  CHECK(pdlp::Lagrangian(s, Vector{0}, Vector{0}) == 0.0);
  CHECK_THROWS_AS(pdlp::Lagrangian(s, Vector{1, 2}, Vector{0}), pdlp::Error);
}

TEST_CASE("lagrangian excludes the objective offset", "[problem]") {
  LpProblem p = OneVariable();
  p.objective = {1.0};
  p.objective_offset = 10.0;
  const auto s = pdlp::ToSaddle(pdlp::Validate(p));
  CHECK(pdlp::Lagrangian(s, Vector{3}, Vector{0}) == 3.0);
  CHECK(p.ReportedObjective(3.0) == 13.0);
  p.maximize = true;
  CHECK(p.ReportedObjective(3.0) == -13.0);
}

TEST_CASE("lagrangian is affine in each argument", "[problem][property]") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = pdlp::ToSaddle(
        pdlp::Validate(pdlp::testing::RandomFeasibleLp(5, 2, 2, seed)));
    Vector x1(5), x2(5), y1(4), y2(4);
    for (auto* v : {&x1, &x2}) for (double& e : *v) e = normal(rng);
    for (auto* v : {&y1, &y2}) for (double& e : *v) e = normal(rng);
    const double t = normal(rng);
    Vector xt(5), yt(4);
    for (int j = 0; j < 5; ++j) xt[j] = t * x1[j] + (1 - t) * x2[j];
    for (int i = 0; i < 4; ++i) yt[i] = t * y1[i] + (1 - t) * y2[i];
    const double lx = t * pdlp::Lagrangian(s, x1, y1) +
                      (1 - t) * pdlp::Lagrangian(s, x2, y1);
    const double ly = t * pdlp::Lagrangian(s, x1, y1) +
                      (1 - t) * pdlp::Lagrangian(s, x1, y2);
    const double scale = 1.0 + std::abs(lx) + std::abs(ly) + std::abs(t) * 10;
    CHECK_THAT(pdlp::Lagrangian(s, xt, y1), WithinAbs(lx, 1e-12 * scale));
    CHECK_THAT(pdlp::Lagrangian(s, x1, yt), WithinAbs(ly, 1e-12 * scale));
  }
}

TEST_CASE("standard form lagrangian matches c'x - y'Ax + b'y",
          "[problem][property]") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const LpProblem p = pdlp::testing::RandomFeasibleLp(4, 0, 3, seed);
    const auto s = pdlp::ToSaddle(pdlp::Validate(p));
    Vector x(4), y(3);
    for (double& e : x) e = normal(rng);
    for (double& e : y) e = normal(rng);
    const auto a = p.eq_matrix.ToDense();
    double want = 0.0;
    for (int j = 0; j < 4; ++j) want += p.objective[j] * x[j];
    for (int i = 0; i < 3; ++i) {
      double ax = 0.0;
      for (int j = 0; j < 4; ++j) ax += a[i][j] * x[j];
      want += y[i] * (p.eq_rhs[i] - ax);
    }
    CHECK_THAT(pdlp::Lagrangian(s, x, y), WithinAbs(want, 1e-12));
  }
}
