// Copyright 2026 The maisac Authors
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

#include <cmath>

#include "maisac/error.hpp"
#include "maisac/oracle.hpp"
#include "maisac/receive_opt.hpp"
#include "maisac/signal_model.hpp"
#include "maisac/transmit_los.hpp"
#include "support/generators.hpp"

using Catch::Approx;
using namespace maisac;

namespace {

SystemParams Small(int nt, int nr, double dx, double dy) {
  SystemParams p;
  p.n_tx = nt;
  p.n_rx = nr;
  p.aperture_tx = dx;
  p.aperture_rx = dy;
  return p;
}

}  // namespace

TEST_CASE("oracle - receive grid search") {
  const GridResult two = GridSearchRx(Small(1, 2, 1.0, 3.0));
  CHECK(two.apv[0] == Approx(0.0).margin(1e-12));
  CHECK(two.apv[1] == Approx(3.0));
  const SystemParams p = Small(1, 4, 1.0, 2.0);
  const GridResult four = GridSearchRx(p);
  const Apv opt = OptimalRxPositions(p).apv;
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(four.apv[i] - opt[i]) <= 0.05 + 1e-12);
  CHECK(four.value <= SpreadMetric(opt) + four.slack);
  testing::ForAll(10, 71, [](testing::Gen& g) {
    const int nr = g.Int(2, 5);
    const SystemParams q = Small(1, nr, 1.0, (nr - 1) * 0.5 + g.Uniform(0.0, 1.5));
    const GridResult r = GridSearchRx(q, GridSpec{0.1});
    const double best = OptimalRxPositions(q).spread;
    CHECK(r.value <= best + 1e-12);
    CHECK(r.value >= best - r.slack);
  });
}

TEST_CASE("oracle - transmit LoS grid search") {
  const double aod = kPi / 3;
  const GridResult two = GridSearchTxLos(Small(2, 3, 1.0, 2.0), aod, 0.0);
  CHECK(two.apv[1] == Approx(1.0).margin(1e-12));
  CHECK(two.value == Approx(1.8262).margin(1e-3));
  CHECK(two.value == Approx(2 * std::abs(std::cos(kPi * std::sin(aod)))).epsilon(1e-12));
  const GridResult wide = GridSearchTxLos(Small(3, 4, 3.0, 2.0), aod, 0.0, GridSpec{0.01});
  CHECK(wide.value <= 3.0 + 1e-12);
  CHECK(wide.value >= 3.0 - wide.slack);
  CHECK(std::abs(wide.apv[1] - wide.apv[0] - 2.0 / std::sqrt(3.0)) <= 0.01 + 1e-9);
}

TEST_CASE("oracle - grid size guard") {
  CHECK(GridPointCount(1, 0.5, 1.0, 0.1) == 1);
  CHECK(GridPointCount(2, 0.5, 1.0, 0.1) == 6);
  try {
    GridSearchRx(Small(1, 12, 1.0, 30.0), GridSpec{0.01, 1000});
    FAIL("expected GridTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGridTooLarge);
  }
}

TEST_CASE("oracle - finite-difference gradient") {
  RealVector c(3);
  c << 1.5, -2.0, 0.25;
  RealVector x(3);
  x << 0.3, 1.0, -4.0;
  const RealVector g = FdGradient([&](const RealVector& v) { return c.dot(v); }, x);
  CHECK((g - c).norm() < 1e-8);
  const RealVector q = FdGradient([](const RealVector& v) { return v.squaredNorm(); }, x);
  CHECK((q - 2 * x).norm() < 1e-8);
}

TEST_CASE("oracle - reference QP") {
  RealVector feasible(3);
  feasible << 0.0, 1.0, 2.0;
  const QpReferenceResult id = QpReference(1.0, feasible, 0.5, 3.0);
  CHECK((id.x - feasible).norm() < 1e-7);
  RealVector behind(3);
  behind << 0.0, 0.2, 2.0;
  const QpReferenceResult face = QpReference(2.0, 2.0 * behind, 0.5, 5.0);
  CHECK(face.x[1] - face.x[0] == Approx(0.5).margin(1e-7));
  CHECK(face.x[2] == Approx(2.0).margin(1e-7));
  CHECK(face.kkt_residual < 1e-8);
}
