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
#include "maisac/receive_opt.hpp"
#include "maisac/signal_model.hpp"
#include "support/generators.hpp"

using Catch::Approx;
using namespace maisac;

namespace {

SystemParams RxParams(int nr, double d, double aperture) {
  SystemParams p;
  p.n_tx = 1;
  p.n_rx = nr;
  p.d_min = d;
  p.aperture_rx = aperture;
  p.aperture_tx = 1.0;
  return p;
}

bool Same(const Apv& a, std::initializer_list<double> b, double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  std::size_t i = 0;
  for (double v : b) {
    if (std::abs(a[i++] - v) > tol) return false;
  }
  return true;
}

// Maximum of f over the vertices of the chain polytope with every gap at d
// except one, which absorbs the remaining aperture.
double VertexBest(int n, double d, double aperture) {
  double best = 0.0;
  for (int k = 1; k < n; ++k) {
    RealVector y(n);
    for (int i = 0; i < n; ++i) y[i] = i * d + (i >= k ? aperture - (n - 1) * d : 0.0);
    best = std::max(best, SpreadMetric(Apv(y)));
  }
  return best;
}

}  // namespace

TEST_CASE("receive_opt - closed-form placements") {
  CHECK(Same(OptimalRxPositions(RxParams(4, 0.5, 2.0)).apv, {0.0, 0.5, 1.5, 2.0}));
  CHECK(Same(OptimalRxPositions(RxParams(2, 0.5, 7.0)).apv, {0.0, 7.0}));
  CHECK(Same(OptimalRxPositions(RxParams(5, 0.5, 3.0)).apv, {0.0, 0.5, 1.0, 2.5, 3.0}));
  CHECK(Same(OptimalRxPositions(RxParams(5, 0.5, 3.0), TieChoice::kRight).apv,
             {0.0, 0.5, 2.0, 2.5, 3.0}));
  CHECK(OptimalRxPositions(RxParams(4, 0.5, 2.0)).spread == Approx(2.5));
}

TEST_CASE("receive_opt - odd ties give equal spread") {
  for (int n : {3, 5, 7, 9}) {
    const SystemParams p = RxParams(n, 0.5, 6.0);
    CHECK(OptimalRxPositions(p, TieChoice::kLeft).spread ==
          Approx(OptimalRxPositions(p, TieChoice::kRight).spread).epsilon(1e-12));
  }
}

TEST_CASE("receive_opt - aperture too small") {
  try {
    TwoClusterPositions(5, 0.5, 1.9);
    FAIL("expected InvalidGeometry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidGeometry);
  }
}

TEST_CASE("receive_opt - baselines") {
  CHECK(Same(UlahPositions(3, 0.5), {0.0, 0.5, 1.0}));
  CHECK(Same(UlafPositions(3, 2.0), {0.0, 1.0, 2.0}));
  CHECK(Same(UlafPositions(4, 1.5), {0.0, 0.5, 1.0, 1.5}));
  CHECK((UlafPositions(6, 2.5).positions() - UlahPositions(6, 0.5).positions()).norm() < 1e-14);
}

TEST_CASE("receive_opt - gain ratio") {
  const GainRatio r = CrbGainRatio(RxParams(4, 0.5, 2.0));
  CHECK(r.direct == Approx(1.125).epsilon(1e-12));
  CHECK(r.closed_form_valid);
  CHECK(r.closed_form == Approx(1.125).epsilon(1e-12));
  CHECK(r.bound == Approx(1.8));
  CHECK(r.ulaf_over_ulah == Approx(4.0 / 2.25));
  CHECK(r.direct_db() == Approx(10 * std::log10(1.125)));
  const GainRatio tight = CrbGainRatio(RxParams(6, 0.5, 2.5));
  CHECK(tight.direct == Approx(1.0).epsilon(1e-12));
  CHECK(tight.closed_form == Approx(1.0).epsilon(1e-12));
  const GainRatio odd = CrbGainRatio(RxParams(5, 0.5, 3.0));
  CHECK_FALSE(odd.closed_form_valid);
  CHECK(std::isnan(odd.closed_form));
  CHECK(odd.direct > 1.0);
  try {
    GainRatioClosedForm(5, 0.5, 3.0);
    FAIL("expected OddNrUnsupported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOddNrUnsupported);
  }
}

TEST_CASE("receive_opt - property: gain ratio stays below its bound") {
  testing::ForAll(300, 21, [](testing::Gen& g) {
    const int n = 2 * g.Int(1, 16);
    const double d = g.Uniform(0.2, 1.0);
    const double aperture = (n - 1) * d * g.Uniform(1.0, 100.0);
    const GainRatio r = CrbGainRatio(RxParams(n, d, aperture));
    CHECK(r.direct >= 1.0 - 1e-12);
    // Two antennas always sit at the ends, so the bound is tight there.
    if (n == 2) CHECK(r.direct == Approx(r.bound));
    else CHECK(r.direct < r.bound);
    CHECK(r.bound < 3.0);
    CHECK(r.closed_form == Approx(r.direct).epsilon(1e-10));
  });
}

TEST_CASE("receive_opt - property: closed form is the best vertex and beats random arrays") {
  testing::ForAll(200, 22, [](testing::Gen& g) {
    const int n = g.Int(2, 14);
    const double d = g.Uniform(0.2, 1.0);
    const double aperture = (n - 1) * d + g.Uniform(0.0, 10.0);
    const double f_opt = OptimalRxPositions(RxParams(n, d, aperture)).spread;
    CHECK(f_opt == Approx(VertexBest(n, d, aperture)).epsilon(1e-12));
    for (int k = 0; k < 5; ++k) {
      CHECK(SpreadMetric(g.FeasibleApv(n, d, aperture)) <= f_opt * (1 + 1e-12));
    }
  });
}

TEST_CASE("receive_opt - property: shift and reflection invariance of the spread") {
  testing::ForAll(200, 23, [](testing::Gen& g) {
    const int n = g.Int(2, 12);
    const double aperture = g.Uniform(6.0, 12.0);
    const Apv y = g.FeasibleApv(n, 0.5, aperture);
    const double f = SpreadMetric(y);
    const Apv shifted(RealVector(y.positions().array() + g.Uniform(-20.0, 20.0)));
    const Apv reflected(RealVector((aperture - y.positions().reverse().array()).matrix()));
    CHECK(std::abs(SpreadMetric(shifted) - f) <= 1e-12 * std::max(1.0, f) * 100);
    CHECK(std::abs(SpreadMetric(reflected) - f) <= 1e-12 * std::max(1.0, f));
  });
}

TEST_CASE("receive_opt - optimal placement structure") {
  testing::ForAll(100, 24, [](testing::Gen& g) {
    const int n = g.Int(2, 20);
    const double d = g.Uniform(0.3, 0.8);
    const double aperture = (n - 1) * d + g.Uniform(0.0, 8.0);
    const Apv y = OptimalRxPositions(RxParams(n, d, aperture)).apv;
    CHECK(y.IsFeasible(d, aperture, 1e-12));
    CHECK(y.span() == Approx(aperture).epsilon(1e-12));
    const int half = n / 2;
    for (int i = 1; i < half; ++i) CHECK(y[i] - y[i - 1] == Approx(d).epsilon(1e-12));
    for (int i = n - half + 1; i < n; ++i) CHECK(y[i] - y[i - 1] == Approx(d).epsilon(1e-12));
  });
}
