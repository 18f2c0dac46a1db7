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

#include <vector>

#include "maisac/error.hpp"
#include "maisac/oracle.hpp"
#include "maisac/receive_opt.hpp"
#include "maisac/signal_model.hpp"
#include "support/generators.hpp"

using Catch::Approx;
using namespace maisac;

namespace {

ChannelPaths Paths(std::initializer_list<Complex> g, std::initializer_list<double> a) {
  ComplexVector gv(static_cast<Eigen::Index>(g.size()));
  RealVector av(static_cast<Eigen::Index>(a.size()));
  Eigen::Index i = 0;
  for (Complex c : g) gv[i++] = c;
  i = 0;
  for (double v : a) av[i++] = v;
  return ChannelPaths(gv, av);
}

bool Near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("signal_model - steering vector values") {
  CHECK(Near(Steering(Apv{0.0}, 0.7)[0], Complex(1.0, 0.0)));
  const ComplexVector a = Steering(Apv{0.0, 0.5}, kPi / 2);
  CHECK(Near(a[0], 1.0));
  CHECK(Near(a[1], -1.0));
  const ComplexVector b = Steering(Apv{0.0, 0.5}, 0.0);
  CHECK(Near(b[1], 1.0));
}

TEST_CASE("signal_model - steering derivative matches finite differences") {
  testing::ForAll(50, 3, [](testing::Gen& g) {
    const Apv x = g.FeasibleApv(g.Int(1, 8), 0.5, 10.0);
    const double th = g.Uniform(-1.3, 1.3);
    const double h = 1e-6;
    const ComplexVector fd = (Steering(x, th + h) - Steering(x, th - h)) / (2 * h);
    CHECK((SteeringDerivative(x, th) - fd).norm() <= 1e-6 * std::max(1.0, fd.norm()));
  });
}

TEST_CASE("signal_model - field response rows are steering vectors") {
  const Apv x{0.0, 0.5};
  const ComplexMatrix g = FieldResponse(x, Paths({1.0, 1.0}, {0.0, kPi / 2}));
  CHECK(Near(g(0, 0), 1.0));
  CHECK(Near(g(0, 1), 1.0));
  CHECK(Near(g(1, 0), 1.0));
  CHECK(Near(g(1, 1), -1.0));
  const Apv y{0.0, 0.3, 1.1};
  const ComplexMatrix single = FieldResponse(y, Paths({2.0}, {0.4}));
  CHECK((single.row(0).transpose() - Steering(y, 0.4)).norm() < 1e-12);
}

TEST_CASE("signal_model - channel special cases") {
  const Apv x{0.0, 0.7, 1.9};
  // h^H equals the transposed steering vector for a single unit path.
  CHECK((Channel(x, Paths({1.0}, {0.3})) - Steering(x, 0.3).conjugate()).norm() < 1e-12);
  CHECK(Channel(x, Paths({0.0, 0.0}, {0.3, -0.2})).norm() == 0.0);
}

TEST_CASE("signal_model - channel gain matches a term-by-term sum") {
  testing::ForAll(50, 5, [](testing::Gen& g) {
    const int n = g.Int(1, 10);
    const Apv x = g.FeasibleApv(n, 0.5, 12.0);
    const ChannelPaths paths = g.Paths(g.Int(1, 18));
    double direct = 0.0;
    for (int k = 0; k < n; ++k) {
      Complex s = 0.0;
      for (Eigen::Index p = 0; p < paths.num_paths(); ++p) {
        s += paths.gains[p] * std::polar(1.0, kTwoPi * std::sin(paths.aods[p]) * x[k]);
      }
      direct += std::norm(s);
    }
    CHECK(Channel(x, paths).squaredNorm() == Approx(direct).epsilon(1e-12));
  });
}

TEST_CASE("signal_model - user SNR") {
  ComplexVector h = ComplexVector::Zero(3);
  h[0] = 1.0;
  BeamVector w{h};
  CHECK(UserSnr(h, w, 1.0) == Approx(1.0));
  BeamVector orth{ComplexVector::Zero(3)};
  orth.weights[1] = 1.0;
  CHECK(UserSnr(h, orth, 1.0) == 0.0);
  testing::Gen g(9);
  const ComplexVector hh = g.ComplexVec(5);
  BeamVector ww{g.ComplexVec(5)};
  const Complex c(0.3, -1.1);
  BeamVector scaled{ww.weights * c};
  CHECK(UserSnr(hh, scaled, 0.1) == Approx(std::norm(c) * UserSnr(hh, ww, 0.1)));
}

TEST_CASE("signal_model - spread metric") {
  CHECK(SpreadMetric(Apv{0.0, 3.0}) == Approx(4.5));
  CHECK(SpreadMetric(Apv{0.0, 0.5, 1.5, 2.0}) == Approx(2.5));
  testing::ForAll(50, 6, [](testing::Gen& g) {
    const Apv y = g.FeasibleApv(g.Int(2, 10), 0.5, 15.0);
    const double shift = g.Uniform(-5.0, 5.0);
    const Apv z(RealVector(y.positions().array() + shift));
    CHECK(SpreadMetric(z) == Approx(SpreadMetric(y)).epsilon(1e-10));
  });
}

TEST_CASE("signal_model - degenerate CRB inputs") {
  SystemParams p;
  p.n_tx = 2;
  p.n_rx = 3;
  const Apv x{0.0, 0.5};
  const ComplexVector a = Steering(x, 0.0);
  BeamVector w{a};
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kConfig;
  };
  CHECK(code([&] { CrbGeneral(x, Apv{0.0}, w, p); }) == ErrorCode::kDegenerateGeometry);
  CHECK(code([&] { CrbSimplified(x, Apv{0.0}, w, p); }) == ErrorCode::kDegenerateGeometry);
  BeamVector null_w{ComplexVector(2)};
  null_w.weights << 1.0, -1.0;  // a = [1, 1] at theta = 0
  CHECK(code([&] { CrbGeneral(x, Apv{0.0, 1.0, 2.0}, null_w, p); }) ==
        ErrorCode::kDegenerateGeometry);
  CHECK(code([&] { CrbSimplified(x, Apv{0.0, 1.0, 2.0}, null_w, p); }) ==
        ErrorCode::kDegenerateGeometry);
}

TEST_CASE("signal_model - property: trace-form and simplified CRB agree") {
  testing::ForAll(300, 7, [](testing::Gen& g) {
    const int nt = g.Int(1, 6);
    SystemParams p = g.Params(nt, g.Int(nt + 1, 8));
    p.reflect_coeff = g.Gaussian();
    const Apv x = g.FeasibleApv(nt, p.d_min, p.aperture_tx);
    const Apv y = g.FeasibleApv(p.n_rx, p.d_min, p.aperture_rx);
    const BeamVector w{g.ComplexVec(nt)};
    const double a = CrbGeneral(x, y, w, p).crb;
    const double b = CrbSimplified(x, y, w, p).crb;
    CHECK(std::abs(a - b) <= 1e-10 * b);
  });
}

TEST_CASE("signal_model - matched beam reaches the CRB minimum") {
  testing::ForAll(50, 8, [](testing::Gen& g) {
    const int nt = g.Int(1, 8);
    SystemParams p = g.Params(nt, nt + 2);
    const Apv x = g.FeasibleApv(nt, p.d_min, p.aperture_tx);
    const Apv y = g.FeasibleApv(p.n_rx, p.d_min, p.aperture_rx);
    const ComplexVector a = Steering(x, p.target_angle);
    const BeamVector w{std::sqrt(p.power_budget) * a / a.norm()};
    CHECK(CrbSimplified(x, y, w, p).crb == Approx(CrbMinimum(y, p).crb).epsilon(1e-12));
    // Any other beam within the budget does no better.
    BeamVector other{g.ComplexVec(nt)};
    other.weights *= std::sqrt(p.power_budget) / other.weights.norm();
    CHECK(CrbSimplified(x, y, other, p).crb >= CrbMinimum(y, p).crb * (1 - 1e-12));
  });
}

TEST_CASE("signal_model - CRB scales with the inverse square of the receive aperture") {
  SystemParams p;
  p.n_tx = 2;
  p.n_rx = 4;
  const Apv x{0.0, 0.5};
  const BeamVector w{Steering(x, 0.0)};
  const double c1 = CrbSimplified(x, Apv{0.0, 0.5, 1.5, 2.0}, w, p).crb;
  const double c2 = CrbSimplified(x, Apv{0.0, 1.0, 3.0, 4.0}, w, p).crb;
  CHECK(c2 == Approx(c1 / 4.0).epsilon(1e-12));
}

TEST_CASE("signal_model - beampattern") {
  const Apv x{0.0, 0.5, 1.0, 1.5};
  const double th = 0.2;
  const ComplexVector a = Steering(x, th);
  const double pt = 0.1;
  const BeamVector w{std::sqrt(pt) * a / a.norm()};
  const std::vector<double> grid = {-0.5, th, 0.9};
  const auto pat = Beampattern(x, w, grid);
  CHECK(pat[1] == Approx(4 * pt));
  CHECK(pat[0] < pat[1]);
  CHECK(pat[2] < pat[1]);
  const BeamVector zero{ComplexVector::Zero(4)};
  for (double v : Beampattern(x, zero, grid)) CHECK(v == 0.0);
  // Two-element null at pi/2, checked against a direct phasor sum.
  BeamVector two{ComplexVector::Constant(2, 1.0 / std::sqrt(2.0))};
  const std::vector<double> g2 = {kPi / 2};
  const Complex direct = (1.0 + std::polar(1.0, kTwoPi * 0.5)) / std::sqrt(2.0);
  CHECK(Beampattern(Apv{0.0, 0.5}, two, g2)[0] == Approx(std::norm(direct)).margin(1e-15));
  CHECK(Beampattern(Apv{0.0, 0.5}, two, g2)[0] < 1e-20);
}

TEST_CASE("signal_model - half-wavelength array radiates ||w||^2 on average in sin(phi)") {
  testing::ForAll(20, 10, [](testing::Gen& g) {
    const int n = g.Int(2, 12);
    const Apv x = UlahPositions(n, 0.5);
    const BeamVector w{g.ComplexVec(n)};
    std::vector<double> grid;
    const int m = 4000;
    for (int i = 0; i < m; ++i) grid.push_back(std::asin(-1.0 + (i + 0.5) * 2.0 / m));
    const auto pat = Beampattern(x, w, grid);
    double mean = 0.0;
    for (double v : pat) mean += v / m;
    CHECK(mean == Approx(w.power()).epsilon(0.02));
  });
}
