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

#include "maisac/beamforming.hpp"
#include "maisac/error.hpp"
#include "maisac/signal_model.hpp"
#include "support/generators.hpp"

using Catch::Approx;
using namespace maisac;

namespace {

SystemParams SmallParams(int nt, double gamma) {
  SystemParams p;
  p.n_tx = nt;
  p.n_rx = nt + 2;
  p.aperture_tx = 10.0;
  p.aperture_rx = 10.0;
  p.snr_threshold = gamma;
  return p;
}

// Best |a^H w|^2 over w = s u1 + t e^{j phi} r_hat with |s|^2 + t^2 = P_T and
// |s|^2 ||h||^2 >= Gamma sigma^2, scanned on a fine grid.
double SpanGrid(const ComplexVector& h, const ComplexVector& a, const SystemParams& p) {
  const ComplexVector u1 = h.normalized();
  ComplexVector r = a - u1 * u1.dot(a);
  const double rn = r.norm();
  if (rn > 0.0) r /= rn;
  const double smin = std::sqrt(p.required_signal_power() / h.squaredNorm());
  const double pt = p.power_budget;
  double best = 0.0;
  const int ns = 800;
  const int nphi = 720;
  for (int i = 0; i <= ns; ++i) {
    const double s = smin + (std::sqrt(pt) - smin) * i / ns;
    const double t = std::sqrt(std::max(0.0, pt - s * s));
    for (int k = 0; k < nphi; ++k) {
      const double phi = kTwoPi * k / nphi;
      const ComplexVector w = s * u1 + t * std::polar(1.0, phi) * r;
      best = std::max(best, std::norm(a.dot(w)));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("beamforming - matched branch at zero threshold") {
  testing::Gen g(1);
  const SystemParams p = SmallParams(4, 0.0);
  const ComplexVector h = g.ComplexVec(4);
  const ComplexVector a = g.ComplexVec(4);
  const BeamformerResult r = OptimalBeamformer(h, a, p);
  CHECK(r.branch == BeamBranch::kMatched);
  CHECK((r.w.weights - std::sqrt(p.power_budget) * a / a.norm()).norm() < 1e-14);
}

TEST_CASE("beamforming - infeasible and invalid inputs") {
  const SystemParams p = SmallParams(2, 1e6);
  ComplexVector h(2), a(2);
  h << 1.0, 0.0;
  a << 1.0, 1.0;
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kConfig;
  };
  CHECK(code([&] { OptimalBeamformer(h, a, p); }) == ErrorCode::kInfeasible);
  CHECK(code([&] { OptimalBeamformer(ComplexVector::Zero(2), a, SmallParams(2, 0.0)); }) ==
        ErrorCode::kInfeasible);
  CHECK(code([&] { OptimalBeamformer(h, ComplexVector::Zero(2), SmallParams(2, 0.0)); }) ==
        ErrorCode::kInvalidGeometry);
  CHECK(code([&] { ComputeTrigState(h, a, p); }) == ErrorCode::kInfeasible);
  CHECK(code([] { ClampUnit(1.0 + 1e-6); }) == ErrorCode::kInfeasible);
  CHECK(ClampUnit(1.0 + 1e-10) == 1.0);
  CHECK(ClampUnit(-1e-10) == 0.0);
}

TEST_CASE("beamforming - collinear constrained case points along h") {
  // With h parallel to a the two branches meet exactly at the full-power
  // edge, which the tie rule routes to the constrained branch. Values are
  // chosen to be exact in binary.
  const ComplexVector a = ComplexVector::Constant(4, 1.0);
  const ComplexVector h = Complex(0.0, 0.5) * a;
  SystemParams p = SmallParams(4, 2.0);
  p.power_budget = 0.5;
  p.noise_comm = 0.25;
  const BeamformerResult r = OptimalBeamformer(h, a, p);
  CHECK(r.branch == BeamBranch::kConstrained);
  CHECK(r.collinear);
  CHECK(r.w.power() == Approx(p.power_budget).epsilon(1e-12));
  CHECK(std::abs(std::abs(h.normalized().dot(r.w.weights)) - std::sqrt(p.power_budget)) < 1e-12);
}

TEST_CASE("beamforming - trig state special cases") {
  const SystemParams p = SmallParams(2, 0.0);
  ComplexVector a(2), orth(2);
  a << 1.0, 1.0;
  orth << 1.0, -1.0;
  CHECK(ComputeTrigState(a, a, p).upsilon == Approx(0.0).margin(1e-7));
  CHECK(ComputeTrigState(orth, a, p).upsilon == Approx(kPi / 2));
  CHECK(ComputeTrigState(orth, a, p).phi == 0.0);
  SystemParams edge = p;
  edge.snr_threshold = edge.power_budget * orth.squaredNorm() / edge.noise_comm;
  CHECK(ComputeTrigState(orth, a, edge).phi == Approx(kPi / 2));
  // upsilon + phi = pi/2 gives the sine peak.
  const FtValue ft = ComputeFt(orth, a, p);
  CHECK(ft.trig == Approx(std::sqrt(2 * p.power_budget)));
}

TEST_CASE("beamforming - property: both branches spend the budget and meet the SNR") {
  testing::ForAll(300, 2, [](testing::Gen& g) {
    const int nt = g.Int(2, 8);
    const ComplexVector h = g.ComplexVec(nt);
    const ComplexVector a = Steering(g.FeasibleApv(nt, 0.5, 10.0), g.Uniform(-1.0, 1.0));
    SystemParams p = SmallParams(nt, 0.0);
    // Threshold spread over both branches and up to the feasibility edge.
    const double edge = p.power_budget * h.squaredNorm() / p.noise_comm;
    p.snr_threshold = edge * g.Uniform(0.0, 1.0);
    const BeamformerResult r = OptimalBeamformer(h, a, p);
    CHECK(r.w.power() == Approx(p.power_budget).epsilon(1e-12));
    const double snr = UserSnr(h, r.w, p.noise_comm);
    if (r.branch == BeamBranch::kMatched) {
      CHECK(snr > p.snr_threshold);
      CHECK(MatchedBranchFeasible(h, a, p));
    } else {
      CHECK(snr == Approx(p.snr_threshold).epsilon(1e-10));
      const FtValue ft = ComputeFt(h, a, p);
      CHECK(std::abs(ft.direct - ft.trig) <= 1e-10 * std::max(1.0, ft.trig));
      CHECK(std::norm(a.dot(r.w.weights)) == Approx(ft.trig * ft.trig).epsilon(1e-10));
      const TrigState t = ComputeTrigState(h, a, p);
      CHECK(t.upsilon + t.phi >= kPi / 2 - 1e-9);
    }
  });
}

TEST_CASE("beamforming - constrained branch matches a grid over span{h, a}") {
  testing::ForAll(10, 4, [](testing::Gen& g) {
    const int nt = g.Int(2, 6);
    const ComplexVector h = g.ComplexVec(nt);
    const ComplexVector a = g.ComplexVec(nt);
    SystemParams p = SmallParams(nt, 0.0);
    const double matched_limit = p.power_budget * std::norm(h.dot(a)) /
                                 (a.squaredNorm() * p.noise_comm);
    const double edge = p.power_budget * h.squaredNorm() / p.noise_comm;
    p.snr_threshold = g.Uniform(matched_limit, edge);
    const BeamformerResult r = OptimalBeamformer(h, a, p);
    REQUIRE(r.branch == BeamBranch::kConstrained);
    const double ours = std::norm(a.dot(r.w.weights));
    const double grid = SpanGrid(h, a, p);
    CHECK(ours >= grid * (1 - 1e-12));
    CHECK(ours == Approx(grid).epsilon(1e-4));
  });
}

TEST_CASE("beamforming - no feasible beam beats the optimum") {
  testing::ForAll(100, 5, [](testing::Gen& g) {
    const int nt = g.Int(2, 6);
    const ComplexVector h = g.ComplexVec(nt);
    const ComplexVector a = g.ComplexVec(nt);
    SystemParams p = SmallParams(nt, 0.0);
    p.snr_threshold = g.Uniform(0.0, 1.0) * p.power_budget * h.squaredNorm() / p.noise_comm;
    const double best = std::norm(a.dot(OptimalBeamformer(h, a, p).w.weights));
    for (int k = 0; k < 50; ++k) {
      ComplexVector w = g.ComplexVec(nt);
      w *= std::sqrt(p.power_budget) / w.norm();
      if (std::norm(h.dot(w)) < p.required_signal_power()) continue;
      CHECK(std::norm(a.dot(w)) <= best * (1 + 1e-12));
    }
  });
}

TEST_CASE("beamforming - SNR condition and the angle sum agree") {
  testing::ForAll(300, 6, [](testing::Gen& g) {
    const int nt = g.Int(2, 6);
    const ComplexVector h = g.ComplexVec(nt);
    const ComplexVector a = Steering(g.FeasibleApv(nt, 0.5, 8.0), 0.0);
    SystemParams p = SmallParams(nt, 0.0);
    p.snr_threshold = g.Uniform(0.0, 1.0) * p.power_budget * h.squaredNorm() / p.noise_comm;
    const TrigState t = ComputeTrigState(h, a, p);
    const bool matched = MatchedBranchFeasible(h, a, p);
    const double sum = t.upsilon + t.phi;
    if (std::abs(sum - kPi / 2) > 1e-9) CHECK(matched == (sum < kPi / 2));
  });
}

TEST_CASE("beamforming - threshold Gamma_0 and Delta_Gamma") {
  SystemParams p = SmallParams(4, 0.0);
  const Apv x{0.0, 0.5, 1.0, 1.5};
  const ComplexVector a = Steering(x, 0.0);
  const ComplexVector h = Complex(0.5, 0.0) * a;  // aligned, |sigma_1|^2 = 1/4
  const Gamma0Result g0 = ComputeGamma0(h, a, h, a, p);
  CHECK(g0.gamma0 == Approx(p.power_budget * 0.25 * 4 / p.noise_comm));
  CHECK(g0.delta_db == Approx(0.0).margin(1e-14));
  const Gamma0Result half = ComputeGamma0(h, a, 0.5 * h, a, p);
  CHECK(half.delta_db == Approx(20 * std::log10(2.0)));
}
