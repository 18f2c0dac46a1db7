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


#include "maisac/beamforming.hpp"

#include <algorithm>
#include <cmath>

#include "maisac/error.hpp"

namespace maisac {
namespace {

void CheckFeasible(double h2, const SystemParams& params) {
  if (!(h2 > 0.0)) {
    throw Error(ErrorCode::kInfeasible, "channel vector is zero");
  }
  if (params.required_signal_power() > params.power_budget * h2) {
    throw Error(ErrorCode::kInfeasible,
                "SNR target exceeds full-power transmission toward the user");
  }
}

}  // namespace

double ClampUnit(double v) {
  if (v < -kClampTol || v > 1.0 + kClampTol || std::isnan(v)) {
    throw Error(ErrorCode::kInfeasible, "trigonometric argument outside [0, 1]");
  }
  return std::clamp(v, 0.0, 1.0);
}

bool MatchedBranchFeasible(const ComplexVector& h, const ComplexVector& a,
                           const SystemParams& params) {
  return params.power_budget * std::norm(h.dot(a)) >
         a.squaredNorm() * params.required_signal_power();
}

BeamformerResult OptimalBeamformer(const ComplexVector& h, const ComplexVector& a,
                                   const SystemParams& params) {
  const double a_norm = a.norm();
  if (!(a_norm > 0.0)) {
    throw Error(ErrorCode::kInvalidGeometry, "steering vector is zero");
  }
  const double h2 = h.squaredNorm();
  CheckFeasible(h2, params);

  BeamformerResult out;
  const double pt = params.power_budget;
  if (MatchedBranchFeasible(h, a, params)) {
    out.branch = BeamBranch::kMatched;
    out.w.weights = std::sqrt(pt) / a_norm * a;
    return out;
  }

  out.branch = BeamBranch::kConstrained;
  const double h_norm = std::sqrt(h2);
  const ComplexVector u1 = h / h_norm;
  const Complex proj = u1.dot(a);  // u1^H a
  const ComplexVector a_perp = a - proj * u1;
  const double perp_norm = a_perp.norm();
  const double min_power = params.required_signal_power() / h2;
  const Complex phase = std::abs(proj) > 0.0 ? proj / std::abs(proj) : Complex(1.0, 0.0);
  const Complex c1 = std::sqrt(min_power) * phase;
  const double c2 = std::sqrt(std::max(0.0, pt - min_power));

  if (perp_norm <= 1e-12 * a_norm) {
    out.collinear = true;
    out.w.weights = std::sqrt(pt) * phase * u1;
    return out;
  }
  out.w.weights = c1 * u1 + c2 / perp_norm * a_perp;
  return out;
}

TrigState ComputeTrigState(const ComplexVector& h, const ComplexVector& a,
                           const SystemParams& params) {
  const double h2 = h.squaredNorm();
  CheckFeasible(h2, params);
  const double cos_u = ClampUnit(std::abs(h.dot(a)) / (std::sqrt(h2) * a.norm()));
  const double sin_p =
      ClampUnit(std::sqrt(params.required_signal_power() / (params.power_budget * h2)));
  return TrigState{std::acos(cos_u), std::asin(sin_p)};
}

FtValue ComputeFt(const ComplexVector& h, const ComplexVector& a,
                  const SystemParams& params) {
  const double h2 = h.squaredNorm();
  CheckFeasible(h2, params);
  const double ha = std::abs(h.dot(a));
  const double a2 = a.squaredNorm();
  const double gs = params.required_signal_power();
  FtValue out;
  out.direct = std::sqrt(gs) / h2 * ha +
               std::sqrt(std::max(0.0, params.power_budget - gs / h2)) *
                   std::sqrt(std::max(0.0, (h2 * a2 - ha * ha) / h2));
  const TrigState t = ComputeTrigState(h, a, params);
  out.trig = std::sqrt(a2 * params.power_budget) * std::sin(t.upsilon + t.phi);
  return out;
}

Gamma0Result ComputeGamma0(const ComplexVector& h_opt, const ComplexVector& a_opt,
                           const ComplexVector& h_ref, const ComplexVector& a_ref,
                           const SystemParams& params) {
  const double ha = std::abs(h_opt.dot(a_opt));
  const double ha_ref = std::abs(h_ref.dot(a_ref));
  Gamma0Result out;
  out.gamma0 = params.power_budget * ha * ha / (a_opt.squaredNorm() * params.noise_comm);
  out.delta_db = 20.0 * std::log10(ha / ha_ref);
  return out;
}

}  // namespace maisac
