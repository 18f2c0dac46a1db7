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


// Closed-form dual-function beamformer and the angle quantities that turn
// the transmit-side problem into a trigonometric one.

#ifndef MAISAC_BEAMFORMING_HPP_
#define MAISAC_BEAMFORMING_HPP_

#include "maisac/types.hpp"

namespace maisac {

// Arguments of arccos/arcsin that overshoot [0, 1] by at most this much are
// clamped; larger excursions are treated as errors.
inline constexpr double kClampTol = 1e-9;

struct TrigState {
  double upsilon = 0.0;  // angle between h and a, in [0, pi/2]
  double phi = 0.0;      // arcsin(sqrt(Gamma sigma_C^2 / (P_T ||h||^2)))
};

enum class BeamBranch { kMatched, kConstrained };

struct BeamformerResult {
  BeamVector w;
  BeamBranch branch = BeamBranch::kMatched;
  bool collinear = false;  // constrained branch with h parallel to a
};

// Maximizes |a^H w|^2 subject to |h^H w|^2 >= Gamma sigma_C^2 and
// ||w||^2 <= P_T. Ties in the branch test go to the constrained branch.
// Throws kInfeasible when the SNR target is out of reach.
BeamformerResult OptimalBeamformer(const ComplexVector& h, const ComplexVector& a,
                                   const SystemParams& params);

// True when P_T |h^H a|^2 > ||a||^2 Gamma sigma_C^2, i.e. the matched
// beamformer already serves the user.
bool MatchedBranchFeasible(const ComplexVector& h, const ComplexVector& a,
                           const SystemParams& params);

TrigState ComputeTrigState(const ComplexVector& h, const ComplexVector& a,
                           const SystemParams& params);

struct FtValue {
  double direct = 0.0;  // norm-and-projection form
  double trig = 0.0;    // sqrt(N_t P_T) sin(upsilon + phi)
};

// Optimal |a^H w| in the constrained regime, evaluated two ways.
FtValue ComputeFt(const ComplexVector& h, const ComplexVector& a,
                  const SystemParams& params);

struct Gamma0Result {
  double gamma0 = 0.0;    // linear
  double delta_db = 0.0;  // 20 lg(|h^H a|_MA / |h^H a|_ref)
};

// SNR threshold up to which the matched beamformer stays feasible, plus the
// gain in that threshold over a reference array.
Gamma0Result ComputeGamma0(const ComplexVector& h_opt, const ComplexVector& a_opt,
                           const ComplexVector& h_ref, const ComplexVector& a_ref,
                           const SystemParams& params);

// Clamps v into [0, 1] if it lies within kClampTol of the interval; throws
// kInfeasible otherwise.
double ClampUnit(double v);

}  // namespace maisac

#endif  // MAISAC_BEAMFORMING_HPP_
