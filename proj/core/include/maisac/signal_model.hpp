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

// Far-field signal model of a linear movable-antenna ISAC base station:
// steering vectors, the field-response channel, user SNR and the angle CRB.

#ifndef MAISAC_SIGNAL_MODEL_HPP_
#define MAISAC_SIGNAL_MODEL_HPP_

#include <span>

#include "maisac/types.hpp"

namespace maisac {

// a(x, angle)_i = exp(-j 2 pi x_i sin(angle)).
ComplexVector Steering(const Apv& apv, double angle);

// Derivative of Steering() with respect to the angle.
ComplexVector SteeringDerivative(const Apv& apv, double angle);

// G(x): row k is the phase response of every antenna to path k (L_t x N_t).
ComplexMatrix FieldResponse(const Apv& apv, const ChannelPaths& paths);

// h with h^H = sigma^H G(x).
ComplexVector Channel(const Apv& apv, const ChannelPaths& paths);

// |h^H w|^2 / sigma_C^2.
double UserSnr(const ComplexVector& h, const BeamVector& w, double noise_comm);

// Receive-array spread sum(y^2) - (sum y)^2 / N; the angular Fisher
// information scales linearly with it.
double SpreadMetric(const Apv& y);

// Angle CRB from the full trace expression, using the closed-form traces so
// no N_r x N_t matrix is ever formed. Throws kDegenerateGeometry when the
// Fisher information is numerically zero.
CrbValue CrbGeneral(const Apv& x, const Apv& y, const BeamVector& w,
                    const SystemParams& params);

// Simplified CRB:
//   sigma_R^2 / (2 |alpha|^2 L) / ((2 pi cos theta)^2 |a^H w|^2 f(y)).
CrbValue CrbSimplified(const Apv& x, const Apv& y, const BeamVector& w,
                       const SystemParams& params);

// Lowest CRB reachable for a given receive array, attained with
// w = sqrt(P_T) a / ||a||.
CrbValue CrbMinimum(const Apv& y, const SystemParams& params);

// |a(apv, phi)^H w|^2 for each phi in `grid`.
std::vector<double> Beampattern(const Apv& apv, const BeamVector& w,
                                std::span<const double> grid);

}  // namespace maisac

#endif  // MAISAC_SIGNAL_MODEL_HPP_
