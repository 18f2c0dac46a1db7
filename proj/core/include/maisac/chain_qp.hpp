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


// Chain constraint polytope {x : x_{i+1} - x_i >= d, x_N - x_1 <= D} and the
// exact Euclidean projection onto it.

#ifndef MAISAC_CHAIN_QP_HPP_
#define MAISAC_CHAIN_QP_HPP_

#include "maisac/types.hpp"

namespace maisac {

// U (N x N) and l_u such that the polytope is U x <= l_u. Rows 0..N-2 are
// spacing constraints, row N-1 bounds the aperture.
RealMatrix ChainMatrix(int n);
RealVector ChainBounds(int n, double d, double aperture);

// Pool-adjacent-violators: least-squares non-decreasing fit with unit
// weights.
RealVector IsotonicFit(const RealVector& v);

// argmin_x ||x - target||^2 over the chain polytope. Exact up to roundoff.
// Requires aperture >= (N-1) d.
RealVector ProjectOntoChain(const RealVector& target, double d, double aperture);

// Maximizer of -(delta/2) x^T x + (grad + delta x_i)^T x over the polytope,
// i.e. the projection of x_i + grad / delta. Returns x_i when delta == 0.
RealVector SolveQpStep(const RealVector& x_i, const RealVector& grad, double delta,
                       double d, double aperture);

}  // namespace maisac

#endif  // MAISAC_CHAIN_QP_HPP_
