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


// Brute-force and reference solvers used to certify the main solvers on
// small instances. None of them reuses the solver kernels they check.

#ifndef MAISAC_ORACLE_HPP_
#define MAISAC_ORACLE_HPP_

#include <cstddef>
#include <functional>

#include "maisac/types.hpp"

namespace maisac {

struct GridSpec {
  double step = 0.05;
  std::size_t max_points = 20'000'000;
};

struct GridResult {
  Apv apv;
  double value = 0.0;
  std::size_t points = 0;
  double slack = 0.0;  // Lip * step * sqrt(N)
};

// Number of lattice points with x_1 = 0, gaps in d + step * Z>=0 and span <= D.
std::size_t GridPointCount(int n, double d, double aperture, double step);

// Exhaustive maximization of the receive spread over the gap lattice.
GridResult GridSearchRx(const SystemParams& params, const GridSpec& grid = {0.05});

// Exhaustive maximization of the LoS objective over the gap lattice.
GridResult GridSearchTxLos(const SystemParams& params, double aod, double theta,
                           const GridSpec& grid = {0.02});

// Central differences of f at x.
RealVector FdGradient(const std::function<double(const RealVector&)>& f,
                      const RealVector& x, double h = 1e-6);

struct QpReferenceResult {
  RealVector x;
  RealVector multipliers;
  double kkt_residual = 0.0;
  int iterations = 0;
};

// Maximizes -(delta/2) x^T x + linear^T x over the chain polytope with an
// accelerated projected-gradient method on the dual. Throws kIterationCap
// when the KKT residual does not reach `tol`.
QpReferenceResult QpReference(double delta, const RealVector& linear, double d,
                              double aperture, double tol = 1e-8,
                              int max_iters = 2'000'000);

}  // namespace maisac

#endif  // MAISAC_ORACLE_HPP_
