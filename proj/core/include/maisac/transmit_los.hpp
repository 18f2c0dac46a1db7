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


// Line-of-sight transmit placement: maximize |sum_i exp(-j 2 pi s x_i)| over
// the chain polytope by enumerating faces (active constraint sets) on which
// the phasors can be fully aligned.
//
// Constraint indexing is 1-based: constraint i < N_t is x_{i+1} - x_i >= d and
// constraint N_t is x_{N_t} - x_1 <= D_x.

#ifndef MAISAC_TRANSMIT_LOS_HPP_
#define MAISAC_TRANSMIT_LOS_HPP_

#include <cstdint>
#include <vector>

#include "maisac/types.hpp"

namespace maisac {

struct ActiveSet {
  std::vector<int> indices;  // strictly increasing, 1-based

  int size() const { return static_cast<int>(indices.size()); }
  bool Contains(int idx) const;
  // True when the aperture constraint (index n) is active.
  bool IsCaseTwo(int n) const { return !indices.empty() && indices.back() == n; }
  void Validate(int n) const;
};

enum class LosCase { kI, kII };

struct ReducedProblem {
  std::vector<Complex> r;      // effective coefficient per free variable
  std::vector<int> n;          // merged active constraints per free variable
  std::vector<int> block_len;  // d-spaced antennas moving forward from each free variable
  std::vector<int> block_start;  // 0-based antenna index of each free variable
  LosCase kase = LosCase::kI;
  int l_split = 0;     // Case II: antennas l_split+1..N_t are pinned to x_1 + D_x
  int tail_count = 0;  // N_t - l_split in Case II, else 0
  int n_tx = 0;
  double freq = 0.0;  // |sin(theta_t) + sin(theta)| (cycles per wavelength)
  double d = 0.0;
  double aperture = 0.0;

  int num_free() const { return static_cast<int>(r.size()); }
};

// |sum_i exp(-j 2 pi (sin aod + sin theta) x_i)|.
double GObjective(const Apv& x, double aod, double theta);

// Throws kDegenerateCoefficient if any |r_i| < 1e-12.
ReducedProblem Reduce(const ActiveSet& active, const SystemParams& params, double aod,
                      double theta);

// Smallest integers k_i keeping each aligned gap >= block_len_i * d.
std::vector<long> MinK(const ReducedProblem& reduced);

// Aligned gap between free variables i and i+1 for the given k.
std::vector<double> AlignedGaps(const ReducedProblem& reduced, const std::vector<long>& k);

double DMin(const ReducedProblem& reduced, const std::vector<long>& k);

// x'_1 = 0 and consecutive aligned gaps. Throws kApertureTooSmall when
// D_x < D_min.
RealVector AlignedPositions(const ReducedProblem& reduced, const std::vector<long>& k);

// Re-inserts the merged d-spaced antennas (and the aperture-pinned tail in
// Case II) to recover all N_t coordinates.
Apv ExpandPositions(const RealVector& x_reduced, const ReducedProblem& reduced);

// |sum_i r_i exp(-j 2 pi f x'_i)| and its squared-value derivatives.
double ReducedObjective(const ReducedProblem& reduced, const RealVector& x_reduced);
RealVector ReducedGradientSq(const ReducedProblem& reduced, const RealVector& x_reduced);
RealMatrix ReducedHessianSq(const ReducedProblem& reduced, const RealVector& x_reduced);

// Rows of U indexed by the active set (c x N_t).
RealMatrix ActiveRows(const ActiveSet& active, int n);

enum class LosStatus {
  kAligned,        // aperture admits the unconstrained aligned ULA
  kBoundary,       // optimum found on a face with c >= 1
  kZeroFrequency,  // sin aod + sin theta == 0, every x is optimal
  kFallbackUlah,   // no face admitted alignment; ULAH returned
};

struct LosSolution {
  Apv apv;
  double objective = 0.0;
  ActiveSet active_set;
  double d_min_used = 0.0;
  int layer = 0;
  LosStatus status = LosStatus::kAligned;
  std::size_t evaluations = 0;  // active sets evaluated with c >= 1
  std::vector<ActiveSet> skipped;  // degenerate faces
  std::uint64_t seed = 0;          // depth-first order seed
};

struct BfsOptions {
  // Layers searched after the first layer that yields a feasible face.
  // Negative searches every layer.
  int extra_layers = 1;
};

// Breadth-first traversal over faces, layer by layer in lexicographic order.
LosSolution BtBfs(const SystemParams& params, double aod, double theta,
                  const BfsOptions& options = {});

// Depth-first descent activating constraints along a seeded permutation.
LosSolution BtDfs(const SystemParams& params, double aod, double theta,
                  std::uint64_t order_seed);

// Seeded permutation of 1..n used by BtDfs.
std::vector<int> DfsOrder(int n, std::uint64_t seed);

}  // namespace maisac

#endif  // MAISAC_TRANSMIT_LOS_HPP_
