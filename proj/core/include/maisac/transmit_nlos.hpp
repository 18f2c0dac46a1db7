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


// Multipath transmit placement: a minorize-maximize loop on |h^H a|^2 and a
// gradient-projection descent on the angle sum upsilon + phi, seeded by it.

#ifndef MAISAC_TRANSMIT_NLOS_HPP_
#define MAISAC_TRANSMIT_NLOS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "maisac/types.hpp"

namespace maisac {

// Spatial frequencies alpha_p = 2 pi (sin aod_p + sin theta).
RealVector PathFrequencies(const ChannelPaths& paths, double theta);

// psi_p(x) = sum_i exp(-j alpha_p x_i).
ComplexVector Psi(const Apv& x, const ChannelPaths& paths, double theta);

// |h^H a|^2 via psi^H Sigma psi.
double P1(const Apv& x, const ChannelPaths& paths, double theta);
// |h^H a|^2 evaluated from h and a directly.
double P1Direct(const Apv& x, const ChannelPaths& paths, double theta);
RealVector GradP1(const Apv& x, const ChannelPaths& paths, double theta);

double ChannelGain(const Apv& x, const ChannelPaths& paths);  // ||h||^2
RealVector GradChannelGain(const Apv& x, const ChannelPaths& paths);

struct SurrogateState {
  ComplexVector z;  // Sigma psi(x_i)
  RealVector grad;  // gradient of Re{z^H psi(x)} at x_i
  RealVector hess_diag;
  double delta1 = 0.0;
  RealVector alphas;
};

SurrogateState Surrogate(const Apv& x_i, const ChannelPaths& paths, double theta);

// Re{z^H psi(x)} for a fixed z.
double SurrogateValue(const ComplexVector& z, const RealVector& alphas, const RealVector& x);
RealVector SurrogateGrad(const ComplexVector& z, const RealVector& alphas,
                         const RealVector& x);
RealVector SurrogateHessDiag(const ComplexVector& z, const RealVector& alphas,
                             const RealVector& x);

// Projection of x_i + grad / delta1 onto the chain polytope.
Apv SolveQpStep(const Apv& x_i, const SurrogateState& surr, const SystemParams& params);

struct MmOptions {
  double eps = 1e-3;
  int max_iters = 500;
  // Stop as soon as an iterate meets the matched-beam SNR condition.
  bool stop_when_feasible = true;
};

enum class MmStatus { kFeasible, kNotFound, kIterationCap };

struct MmResult {
  MmStatus status = MmStatus::kNotFound;
  Apv x;
  int iterations = 0;
  std::vector<double> p1_history;     // p1 at x^0, x^1, ...
  std::vector<double> delta_history;  // delta1 used for each step
  std::vector<Apv> iterates;          // x^0, x^1, ...
};

// P_T p1(x) > N_t Gamma sigma_C^2.
bool Sp1Feasible(double p1, const SystemParams& params);

MmResult MmSp1(const Apv& x0, const ChannelPaths& paths, const SystemParams& params,
               const MmOptions& options = {});

// arccos sqrt(p1 / (N_t ||h||^2)) + arcsin sqrt(Gamma sigma_C^2 / (P_T ||h||^2)).
// Throws kInfeasible when P_T ||h||^2 < Gamma sigma_C^2.
double P2(const Apv& x, const ChannelPaths& paths, const SystemParams& params);

// Throws kDegenerateArg at the endpoints of the arccos/arcsin domains.
RealVector GradP2(const Apv& x, const ChannelPaths& paths, const SystemParams& params);

struct RgpOptions {
  double eps = 1e-3;
  int max_iters = 500;
  double armijo_sigma = 1e-4;
  double armijo_beta = 0.5;
  double initial_step = 1.0;
  int max_backtracks = 50;
};

enum class RgpStatus { kStationary, kIterationCap, kLineSearchFailed, kDegenerateArg };

struct RgpResult {
  RgpStatus status = RgpStatus::kIterationCap;
  Apv x;
  int iterations = 0;
  int dropped_rows = 0;
  std::vector<double> p2_history;  // p2 at each accepted iterate, starting at x1
  std::vector<double> steps;       // accepted step sizes
  std::vector<double> proj_grad_norms;  // ||P grad|| for each accepted step
  std::vector<double> projector_error;  // max(|P^2 - P|, |P M^T|) per projector built
  std::vector<Apv> iterates;
};

// Rows of U within eps_act of their bound at x.
std::vector<int> ActiveRowIndices(const RealVector& x, double d, double aperture);

// P = I - M^T (M M^T)^{-1} M for the selected rows of U.
RealMatrix Projector(const RealMatrix& m);

RgpResult Rgp(const Apv& x1, const ChannelPaths& paths, const SystemParams& params,
              const RgpOptions& options = {});

// Uniform sample over the feasible APVs with x_1 = 0.
Apv RandomFeasibleApv(int n, double d, double aperture, std::uint64_t seed);

enum class NlosBranch { kSp1, kSp2 };

struct NlosSolution {
  Apv x;
  BeamVector w;
  CrbValue crb;
  NlosBranch branch = NlosBranch::kSp1;
  MmResult mm;
  std::optional<RgpResult> rgp;
};

struct NlosOptions {
  MmOptions mm;
  RgpOptions rgp;
  std::optional<Apv> warm_start;  // defaults to ULAF
};

// Transmit placement, beamformer and CRB for a given receive array.
NlosSolution SolveTransmitNlos(const ChannelPaths& paths, const SystemParams& params,
                               const Apv& rx, const NlosOptions& options = {});

}  // namespace maisac

#endif  // MAISAC_TRANSMIT_NLOS_HPP_
