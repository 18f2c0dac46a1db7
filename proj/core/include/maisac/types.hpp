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

// Core value types shared by every module.
//
// All lengths are expressed in carrier wavelengths (lambda == 1). Conversion
// from physical units happens only at the CLI boundary.

#ifndef MAISAC_TYPES_HPP_
#define MAISAC_TYPES_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace maisac {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Physical and algorithmic constants of one ISAC scenario.
struct SystemParams {
  double d_min = 0.5;          // minimum inter-antenna spacing
  double aperture_tx = 13.55;  // D_x
  double aperture_rx = 13.55;  // D_y
  int n_tx = 18;
  int n_rx = 20;
  double power_budget = 0.1;    // P_T, watts
  double noise_comm = 1e-3;     // sigma_C^2, watts
  double noise_radar = 1e-3;    // sigma_R^2, watts
  double snr_threshold = 1.0;   // Gamma, linear
  int frame_len = 30;           // L
  Complex reflect_coeff{1.0, 0.0};
  double target_angle = 0.0;    // radians

  // Gamma * sigma_C^2.
  double required_signal_power() const { return snr_threshold * noise_comm; }

  // Throws Error(kInvalidGeometry) on the first violated invariant.
  void Validate() const;
};

// Strictly increasing antenna coordinates of a linear array.
//
// The constructor only enforces strict monotonicity; spacing and aperture are
// properties of the scenario and are checked with IsFeasible().
class Apv {
 public:
  Apv() = default;
  explicit Apv(RealVector positions);
  Apv(std::initializer_list<double> positions);

  // Builds an Apv and additionally enforces spacing >= d and span <= D
  // (both within `tol`).
  static Apv Checked(RealVector positions, double d, double aperture,
                     double tol = 1e-9);

  const RealVector& positions() const { return positions_; }
  std::size_t size() const { return static_cast<std::size_t>(positions_.size()); }
  double operator[](std::size_t i) const { return positions_[static_cast<Eigen::Index>(i)]; }
  double span() const;
  double min_gap() const;

  bool IsFeasible(double d, double aperture, double tol = 1e-9) const;

  // Largest violation of the chain constraints U x <= l_u (0 when feasible).
  double MaxViolation(double d, double aperture) const;

 private:
  RealVector positions_;
};

// Multipath description of the BS-to-user channel.
struct ChannelPaths {
  ComplexVector gains;  // sigma, one per path
  RealVector aods;      // departure azimuths, radians

  ChannelPaths() = default;
  ChannelPaths(ComplexVector g, RealVector a);

  Eigen::Index num_paths() const { return gains.size(); }
  void Validate() const;
};

// Transmit beamformer w; squared norm is bounded by the power budget.
struct BeamVector {
  ComplexVector weights;

  double power() const { return weights.squaredNorm(); }
  bool WithinBudget(double power_budget, double tol = 1e-9) const {
    return power() <= power_budget * (1.0 + tol) + tol;
  }
};

struct CrbValue {
  double crb = 0.0;       // rad^2
  double root_crb = 0.0;  // rad

  static CrbValue FromCrb(double crb);
};

}  // namespace maisac

#endif  // MAISAC_TYPES_HPP_
