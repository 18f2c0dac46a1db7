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


#include "maisac/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "maisac/error.hpp"

namespace maisac {

void SystemParams::Validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidGeometry, msg);
  };
  if (!(d_min > 0.0)) fail("d_min must be positive");
  if (n_tx < 1) fail("n_tx must be >= 1");
  if (n_rx < 1) fail("n_rx must be >= 1");
  if (aperture_tx < (n_tx - 1) * d_min - 1e-12) fail("aperture_tx < (n_tx-1)*d_min");
  if (aperture_rx < (n_rx - 1) * d_min - 1e-12) fail("aperture_rx < (n_rx-1)*d_min");
  if (!(power_budget > 0.0)) fail("power_budget must be positive");
  if (!(noise_comm > 0.0)) fail("noise_comm must be positive");
  if (!(noise_radar > 0.0)) fail("noise_radar must be positive");
  if (!(snr_threshold >= 0.0)) fail("snr_threshold must be non-negative");
  if (frame_len <= n_tx) fail("frame_len must exceed n_tx");
  if (n_rx <= n_tx) fail("n_rx must exceed n_tx");
  if (!(std::abs(target_angle) < kPi / 2)) fail("target_angle must lie in (-pi/2, pi/2)");
}

Apv::Apv(RealVector positions) : positions_(std::move(positions)) {
  if (positions_.size() == 0) {
    throw Error(ErrorCode::kInvalidGeometry, "empty position vector");
  }
  for (Eigen::Index i = 0; i < positions_.size(); ++i) {
    if (!std::isfinite(positions_[i])) {
      throw Error(ErrorCode::kInvalidGeometry, "non-finite position");
    }
    if (i > 0 && !(positions_[i] > positions_[i - 1])) {
      std::ostringstream os;
      os << "positions not strictly increasing at index " << i;
      throw Error(ErrorCode::kInvalidGeometry, os.str());
    }
  }
}

Apv::Apv(std::initializer_list<double> positions)
    : Apv(RealVector(Eigen::Map<const RealVector>(
          positions.begin(), static_cast<Eigen::Index>(positions.size())))) {}

Apv Apv::Checked(RealVector positions, double d, double aperture, double tol) {
  Apv apv(std::move(positions));
  if (!apv.IsFeasible(d, aperture, tol)) {
    std::ostringstream os;
    os << "spacing/aperture violated by " << apv.MaxViolation(d, aperture);
    throw Error(ErrorCode::kInvalidGeometry, os.str());
  }
  return apv;
}

double Apv::span() const {
  return positions_[positions_.size() - 1] - positions_[0];
}

double Apv::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < positions_.size(); ++i) {
    gap = std::min(gap, positions_[i] - positions_[i - 1]);
  }
  return gap;
}

double Apv::MaxViolation(double d, double aperture) const {
  double v = 0.0;
  for (Eigen::Index i = 1; i < positions_.size(); ++i) {
    v = std::max(v, d - (positions_[i] - positions_[i - 1]));
  }
  v = std::max(v, span() - aperture);
  return v;
}

bool Apv::IsFeasible(double d, double aperture, double tol) const {
  return MaxViolation(d, aperture) <= tol;
}

ChannelPaths::ChannelPaths(ComplexVector g, RealVector a)
    : gains(std::move(g)), aods(std::move(a)) {
  Validate();
}

void ChannelPaths::Validate() const {
  if (gains.size() != aods.size()) {
    throw Error(ErrorCode::kInvalidGeometry, "gains and aods differ in length");
  }
  if (gains.size() < 1) {
    throw Error(ErrorCode::kInvalidGeometry, "at least one path required");
  }
}

CrbValue CrbValue::FromCrb(double crb) {
  return CrbValue{crb, std::sqrt(crb)};
}

}  // namespace maisac
