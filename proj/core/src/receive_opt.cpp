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


#include "maisac/receive_opt.hpp"

#include <cmath>
#include <limits>

#include "maisac/error.hpp"
#include "maisac/signal_model.hpp"

namespace maisac {

Apv TwoClusterPositions(int n, double d, double aperture, TieChoice tie) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidGeometry, "at least two receive antennas required");
  }
  if (aperture < (n - 1) * d - 1e-12) {
    throw Error(ErrorCode::kInvalidGeometry, "aperture smaller than (N-1)d");
  }
  RealVector y(n);
  const int half = n / 2;
  for (int i = 0; i < half; ++i) {
    y[i] = i * d;
    y[n - 1 - i] = aperture - i * d;
  }
  if (n % 2 == 1) {
    y[half] = tie == TieChoice::kLeft ? half * d : aperture - half * d;
  }
  // A zero-slack aperture makes both clusters meet; snap to the exact ULA so
  // roundoff cannot produce a non-increasing vector.
  if (aperture - (n - 1) * d <= 1e-12) {
    for (int i = 0; i < n; ++i) y[i] = i * d;
  }
  return Apv(std::move(y));
}

RxSolution OptimalRxPositions(const SystemParams& params, TieChoice tie) {
  RxSolution out;
  out.apv = TwoClusterPositions(params.n_rx, params.d_min, params.aperture_rx, tie);
  out.spread = SpreadMetric(out.apv);
  out.tie = tie;
  return out;
}

Apv UlahPositions(int n, double d) {
  RealVector y(n);
  for (int i = 0; i < n; ++i) y[i] = i * d;
  return Apv(std::move(y));
}

Apv UlafPositions(int n, double aperture) {
  if (n == 1) return Apv{0.0};
  RealVector y(n);
  for (int i = 0; i < n; ++i) y[i] = aperture * i / (n - 1);
  return Apv(std::move(y));
}

double GainRatioClosedForm(int n, double d, double aperture) {
  if (n % 2 != 0) {
    throw Error(ErrorCode::kOddNrUnsupported, "closed-form ratio needs even N_r");
  }
  const double nn = n;
  const double t = (nn - 1.0) * d / aperture;
  return (nn - 2.0) / (nn + 1.0) * t * (t - 3.0) + 3.0 * (nn - 1.0) / (nn + 1.0);
}

double GainRatio::direct_db() const { return 10.0 * std::log10(direct); }

GainRatio CrbGainRatio(const SystemParams& params) {
  const int n = params.n_rx;
  const double d = params.d_min;
  const double big_d = params.aperture_rx;
  GainRatio out;
  const double f_opt = SpreadMetric(TwoClusterPositions(n, d, big_d));
  const double f_ulaf = SpreadMetric(UlafPositions(n, big_d));
  const double f_ulah = SpreadMetric(UlahPositions(n, d));
  out.direct = f_opt / f_ulaf;
  out.ulaf_over_ulah = f_ulaf / f_ulah;
  out.bound = 3.0 * (n - 1.0) / (n + 1.0);
  if (n % 2 == 0) {
    out.closed_form = GainRatioClosedForm(n, d, big_d);
    out.closed_form_valid = true;
  } else {
    out.closed_form = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace maisac
