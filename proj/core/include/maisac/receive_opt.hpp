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


// Receive-array placement: closed-form spread maximizer, uniform baselines
// and the sensing-gain analysis.

#ifndef MAISAC_RECEIVE_OPT_HPP_
#define MAISAC_RECEIVE_OPT_HPP_

#include "maisac/types.hpp"

namespace maisac {

enum class TieChoice { kLeft, kRight };

struct RxSolution {
  Apv apv;
  double spread = 0.0;
  TieChoice tie = TieChoice::kLeft;
};

// Two d-spaced clusters pinned to both ends of [0, D_y]; for odd N_r the
// middle antenna joins the cluster chosen by `tie`.
RxSolution OptimalRxPositions(const SystemParams& params,
                              TieChoice tie = TieChoice::kLeft);

// Same placement for an arbitrary count/spacing/aperture.
Apv TwoClusterPositions(int n, double d, double aperture,
                        TieChoice tie = TieChoice::kLeft);

Apv UlahPositions(int n, double d);
Apv UlafPositions(int n, double aperture);

struct GainRatio {
  double direct = 0.0;       // f(y_opt) / f(y_ULAF)
  double closed_form = 0.0;  // NaN for odd N_r
  bool closed_form_valid = false;
  double ulaf_over_ulah = 0.0;  // f(y_ULAF) / f(y_ULAH) = D^2 / ((N-1) d)^2
  double bound = 0.0;           // 3 (N_r - 1) / (N_r + 1)

  double direct_db() const;
};

// The closed form only exists for even N_r; odd N_r yields the direct ratio
// with closed_form_valid == false.
GainRatio CrbGainRatio(const SystemParams& params);

// Throws kOddNrUnsupported for odd N_r.
double GainRatioClosedForm(int n, double d, double aperture);

}  // namespace maisac

#endif  // MAISAC_RECEIVE_OPT_HPP_
