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


#include "maisac/chain_qp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "maisac/error.hpp"

namespace maisac {
namespace {

struct Pooled {
  RealVector fit;
  double first_sum = 0.0;
  int first_count = 0;
  double last_sum = 0.0;
  int last_count = 0;
  int blocks = 0;
};

Pooled Pava(const RealVector& v) {
  std::vector<double> sum;
  std::vector<int> count;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    sum.push_back(v[i]);
    count.push_back(1);
    while (sum.size() > 1) {
      const std::size_t b = sum.size() - 1;
      if (sum[b - 1] / count[b - 1] <= sum[b] / count[b]) break;
      sum[b - 1] += sum[b];
      count[b - 1] += count[b];
      sum.pop_back();
      count.pop_back();
    }
  }
  Pooled out;
  out.fit.resize(v.size());
  Eigen::Index pos = 0;
  for (std::size_t b = 0; b < sum.size(); ++b) {
    const double mean = sum[b] / count[b];
    for (int j = 0; j < count[b]; ++j) out.fit[pos++] = mean;
  }
  out.first_sum = sum.front();
  out.first_count = count.front();
  out.last_sum = sum.back();
  out.last_count = count.back();
  out.blocks = static_cast<int>(sum.size());
  return out;
}

Pooled Shifted(const RealVector& t, double mu) {
  RealVector v = t;
  v[0] += mu;
  v[v.size() - 1] -= mu;
  return Pava(v);
}

double Range(const RealVector& z) { return z[z.size() - 1] - z[0]; }

}  // namespace

RealMatrix ChainMatrix(int n) {
  RealMatrix u = RealMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    u(i, i) = 1.0;
    u(i, i + 1) = -1.0;
  }
  if (n >= 2) {
    u(n - 1, 0) = -1.0;
    u(n - 1, n - 1) = 1.0;
  }
  return u;
}

RealVector ChainBounds(int n, double d, double aperture) {
  RealVector l = RealVector::Constant(n, -d);
  l[n - 1] = aperture;
  return l;
}

RealVector IsotonicFit(const RealVector& v) { return Pava(v).fit; }

RealVector ProjectOntoChain(const RealVector& target, double d, double aperture) {
  const Eigen::Index n = target.size();
  if (n <= 1) return target;
  const double slack = aperture - (n - 1) * d;
  if (slack < -1e-12) {
    throw Error(ErrorCode::kInvalidGeometry, "aperture smaller than (N-1)d");
  }
  const double w = std::max(0.0, slack);

  // z_i = x_i - i d turns spacing into monotonicity and the aperture bound
  // into range(z) <= w. A multiplier mu on the range row shifts the ends.
  RealVector offset(n);
  for (Eigen::Index i = 0; i < n; ++i) offset[i] = static_cast<double>(i) * d;
  const RealVector t = target - offset;

  Pooled best = Pava(t);
  if (Range(best.fit) > w) {
    double lo = 0.0;
    double hi = std::max(1.0, (t.maxCoeff() - t.minCoeff()) * static_cast<double>(n));
    while (Range(Shifted(t, hi).fit) > w) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (Range(Shifted(t, mid).fit) > w) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    best = Shifted(t, hi);
    // With the block structure fixed, range(mu) is affine; solve it exactly.
    if (best.blocks >= 2) {
      const double nf = best.first_count;
      const double nl = best.last_count;
      const double sf = best.first_sum - hi;  // undo the shift inside the sums
      const double sl = best.last_sum + hi;
      const double mu = (sl / nl - sf / nf - w) / (1.0 / nl + 1.0 / nf);
      if (mu >= 0.0) {
        const Pooled exact = Shifted(t, mu);
        if (exact.blocks == best.blocks && exact.first_count == best.first_count &&
            exact.last_count == best.last_count) {
          best = exact;
        }
      }
    }
  }
  RealVector x = best.fit + offset;
  return x;
}

RealVector SolveQpStep(const RealVector& x_i, const RealVector& grad, double delta,
                       double d, double aperture) {
  if (!(delta > 0.0)) return x_i;
  return ProjectOntoChain(x_i + grad / delta, d, aperture);
}

}  // namespace maisac
