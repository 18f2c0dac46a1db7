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


#include "maisac/oracle.hpp"

#include <cmath>
#include <vector>

#include "maisac/error.hpp"

namespace maisac {
namespace {

// Visits every gap vector (in units of `step` above d) with sum <= budget.
template <typename Visit>
void ForEachGapVector(int gaps, long budget, std::vector<long>& k, int pos, long used,
                      Visit& visit) {
  if (pos == gaps) {
    visit(k);
    return;
  }
  for (long v = 0; v + used <= budget; ++v) {
    k[pos] = v;
    ForEachGapVector(gaps, budget, k, pos + 1, used + v, visit);
  }
}

long LatticeBudget(int n, double d, double aperture, double step) {
  const double slack = aperture - (n - 1) * d;
  if (slack < -1e-12) {
    throw Error(ErrorCode::kInvalidGeometry, "aperture smaller than (N-1)d");
  }
  return static_cast<long>(std::floor(std::max(0.0, slack) / step + 1e-9));
}

template <typename Objective>
GridResult Scan(int n, double d, double aperture, const GridSpec& grid, Objective obj) {
  if (!(grid.step > 0.0)) throw Error(ErrorCode::kConfig, "grid step must be positive");
  const std::size_t count = GridPointCount(n, d, aperture, grid.step);
  if (count > grid.max_points) {
    throw Error(ErrorCode::kGridTooLarge, "lattice exceeds max_points");
  }
  const long budget = LatticeBudget(n, d, aperture, grid.step);
  GridResult best;
  best.value = -std::numeric_limits<double>::infinity();
  RealVector x(n);
  RealVector best_x(n);
  std::vector<long> k(n - 1, 0);
  auto visit = [&](const std::vector<long>& gaps) {
    x[0] = 0.0;
    for (int i = 1; i < n; ++i) x[i] = x[i - 1] + d + gaps[i - 1] * grid.step;
    const double v = obj(x);
    ++best.points;
    if (v > best.value) {
      best.value = v;
      best_x = x;
    }
  };
  if (n == 1) {
    x[0] = 0.0;
    visit(k);
  } else {
    ForEachGapVector(n - 1, budget, k, 0, 0, visit);
  }
  best.apv = Apv(best_x);
  return best;
}

}  // namespace

std::size_t GridPointCount(int n, double d, double aperture, double step) {
  if (n <= 1) return 1;
  const long budget = LatticeBudget(n, d, aperture, step);
  // C(budget + n - 1, n - 1), saturating.
  double c = 1.0;
  for (int j = 1; j <= n - 1; ++j) {
    c = c * static_cast<double>(budget + j) / j;
    if (c > 1e18) return static_cast<std::size_t>(-1);
  }
  return static_cast<std::size_t>(std::llround(c));
}

GridResult GridSearchRx(const SystemParams& params, const GridSpec& grid) {
  const int n = params.n_rx;
  auto spread = [n](const RealVector& y) {
    double s1 = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      s1 += y[i];
      s2 += y[i] * y[i];
    }
    return s2 - s1 * s1 / n;
  };
  GridResult r = Scan(n, params.d_min, params.aperture_rx, grid, spread);
  // |df/dy_i| = 2 |y_i - mean| <= 2 D_y.
  r.slack = 2.0 * params.aperture_rx * grid.step * std::sqrt(static_cast<double>(n));
  return r;
}

GridResult GridSearchTxLos(const SystemParams& params, double aod, double theta,
                           const GridSpec& grid) {
  const int n = params.n_tx;
  const double w = 2.0 * 3.14159265358979323846 * (std::sin(aod) + std::sin(theta));
  auto g = [n, w](const RealVector& x) {
    double re = 0.0;
    double im = 0.0;
    for (int i = 0; i < n; ++i) {
      re += std::cos(w * x[i]);
      im -= std::sin(w * x[i]);
    }
    return std::hypot(re, im);
  };
  GridResult r = Scan(n, params.d_min, params.aperture_tx, grid, g);
  // |dg/dx_i| <= |w|.
  r.slack = std::abs(w) * grid.step * std::sqrt(static_cast<double>(n));
  return r;
}

RealVector FdGradient(const std::function<double(const RealVector&)>& f,
                      const RealVector& x, double h) {
  RealVector g(x.size());
  RealVector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = f(probe);
    probe[i] = x[i] - h;
    const double fm = f(probe);
    probe[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

QpReferenceResult QpReference(double delta, const RealVector& linear, double d,
                              double aperture, double tol, int max_iters) {
  if (!(delta > 0.0)) throw Error(ErrorCode::kConfig, "delta must be positive");
  const Eigen::Index n = linear.size();
  const RealVector t = linear / delta;
  QpReferenceResult out;
  if (n <= 1) {
    out.x = t;
    out.multipliers = RealVector::Zero(n);
    return out;
  }
  // Rows: x_i - x_{i+1} <= -d (i < n-1), x_{n-1} - x_0 <= aperture.
  auto apply_u = [n](const RealVector& x) {
    RealVector r(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) r[i] = x[i] - x[i + 1];
    r[n - 1] = x[n - 1] - x[0];
    return r;
  };
  auto apply_ut = [n](const RealVector& lam) {
    RealVector r = RealVector::Zero(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      r[i] += lam[i];
      r[i + 1] -= lam[i];
    }
    r[n - 1] += lam[n - 1];
    r[0] -= lam[n - 1];
    return r;
  };
  RealVector bound = RealVector::Constant(n, -d);
  bound[n - 1] = aperture;

  auto residual = [&](const RealVector& x, const RealVector& lam) {
    const RealVector viol = apply_u(x) - bound;
    double r = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      r = std::max(r, std::max(0.0, viol[k]));
      r = std::max(r, std::abs(lam[k] * viol[k]));
    }
    return r;
  };

  // Dual: max_{lam >= 0} -1/2 |U^T lam|^2 + lam^T (U t - l); x = t - U^T lam.
  RealVector lam = RealVector::Zero(n);
  RealVector lam_prev = lam;
  RealVector y = lam;
  double tk = 1.0;
  const double step = 0.25;  // 1 / ||U U^T|| with ||U U^T|| <= 4
  for (int it = 0; it < max_iters; ++it) {
    const RealVector x_y = t - apply_ut(y);
    RealVector next = (y + step * (apply_u(x_y) - bound)).cwiseMax(0.0);
    const double tk_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    lam_prev = lam;
    lam = next;
    y = lam + ((tk - 1.0) / tk_next) * (lam - lam_prev);
    tk = tk_next;
    if (it % 64 == 0) {
      // Restart momentum when it stops helping.
      if ((lam - lam_prev).dot(y - lam) < 0.0) {
        y = lam;
        tk = 1.0;
      }
    }
    const RealVector x = t - apply_ut(lam);
    const double r = residual(x, lam);
    if (r < tol) {
      out.x = x;
      out.multipliers = lam;
      out.kkt_residual = r;
      out.iterations = it + 1;
      return out;
    }
  }
  throw Error(ErrorCode::kIterationCap, "reference QP did not converge");
}

}  // namespace maisac
