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


#include "maisac/transmit_nlos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maisac/beamforming.hpp"
#include "maisac/chain_qp.hpp"
#include "maisac/error.hpp"
#include "maisac/receive_opt.hpp"
#include "maisac/rng.hpp"
#include "maisac/signal_model.hpp"

namespace maisac {
namespace {

constexpr double kDomainTol = 1e-14;

double ActiveTol(double bound) { return 1e-9 * std::max(1.0, std::abs(bound)); }

// sum_p conj(sigma_p) psi_p.
Complex ProjectedPsi(const Apv& x, const ChannelPaths& paths, double theta) {
  return paths.gains.dot(Psi(x, paths, theta));
}

bool TryP2(const Apv& x, const ChannelPaths& paths, const SystemParams& params,
           double& value) {
  try {
    value = P2(x, paths, params);
    return std::isfinite(value);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

RealVector PathFrequencies(const ChannelPaths& paths, double theta) {
  RealVector alphas(paths.num_paths());
  for (Eigen::Index p = 0; p < alphas.size(); ++p) {
    alphas[p] = kTwoPi * (std::sin(paths.aods[p]) + std::sin(theta));
  }
  return alphas;
}

ComplexVector Psi(const Apv& x, const ChannelPaths& paths, double theta) {
  const RealVector alphas = PathFrequencies(paths, theta);
  ComplexVector psi = ComplexVector::Zero(alphas.size());
  for (Eigen::Index p = 0; p < alphas.size(); ++p) {
    for (Eigen::Index i = 0; i < x.positions().size(); ++i) {
      psi[p] += std::polar(1.0, -alphas[p] * x.positions()[i]);
    }
  }
  return psi;
}

double P1(const Apv& x, const ChannelPaths& paths, double theta) {
  const ComplexVector psi = Psi(x, paths, theta);
  const ComplexMatrix sigma = paths.gains * paths.gains.adjoint();
  return std::real(psi.dot(sigma * psi));
}

double P1Direct(const Apv& x, const ChannelPaths& paths, double theta) {
  return std::norm(Channel(x, paths).dot(Steering(x, theta)));
}

RealVector GradP1(const Apv& x, const ChannelPaths& paths, double theta) {
  const RealVector alphas = PathFrequencies(paths, theta);
  const Complex s = ProjectedPsi(x, paths, theta);
  RealVector g(x.positions().size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    Complex ds(0.0, 0.0);
    for (Eigen::Index p = 0; p < alphas.size(); ++p) {
      ds += std::conj(paths.gains[p]) * Complex(0.0, -alphas[p]) *
            std::polar(1.0, -alphas[p] * x.positions()[i]);
    }
    g[i] = 2.0 * std::real(std::conj(s) * ds);
  }
  return g;
}

double ChannelGain(const Apv& x, const ChannelPaths& paths) {
  return Channel(x, paths).squaredNorm();
}

RealVector GradChannelGain(const Apv& x, const ChannelPaths& paths) {
  const ComplexVector h = Channel(x, paths);
  RealVector g(h.size());
  for (Eigen::Index k = 0; k < h.size(); ++k) {
    Complex dh(0.0, 0.0);
    for (Eigen::Index p = 0; p < paths.num_paths(); ++p) {
      const double beta = kTwoPi * std::sin(paths.aods[p]);
      dh += paths.gains[p] * Complex(0.0, beta) * std::polar(1.0, beta * x.positions()[k]);
    }
    g[k] = 2.0 * std::real(std::conj(h[k]) * dh);
  }
  return g;
}

double SurrogateValue(const ComplexVector& z, const RealVector& alphas, const RealVector& x) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (Eigen::Index p = 0; p < z.size(); ++p) {
      const double ph = alphas[p] * x[i];
      v += z[p].real() * std::cos(ph) - z[p].imag() * std::sin(ph);
    }
  }
  return v;
}

RealVector SurrogateGrad(const ComplexVector& z, const RealVector& alphas,
                         const RealVector& x) {
  RealVector g = RealVector::Zero(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (Eigen::Index p = 0; p < z.size(); ++p) {
      const double ph = alphas[p] * x[i];
      g[i] += -z[p].real() * alphas[p] * std::sin(ph) - z[p].imag() * alphas[p] * std::cos(ph);
    }
  }
  return g;
}

RealVector SurrogateHessDiag(const ComplexVector& z, const RealVector& alphas,
                             const RealVector& x) {
  RealVector h = RealVector::Zero(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (Eigen::Index p = 0; p < z.size(); ++p) {
      const double ph = alphas[p] * x[i];
      const double a2 = alphas[p] * alphas[p];
      h[i] += -z[p].real() * a2 * std::cos(ph) + z[p].imag() * a2 * std::sin(ph);
    }
  }
  return h;
}

SurrogateState Surrogate(const Apv& x_i, const ChannelPaths& paths, double theta) {
  SurrogateState s;
  s.alphas = PathFrequencies(paths, theta);
  s.z = paths.gains * ProjectedPsi(x_i, paths, theta);
  s.grad = SurrogateGrad(s.z, s.alphas, x_i.positions());
  s.hess_diag = SurrogateHessDiag(s.z, s.alphas, x_i.positions());
  for (Eigen::Index p = 0; p < s.z.size(); ++p) {
    s.delta1 += s.alphas[p] * s.alphas[p] * std::abs(s.z[p]);
  }
  return s;
}

Apv SolveQpStep(const Apv& x_i, const SurrogateState& surr, const SystemParams& params) {
  return Apv(SolveQpStep(x_i.positions(), surr.grad, surr.delta1, params.d_min,
                         params.aperture_tx));
}

bool Sp1Feasible(double p1, const SystemParams& params) {
  return params.power_budget * p1 > params.n_tx * params.required_signal_power();
}

MmResult MmSp1(const Apv& x0, const ChannelPaths& paths, const SystemParams& params,
               const MmOptions& options) {
  const double theta = params.target_angle;
  MmResult out;
  out.x = x0;
  double p1 = P1(x0, paths, theta);
  out.p1_history.push_back(p1);
  out.iterates.push_back(x0);
  if (options.stop_when_feasible && Sp1Feasible(p1, params)) {
    out.status = MmStatus::kFeasible;
    return out;
  }
  for (int it = 0; it < options.max_iters; ++it) {
    const SurrogateState surr = Surrogate(out.x, paths, theta);
    const Apv next = SolveQpStep(out.x, surr, params);
    const double p1_next = P1(next, paths, theta);
    out.delta_history.push_back(surr.delta1);
    out.p1_history.push_back(p1_next);
    out.iterates.push_back(next);
    out.x = next;
    out.iterations = it + 1;
    const double change = std::abs(p1_next - p1);
    p1 = p1_next;
    if (options.stop_when_feasible && Sp1Feasible(p1, params)) {
      out.status = MmStatus::kFeasible;
      return out;
    }
    if (change < options.eps) {
      out.status = Sp1Feasible(p1, params) ? MmStatus::kFeasible : MmStatus::kNotFound;
      return out;
    }
  }
  out.status = MmStatus::kIterationCap;
  return out;
}

double P2(const Apv& x, const ChannelPaths& paths, const SystemParams& params) {
  const double h2 = ChannelGain(x, paths);
  if (!(h2 > 0.0) || params.required_signal_power() > params.power_budget * h2) {
    throw Error(ErrorCode::kInfeasible, "SNR target exceeds full-power transmission");
  }
  const double u = ClampUnit(P1(x, paths, params.target_angle) / (params.n_tx * h2));
  const double v = ClampUnit(params.required_signal_power() / (params.power_budget * h2));
  return std::acos(std::sqrt(u)) + std::asin(std::sqrt(v));
}

RealVector GradP2(const Apv& x, const ChannelPaths& paths, const SystemParams& params) {
  const double theta = params.target_angle;
  const double n = params.n_tx;
  const double h2 = ChannelGain(x, paths);
  if (!(h2 > 0.0)) {
    throw Error(ErrorCode::kInfeasible, "channel vector is zero");
  }
  const double p1 = P1(x, paths, theta);
  const double u = p1 / (n * h2);
  const double v = params.required_signal_power() / (params.power_budget * h2);
  if (u <= kDomainTol || u >= 1.0 - kDomainTol || v >= 1.0 - kDomainTol) {
    throw Error(ErrorCode::kDegenerateArg, "angle term at the edge of its domain");
  }
  const RealVector gp1 = GradP1(x, paths, theta);
  const RealVector gh2 = GradChannelGain(x, paths);
  const RealVector du = (gp1 * h2 - p1 * gh2) / (n * h2 * h2);
  RealVector g = -du / (2.0 * std::sqrt(u * (1.0 - u)));
  if (v > 0.0) {
    g -= std::sqrt(v) / (2.0 * std::sqrt(1.0 - v)) * gh2 / h2;
  }
  return g;
}

std::vector<int> ActiveRowIndices(const RealVector& x, double d, double aperture) {
  const Eigen::Index n = x.size();
  const RealVector slack = ChainBounds(static_cast<int>(n), d, aperture) -
                           ChainMatrix(static_cast<int>(n)) * x;
  std::vector<int> rows;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double bound = k + 1 < n ? -d : aperture;
    if (slack[k] <= ActiveTol(bound)) rows.push_back(static_cast<int>(k));
  }
  return rows;
}

RealMatrix Projector(const RealMatrix& m) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return RealMatrix::Identity(n, n);
  const RealMatrix gram = m * m.transpose();
  Eigen::FullPivLU<RealMatrix> lu(gram);
  if (lu.rank() < gram.rows()) {
    throw Error(ErrorCode::kSingularActiveGram, "active constraint rows are dependent");
  }
  return RealMatrix::Identity(n, n) - m.transpose() * lu.solve(m);
}

namespace {

RealMatrix SelectRows(const RealMatrix& u, const std::vector<int>& rows) {
  RealMatrix m(static_cast<Eigen::Index>(rows.size()), u.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = u.row(rows[r]);
  return m;
}

double ProjectorError(const RealMatrix& p, const RealMatrix& m) {
  double err = (p * p - p).cwiseAbs().maxCoeff();
  if (m.rows() > 0) err = std::max(err, (p * m.transpose()).cwiseAbs().maxCoeff());
  return err;
}

}  // namespace

RgpResult Rgp(const Apv& x1, const ChannelPaths& paths, const SystemParams& params,
              const RgpOptions& options) {
  const int n = params.n_tx;
  const double d = params.d_min;
  const double big_d = params.aperture_tx;
  const RealMatrix u_mat = ChainMatrix(n);
  const RealVector l_u = ChainBounds(n, d, big_d);

  RgpResult out;
  out.x = x1;
  RealVector x = x1.positions();
  double p2 = P2(x1, paths, params);
  out.p2_history.push_back(p2);
  out.iterates.push_back(x1);

  for (int it = 0; it < options.max_iters; ++it) {
    out.iterations = it + 1;
    RealVector grad;
    try {
      grad = GradP2(out.x, paths, params);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateArg) throw;
      out.status = RgpStatus::kDegenerateArg;
      return out;
    }
    std::vector<int> rows = ActiveRowIndices(x, d, big_d);
    RealMatrix m = SelectRows(u_mat, rows);
    RealMatrix p = Projector(m);
    out.projector_error.push_back(ProjectorError(p, m));
    RealVector pg = p * grad;

    bool stationary = false;
    while (pg.norm() < options.eps) {
      if (rows.empty()) {
        stationary = true;
        break;
      }
      const RealVector mult = -(m * m.transpose()).fullPivLu().solve(m * grad);
      Eigen::Index j = 0;
      const double u_min = mult.minCoeff(&j);
      if (u_min >= 0.0) {
        stationary = true;
        break;
      }
      rows.erase(rows.begin() + j);
      ++out.dropped_rows;
      m = SelectRows(u_mat, rows);
      p = Projector(m);
      out.projector_error.push_back(ProjectorError(p, m));
      pg = p * grad;
    }
    if (stationary) {
      out.status = RgpStatus::kStationary;
      return out;
    }

    const RealVector dir = -pg;
    double alpha_max = std::numeric_limits<double>::infinity();
    const RealVector ud = u_mat * dir;
    const RealVector slack = l_u - u_mat * x;
    for (int k = 0; k < n; ++k) {
      if (std::find(rows.begin(), rows.end(), k) != rows.end()) continue;
      if (ud[k] > 1e-15) alpha_max = std::min(alpha_max, std::max(0.0, slack[k]) / ud[k]);
    }
    double alpha = std::min(options.initial_step, alpha_max);
    const double decrease = options.armijo_sigma * pg.squaredNorm();
    bool accepted = false;
    RealVector x_next;
    double p2_next = 0.0;
    for (int bt = 0; bt <= options.max_backtracks && alpha > 0.0; ++bt) {
      x_next = x + alpha * dir;
      bool ok = false;
      try {
        const Apv cand(x_next);
        ok = TryP2(cand, paths, params, p2_next) && p2_next <= p2 - alpha * decrease;
      } catch (const Error&) {
        ok = false;
      }
      if (ok) {
        accepted = true;
        break;
      }
      alpha *= options.armijo_beta;
    }
    if (!accepted) {
      out.status = RgpStatus::kLineSearchFailed;
      return out;
    }
    x = x_next;
    out.x = Apv(x);
    p2 = p2_next;
    out.p2_history.push_back(p2);
    out.steps.push_back(alpha);
    out.proj_grad_norms.push_back(pg.norm());
    out.iterates.push_back(out.x);
  }
  out.status = RgpStatus::kIterationCap;
  return out;
}

Apv RandomFeasibleApv(int n, double d, double aperture, std::uint64_t seed) {
  if (n == 1) return Apv{0.0};
  const double w = aperture - (n - 1) * d;
  if (w < -1e-12) {
    throw Error(ErrorCode::kInvalidGeometry, "aperture smaller than (N-1)d");
  }
  // Slacks uniform on the simplex {s >= 0, sum s <= w}: n normalized
  // exponentials, the last one absorbing the unused slack.
  CounterRng rng(seed);
  std::vector<double> e(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    e[i] = -std::log1p(-rng.Uniform());
    total += e[i];
  }
  RealVector x(n);
  x[0] = 0.0;
  for (int i = 1; i < n; ++i) x[i] = x[i - 1] + d + std::max(0.0, w) * e[i - 1] / total;
  return Apv(std::move(x));
}

NlosSolution SolveTransmitNlos(const ChannelPaths& paths, const SystemParams& params,
                               const Apv& rx, const NlosOptions& options) {
  paths.Validate();
  if (!(paths.gains.squaredNorm() > 0.0)) {
    throw Error(ErrorCode::kInfeasible, "all path gains are zero");
  }
  const Apv x0 = options.warm_start ? *options.warm_start
                                    : UlafPositions(params.n_tx, params.aperture_tx);
  NlosSolution out;
  out.mm = MmSp1(x0, paths, params, options.mm);
  out.x = out.mm.x;
  if (out.mm.status == MmStatus::kFeasible) {
    out.branch = NlosBranch::kSp1;
  } else {
    // p2 needs P_T ||h||^2 >= Gamma sigma_C^2; fall back to the latest MM
    // iterate that still meets it.
    const Apv* start = nullptr;
    const double need = params.required_signal_power();
    for (auto it = out.mm.iterates.rbegin(); it != out.mm.iterates.rend(); ++it) {
      if (params.power_budget * ChannelGain(*it, paths) >= need) {
        start = &*it;
        break;
      }
    }
    if (start == nullptr) {
      throw Error(ErrorCode::kInfeasible, "SNR target unreachable along the MM path");
    }
    out.rgp = Rgp(*start, paths, params, options.rgp);
    out.x = out.rgp->x;
    out.branch = Sp1Feasible(P1(out.x, paths, params.target_angle), params)
                     ? NlosBranch::kSp1
                     : NlosBranch::kSp2;
  }
  const ComplexVector h = Channel(out.x, paths);
  const ComplexVector a = Steering(out.x, params.target_angle);
  out.w = OptimalBeamformer(h, a, params).w;
  out.crb = CrbSimplified(out.x, rx, out.w, params);
  return out;
}

}  // namespace maisac
