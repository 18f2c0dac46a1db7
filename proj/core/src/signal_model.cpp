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


#include "maisac/signal_model.hpp"

#include <cmath>

#include "maisac/error.hpp"

namespace maisac {
namespace {

constexpr double kDegenerateFloor = 1e-18;

ComplexVector PhaseVector(const RealVector& x, double spatial_freq) {
  ComplexVector v(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    v[i] = std::polar(1.0, -kTwoPi * x[i] * spatial_freq);
  }
  return v;
}

double FisherScale(const SystemParams& p) {
  return 2.0 * std::norm(p.reflect_coeff) * p.frame_len;
}

}  // namespace

ComplexVector Steering(const Apv& apv, double angle) {
  return PhaseVector(apv.positions(), std::sin(angle));
}

ComplexVector SteeringDerivative(const Apv& apv, double angle) {
  const ComplexVector a = Steering(apv, angle);
  const double c = kTwoPi * std::cos(angle);
  ComplexVector da(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    da[i] = Complex(0.0, -c * apv.positions()[i]) * a[i];
  }
  return da;
}

ComplexMatrix FieldResponse(const Apv& apv, const ChannelPaths& paths) {
  paths.Validate();
  ComplexMatrix g(paths.num_paths(), static_cast<Eigen::Index>(apv.size()));
  for (Eigen::Index k = 0; k < paths.num_paths(); ++k) {
    g.row(k) = PhaseVector(apv.positions(), std::sin(paths.aods[k])).transpose();
  }
  return g;
}

ComplexVector Channel(const Apv& apv, const ChannelPaths& paths) {
  // h^H = sigma^H G  =>  h = G^H sigma.
  return FieldResponse(apv, paths).adjoint() * paths.gains;
}

double UserSnr(const ComplexVector& h, const BeamVector& w, double noise_comm) {
  return std::norm(h.dot(w.weights)) / noise_comm;
}

double SpreadMetric(const Apv& y) {
  const RealVector& v = y.positions();
  const double n = static_cast<double>(v.size());
  const double s1 = v.sum();
  return v.squaredNorm() - s1 * s1 / n;
}

CrbValue CrbGeneral(const Apv& x, const Apv& y, const BeamVector& w,
                    const SystemParams& params) {
  const ComplexVector a = Steering(x, params.target_angle);
  const ComplexVector da = SteeringDerivative(x, params.target_angle);
  const Complex g = a.dot(w.weights);    // a^H w
  const Complex gd = da.dot(w.weights);  // da^H w
  const Complex u = g * std::conj(gd);
  const double c = kTwoPi * std::cos(params.target_angle);
  const double nr = static_cast<double>(y.size());
  const double s1 = y.positions().sum();
  const double s2 = y.positions().squaredNorm();
  const double g2 = std::norm(g);

  const double t1 = nr * g2;
  const Complex t2 = Complex(0.0, c * g2 * s1) + nr * u;
  const double t3 = c * c * g2 * s2 + 2.0 * c * s1 * u.imag() + nr * std::norm(gd);

  const double scale = nr * a.squaredNorm() * w.weights.squaredNorm();
  if (!(t1 > kDegenerateFloor * scale)) {
    throw Error(ErrorCode::kDegenerateGeometry, "no power toward the target");
  }
  const double denom = t3 * t1 - std::norm(t2);
  if (!(denom > kDegenerateFloor * t1 * t3)) {
    throw Error(ErrorCode::kDegenerateGeometry, "angle not identifiable");
  }
  return CrbValue::FromCrb(params.noise_radar * t1 / (FisherScale(params) * denom));
}

CrbValue CrbSimplified(const Apv& x, const Apv& y, const BeamVector& w,
                       const SystemParams& params) {
  const ComplexVector a = Steering(x, params.target_angle);
  const double g2 = std::norm(a.dot(w.weights));
  if (!(g2 > kDegenerateFloor * a.squaredNorm() * w.weights.squaredNorm())) {
    throw Error(ErrorCode::kDegenerateGeometry, "no power toward the target");
  }
  const double f = SpreadMetric(y);
  if (!(f > kDegenerateFloor * y.positions().squaredNorm())) {
    throw Error(ErrorCode::kDegenerateGeometry, "receive spread is zero");
  }
  const double c = kTwoPi * std::cos(params.target_angle);
  return CrbValue::FromCrb(params.noise_radar / FisherScale(params) /
                           (c * c * g2 * f));
}

CrbValue CrbMinimum(const Apv& y, const SystemParams& params) {
  const double f = SpreadMetric(y);
  if (!(f > kDegenerateFloor * y.positions().squaredNorm())) {
    throw Error(ErrorCode::kDegenerateGeometry, "receive spread is zero");
  }
  const double c = kTwoPi * std::cos(params.target_angle);
  const double g2 = params.n_tx * params.power_budget;
  return CrbValue::FromCrb(params.noise_radar / FisherScale(params) /
                           (c * c * g2 * f));
}

std::vector<double> Beampattern(const Apv& apv, const BeamVector& w,
                                std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double phi : grid) {
    out.push_back(std::norm(Steering(apv, phi).dot(w.weights)));
  }
  return out;
}

}  // namespace maisac
