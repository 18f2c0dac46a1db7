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


#include "maisac/transmit_los.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "maisac/error.hpp"
#include "maisac/receive_opt.hpp"
#include "maisac/rng.hpp"

namespace maisac {
namespace {

constexpr double kCoeffFloor = 1e-12;
constexpr double kCeilTieEps = 1e-12;

double SpatialFreq(double aod, double theta) {
  return std::abs(std::sin(aod) + std::sin(theta));
}

bool Fits(double d_min, double aperture) {
  return d_min <= aperture + 1e-12 * std::max(1.0, aperture);
}

struct Face {
  ReducedProblem reduced;
  std::vector<long> k;
  double d_min = 0.0;
  double value = 0.0;
};

// nullopt when the face is degenerate.
std::optional<Face> EvaluateFace(const ActiveSet& active, const SystemParams& params,
                                 double aod, double theta) {
  Face face;
  try {
    face.reduced = Reduce(active, params, aod, theta);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDegenerateCoefficient) return std::nullopt;
    throw;
  }
  face.k = MinK(face.reduced);
  face.d_min = DMin(face.reduced, face.k);
  for (const Complex& r : face.reduced.r) face.value += std::abs(r);
  return face;
}

LosSolution Materialize(const Face& face, const ActiveSet& active, int layer,
                        LosStatus status) {
  LosSolution out;
  out.apv = ExpandPositions(AlignedPositions(face.reduced, face.k), face.reduced);
  out.objective = face.value;
  out.active_set = active;
  out.d_min_used = face.d_min;
  out.layer = layer;
  out.status = status;
  return out;
}

LosSolution Ulah(const SystemParams& params, double aod, double theta, LosStatus status) {
  LosSolution out;
  out.apv = UlahPositions(params.n_tx, params.d_min);
  out.objective = GObjective(out.apv, aod, theta);
  out.d_min_used = (params.n_tx - 1) * params.d_min;
  out.layer = params.n_tx;
  out.status = status;
  return out;
}

// Advances `idx` to the next size-c subset of 1..n in lexicographic order.
bool NextCombination(std::vector<int>& idx, int n) {
  const int c = static_cast<int>(idx.size());
  for (int i = c - 1; i >= 0; --i) {
    if (idx[i] < n - (c - 1 - i)) {
      ++idx[i];
      for (int j = i + 1; j < c; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::optional<LosSolution> Shortcut(const SystemParams& params, double aod, double theta) {
  if (SpatialFreq(aod, theta) == 0.0) {
    return Ulah(params, aod, theta, LosStatus::kZeroFrequency);
  }
  const ActiveSet none;
  if (auto face = EvaluateFace(none, params, aod, theta);
      face && Fits(face->d_min, params.aperture_tx)) {
    return Materialize(*face, none, 0, LosStatus::kAligned);
  }
  return std::nullopt;
}

}  // namespace

bool ActiveSet::Contains(int idx) const {
  return std::binary_search(indices.begin(), indices.end(), idx);
}

void ActiveSet::Validate(int n) const {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1 || indices[i] > n || (i > 0 && indices[i] <= indices[i - 1])) {
      throw Error(ErrorCode::kInvalidGeometry, "active set must be increasing in 1..N_t");
    }
  }
  if (size() > n - 1) {
    throw Error(ErrorCode::kInvalidGeometry, "active set may hold at most N_t - 1 indices");
  }
}

double GObjective(const Apv& x, double aod, double theta) {
  const double w = kTwoPi * (std::sin(aod) + std::sin(theta));
  Complex sum(0.0, 0.0);
  for (Eigen::Index i = 0; i < x.positions().size(); ++i) {
    sum += std::polar(1.0, -w * x.positions()[i]);
  }
  return std::abs(sum);
}

ReducedProblem Reduce(const ActiveSet& active, const SystemParams& params, double aod,
                      double theta) {
  const int n = params.n_tx;
  active.Validate(n);
  ReducedProblem red;
  red.n_tx = n;
  red.freq = SpatialFreq(aod, theta);
  red.d = params.d_min;
  red.aperture = params.aperture_tx;
  const double w = kTwoPi * red.freq;
  const double d = red.d;

  // Antennas 0..last_free (0-based) are organized in forward blocks.
  int last_free = n - 1;
  if (active.IsCaseTwo(n)) {
    red.kase = LosCase::kII;
    int l = n - 1;  // 1-based: constraints l+1..n are active
    while (l >= 1 && active.Contains(l)) --l;
    red.l_split = l;
    red.tail_count = n - l;
    last_free = l - 1;
  }

  int i = 0;
  while (i <= last_free) {
    int len = 1;
    // Constraint (i + len) (1-based) links antenna i+len-1 to i+len.
    while (i + len <= last_free && active.Contains(i + len)) ++len;
    Complex r(0.0, 0.0);
    for (int p = 0; p < len; ++p) r += std::polar(1.0, -w * p * d);
    red.block_start.push_back(i);
    red.block_len.push_back(len);
    red.n.push_back(len - 1);
    red.r.push_back(r);
    i += len;
  }
  if (red.kase == LosCase::kII) {
    for (int p = 0; p < red.tail_count; ++p) {
      red.r[0] += std::polar(1.0, w * (p * d - red.aperture));
    }
    red.n[0] += red.tail_count;
  }
  for (const Complex& r : red.r) {
    if (std::abs(r) < kCoeffFloor) {
      throw Error(ErrorCode::kDegenerateCoefficient, "effective coefficient vanishes");
    }
  }
  return red;
}

std::vector<long> MinK(const ReducedProblem& reduced) {
  if (!(reduced.freq > 0.0)) {
    throw Error(ErrorCode::kDegenerateCoefficient, "zero spatial frequency");
  }
  std::vector<long> k;
  for (int i = 0; i + 1 < reduced.num_free(); ++i) {
    const double dphase = (std::arg(reduced.r[i + 1]) - std::arg(reduced.r[i])) / kTwoPi;
    const double arg = reduced.freq * reduced.block_len[i] * reduced.d - dphase;
    k.push_back(static_cast<long>(std::ceil(arg - kCeilTieEps)));
  }
  return k;
}

std::vector<double> AlignedGaps(const ReducedProblem& reduced, const std::vector<long>& k) {
  std::vector<double> gaps;
  for (int i = 0; i + 1 < reduced.num_free(); ++i) {
    const double dphase = (std::arg(reduced.r[i + 1]) - std::arg(reduced.r[i])) / kTwoPi;
    gaps.push_back((static_cast<double>(k[i]) + dphase) / reduced.freq);
  }
  return gaps;
}

double DMin(const ReducedProblem& reduced, const std::vector<long>& k) {
  double total = 0.0;
  for (double g : AlignedGaps(reduced, k)) total += g;
  const int last_len = reduced.block_len.back();
  if (reduced.kase == LosCase::kI) {
    return total + (last_len - 1) * reduced.d;
  }
  // Last free block, one mandatory gap, then the pinned tail.
  return total + last_len * reduced.d + (reduced.tail_count - 1) * reduced.d;
}

RealVector AlignedPositions(const ReducedProblem& reduced, const std::vector<long>& k) {
  const double dm = DMin(reduced, k);
  if (!Fits(dm, reduced.aperture)) {
    throw Error(ErrorCode::kApertureTooSmall, "aperture below D_min of this face");
  }
  RealVector x(reduced.num_free());
  x[0] = 0.0;
  const std::vector<double> gaps = AlignedGaps(reduced, k);
  for (int i = 0; i + 1 < reduced.num_free(); ++i) x[i + 1] = x[i] + gaps[i];
  return x;
}

Apv ExpandPositions(const RealVector& x_reduced, const ReducedProblem& reduced) {
  RealVector x(reduced.n_tx);
  for (int b = 0; b < reduced.num_free(); ++b) {
    for (int p = 0; p < reduced.block_len[b]; ++p) {
      x[reduced.block_start[b] + p] = x_reduced[b] + p * reduced.d;
    }
  }
  if (reduced.kase == LosCase::kII) {
    for (int p = 0; p < reduced.tail_count; ++p) {
      x[reduced.n_tx - 1 - p] = x_reduced[0] + reduced.aperture - p * reduced.d;
    }
  }
  return Apv(std::move(x));
}

double ReducedObjective(const ReducedProblem& reduced, const RealVector& x_reduced) {
  const double w = kTwoPi * reduced.freq;
  Complex s(0.0, 0.0);
  for (int i = 0; i < reduced.num_free(); ++i) {
    s += reduced.r[i] * std::polar(1.0, -w * x_reduced[i]);
  }
  return std::abs(s);
}

namespace {

void PhasorTerms(const ReducedProblem& reduced, const RealVector& x, Complex& s,
                 std::vector<Complex>& t) {
  const double w = kTwoPi * reduced.freq;
  s = Complex(0.0, 0.0);
  t.assign(reduced.num_free(), Complex(0.0, 0.0));
  for (int i = 0; i < reduced.num_free(); ++i) {
    const Complex term = reduced.r[i] * std::polar(1.0, -w * x[i]);
    s += term;
    t[i] = Complex(0.0, -w) * term;  // d term / d x_i
  }
}

}  // namespace

RealVector ReducedGradientSq(const ReducedProblem& reduced, const RealVector& x_reduced) {
  Complex s;
  std::vector<Complex> t;
  PhasorTerms(reduced, x_reduced, s, t);
  RealVector g(reduced.num_free());
  for (int i = 0; i < reduced.num_free(); ++i) g[i] = 2.0 * std::real(std::conj(s) * t[i]);
  return g;
}

RealMatrix ReducedHessianSq(const ReducedProblem& reduced, const RealVector& x_reduced) {
  Complex s;
  std::vector<Complex> t;
  PhasorTerms(reduced, x_reduced, s, t);
  const double w = kTwoPi * reduced.freq;
  const int m = reduced.num_free();
  RealMatrix hess(m, m);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      hess(i, k) = 2.0 * std::real(std::conj(t[k]) * t[i]);
    }
    hess(i, i) += 2.0 * std::real(std::conj(s) * Complex(0.0, -w) * t[i]);
  }
  return hess;
}

RealMatrix ActiveRows(const ActiveSet& active, int n) {
  RealMatrix m = RealMatrix::Zero(active.size(), n);
  for (int r = 0; r < active.size(); ++r) {
    const int idx = active.indices[r];
    if (idx < n) {
      m(r, idx - 1) = 1.0;
      m(r, idx) = -1.0;
    } else {
      m(r, 0) = -1.0;
      m(r, n - 1) = 1.0;
    }
  }
  return m;
}

LosSolution BtBfs(const SystemParams& params, double aod, double theta,
                  const BfsOptions& options) {
  params.Validate();
  if (auto s = Shortcut(params, aod, theta)) return *s;

  const int n = params.n_tx;
  std::optional<Face> best;
  ActiveSet best_set;
  int best_layer = 0;
  std::size_t evaluations = 0;
  std::vector<ActiveSet> skipped;
  int remaining = -1;  // layers left once a feasible face was found

  for (int c = 1; c <= n - 1; ++c) {
    std::vector<int> idx(c);
    for (int i = 0; i < c; ++i) idx[i] = i + 1;
    do {
      ActiveSet set{idx};
      ++evaluations;
      auto face = EvaluateFace(set, params, aod, theta);
      if (!face) {
        skipped.push_back(set);
        continue;
      }
      if (Fits(face->d_min, params.aperture_tx) && (!best || face->value > best->value)) {
        best = std::move(face);
        best_set = set;
        best_layer = c;
      }
    } while (NextCombination(idx, n));

    if (remaining > 0) {
      if (--remaining == 0) break;
    } else if (remaining < 0 && best) {
      if (options.extra_layers == 0) break;
      remaining = options.extra_layers;  // negative extra_layers: never stop
      if (remaining < 0) remaining = n;
    }
  }

  LosSolution out;
  if (!best) {
    out = Ulah(params, aod, theta, LosStatus::kFallbackUlah);
  } else {
    out = Materialize(*best, best_set, best_layer, LosStatus::kBoundary);
  }
  out.evaluations = evaluations;
  out.skipped = std::move(skipped);
  return out;
}

std::vector<int> DfsOrder(int n, std::uint64_t seed) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  CounterRng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

LosSolution BtDfs(const SystemParams& params, double aod, double theta,
                  std::uint64_t order_seed) {
  params.Validate();
  if (auto s = Shortcut(params, aod, theta)) {
    s->seed = order_seed;
    return *s;
  }
  const int n = params.n_tx;
  const std::vector<int> order = DfsOrder(n, order_seed);
  ActiveSet set;
  std::size_t evaluations = 0;
  std::vector<ActiveSet> skipped;
  for (int c = 1; c <= n - 1; ++c) {
    set.indices.insert(std::upper_bound(set.indices.begin(), set.indices.end(), order[c - 1]),
                       order[c - 1]);
    ++evaluations;
    auto face = EvaluateFace(set, params, aod, theta);
    if (!face) {
      skipped.push_back(set);
      continue;
    }
    if (Fits(face->d_min, params.aperture_tx)) {
      LosSolution out = Materialize(*face, set, c, LosStatus::kBoundary);
      out.evaluations = evaluations;
      out.skipped = std::move(skipped);
      out.seed = order_seed;
      return out;
    }
  }
  LosSolution out = Ulah(params, aod, theta, LosStatus::kFallbackUlah);
  out.evaluations = evaluations;
  out.skipped = std::move(skipped);
  out.seed = order_seed;
  return out;
}

}  // namespace maisac
