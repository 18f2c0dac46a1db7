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


#include "maisac/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "maisac/beamforming.hpp"
#include "maisac/error.hpp"
#include "maisac/receive_opt.hpp"
#include "maisac/rng.hpp"
#include "maisac/signal_model.hpp"

namespace maisac {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kDeg = kPi / 180.0;

[[noreturn]] void ConfigFail(const std::string& msg) { throw Error(ErrorCode::kConfig, msg); }

bool IsRxScheme(Scheme s) {
  return s == Scheme::kRxClosedForm || s == Scheme::kUlah || s == Scheme::kUlaf;
}

bool IsOptimized(Scheme s) { return s != Scheme::kUlah && s != Scheme::kUlaf; }

std::uint64_t TrialSeed(std::uint64_t seed, int trial, std::uint64_t salt) {
  return CounterRng::Substream(seed ^ salt, static_cast<std::uint64_t>(trial))();
}

std::vector<Scheme> DefaultSchemes(ArrayMode mode, int lt) {
  switch (mode) {
    case ArrayMode::kRx:
      return {Scheme::kRxClosedForm, Scheme::kUlaf, Scheme::kUlah};
    case ArrayMode::kTx:
      if (lt == 1) return {Scheme::kBtBfs, Scheme::kBtDfs, Scheme::kUlaf, Scheme::kUlah};
      return {Scheme::kMmRgp, Scheme::kRandomInitRgp, Scheme::kUlaf, Scheme::kUlah};
    case ArrayMode::kBoth:
      return {lt == 1 ? Scheme::kBtBfs : Scheme::kMmRgp, Scheme::kUlaf, Scheme::kUlah};
  }
  return {};
}

std::vector<double> DefaultValues(SweepAxis axis, const SystemParams& p) {
  switch (axis) {
    case SweepAxis::kGamma:
      return {0, 5, 10, 15, 20, 25, 30, 35, 40};
    case SweepAxis::kAperture:
      return {p.aperture_tx * 0.75, p.aperture_tx, p.aperture_tx * 1.25};
    case SweepAxis::kNtx:
      return {4, 8, 12, 16};
    case SweepAxis::kNrx:
      return {p.n_tx + 2.0, p.n_tx + 6.0, p.n_tx + 10.0};
  }
  return {};
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

std::string ToString(Scheme s) {
  switch (s) {
    case Scheme::kRxClosedForm: return "rx-closed-form";
    case Scheme::kBtBfs: return "bt-bfs";
    case Scheme::kBtDfs: return "bt-dfs";
    case Scheme::kMmRgp: return "mm-rgp";
    case Scheme::kUlah: return "ulah";
    case Scheme::kUlaf: return "ulaf";
    case Scheme::kRandomInitRgp: return "random-init-rgp";
  }
  return "unknown";
}

std::string ToString(ArrayMode m) {
  switch (m) {
    case ArrayMode::kRx: return "rx";
    case ArrayMode::kTx: return "tx";
    case ArrayMode::kBoth: return "both";
  }
  return "unknown";
}

std::string ToString(SweepAxis a) {
  switch (a) {
    case SweepAxis::kGamma: return "gamma";
    case SweepAxis::kAperture: return "aperture";
    case SweepAxis::kNtx: return "ntx";
    case SweepAxis::kNrx: return "nrx";
  }
  return "unknown";
}

Scheme ParseScheme(const std::string& s) {
  for (Scheme v : {Scheme::kRxClosedForm, Scheme::kBtBfs, Scheme::kBtDfs, Scheme::kMmRgp,
                   Scheme::kUlah, Scheme::kUlaf, Scheme::kRandomInitRgp}) {
    if (ToString(v) == s) return v;
  }
  ConfigFail("unknown scheme '" + s + "'");
}

ArrayMode ParseArrayMode(const std::string& s) {
  for (ArrayMode v : {ArrayMode::kRx, ArrayMode::kTx, ArrayMode::kBoth}) {
    if (ToString(v) == s) return v;
  }
  ConfigFail("unknown array mode '" + s + "'");
}

SweepAxis ParseSweepAxis(const std::string& s) {
  for (SweepAxis v : {SweepAxis::kGamma, SweepAxis::kAperture, SweepAxis::kNtx, SweepAxis::kNrx}) {
    if (ToString(v) == s) return v;
  }
  ConfigFail("unknown sweep axis '" + s + "'");
}

double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }
double DbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double LinearToDb(double lin) { return 10.0 * std::log10(lin); }

ScenarioConfig ScenarioConfig::Defaults() {
  ScenarioConfig cfg;
  cfg.params.d_min = 0.5;
  cfg.params.aperture_tx = 13.55;
  cfg.params.aperture_rx = 13.55;
  cfg.params.n_tx = 18;
  cfg.params.n_rx = 20;
  cfg.params.power_budget = DbmToWatts(20.0);
  cfg.params.noise_comm = DbmToWatts(0.0);
  cfg.params.noise_radar = DbmToWatts(0.0);
  cfg.params.snr_threshold = DbToLinear(10.0);
  cfg.params.frame_len = 30;
  cfg.params.reflect_coeff = Complex(1.0, 0.0);
  cfg.params.target_angle = 0.0;
  return cfg;
}

void ScenarioConfig::Validate() const {
  if (trials < 1) ConfigFail("trials must be >= 1");
  if (lt < 1) ConfigFail("lt must be >= 1");
  if (!(kappa >= 0.0)) ConfigFail("kappa must be non-negative");
  if (quantize_step && !(*quantize_step > 0.0)) ConfigFail("quantize step must be positive");
  if (!(beam_step_deg > 0.0)) ConfigFail("beam_step_deg must be positive");
  try {
    params.Validate();
  } catch (const Error& e) {
    ConfigFail(e.what());
  }
  const std::vector<Scheme> list = schemes.empty() ? DefaultSchemes(mode, lt) : schemes;
  for (Scheme s : list) {
    if (mode == ArrayMode::kRx && !IsRxScheme(s)) {
      ConfigFail("scheme " + ToString(s) + " is not a receive-array scheme");
    }
    if (mode != ArrayMode::kRx && s == Scheme::kRxClosedForm) {
      ConfigFail("rx-closed-form is only available in rx mode");
    }
    if ((s == Scheme::kBtBfs || s == Scheme::kBtDfs) && lt != 1) {
      ConfigFail(ToString(s) + " requires a single-path (lt = 1) channel");
    }
  }
}

ScenarioConfig ParseConfig(const std::string& json_text, ScenarioConfig cfg) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const std::exception& e) {
    ConfigFail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) ConfigFail("config must be a JSON object");
  std::optional<double> wavelength;
  bool aperture_axis_values = false;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const Json& v = it.value();
      SystemParams& p = cfg.params;
      if (k == "n_tx") p.n_tx = v.get<int>();
      else if (k == "n_rx") p.n_rx = v.get<int>();
      else if (k == "d_min") p.d_min = v.get<double>();
      else if (k == "aperture_tx") p.aperture_tx = v.get<double>();
      else if (k == "aperture_rx") p.aperture_rx = v.get<double>();
      else if (k == "pt_dbm") p.power_budget = DbmToWatts(v.get<double>());
      else if (k == "noise_dbm") p.noise_comm = p.noise_radar = DbmToWatts(v.get<double>());
      else if (k == "noise_comm_dbm") p.noise_comm = DbmToWatts(v.get<double>());
      else if (k == "noise_radar_dbm") p.noise_radar = DbmToWatts(v.get<double>());
      else if (k == "gamma_db") p.snr_threshold = DbToLinear(v.get<double>());
      else if (k == "frame_len") p.frame_len = v.get<int>();
      else if (k == "reflect_coeff") {
        if (v.is_array()) {
          if (v.size() != 2) ConfigFail("reflect_coeff must be [re, im]");
          p.reflect_coeff = Complex(v[0].get<double>(), v[1].get<double>());
        } else {
          p.reflect_coeff = Complex(v.get<double>(), 0.0);
        }
      } else if (k == "target_deg") p.target_angle = v.get<double>() * kDeg;
      else if (k == "lt") cfg.lt = v.get<int>();
      else if (k == "kappa") cfg.kappa = v.get<double>();
      else if (k == "los_aod_deg") {
        if (v.is_null()) cfg.los_aod.reset();
        else cfg.los_aod = v.get<double>() * kDeg;
      } else if (k == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (k == "trials") cfg.trials = v.get<int>();
      else if (k == "mode") cfg.mode = ParseArrayMode(v.get<std::string>());
      else if (k == "schemes") {
        cfg.schemes.clear();
        for (const auto& s : v) cfg.schemes.push_back(ParseScheme(s.get<std::string>()));
      } else if (k == "axis") cfg.axis = ParseSweepAxis(v.get<std::string>());
      else if (k == "values") {
        cfg.values = v.get<std::vector<double>>();
        aperture_axis_values = true;
      } else if (k == "quantize") {
        if (v.is_null()) cfg.quantize_step.reset();
        else cfg.quantize_step = v.get<double>();
      } else if (k == "threads") cfg.threads = v.get<int>();
      else if (k == "wavelength") wavelength = v.get<double>();
      else if (k == "beam_step_deg") cfg.beam_step_deg = v.get<double>();
      else if (k == "mm_eps") cfg.mm.eps = v.get<double>();
      else if (k == "mm_max_iters") cfg.mm.max_iters = v.get<int>();
      else if (k == "rgp_eps") cfg.rgp.eps = v.get<double>();
      else if (k == "rgp_max_iters") cfg.rgp.max_iters = v.get<int>();
      else if (k == "armijo_sigma") cfg.rgp.armijo_sigma = v.get<double>();
      else if (k == "armijo_beta") cfg.rgp.armijo_beta = v.get<double>();
      else if (k == "armijo_initial_step") cfg.rgp.initial_step = v.get<double>();
      else if (k == "armijo_max_backtracks") cfg.rgp.max_backtracks = v.get<int>();
      else if (k == "bfs_extra_layers") cfg.bfs.extra_layers = v.get<int>();
      else ConfigFail("unknown config key '" + k + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    ConfigFail(std::string("bad config value: ") + e.what());
  }
  if (wavelength) {
    if (!(*wavelength > 0.0)) ConfigFail("wavelength must be positive");
    const double lam = *wavelength;
    cfg.params.d_min /= lam;
    cfg.params.aperture_tx /= lam;
    cfg.params.aperture_rx /= lam;
    if (cfg.quantize_step) *cfg.quantize_step /= lam;
    if (aperture_axis_values && cfg.axis == SweepAxis::kAperture) {
      for (double& v : cfg.values) v /= lam;
    }
  }
  return cfg;
}

std::string ConfigToJson(const ScenarioConfig& cfg) {
  const SystemParams& p = cfg.params;
  Json j;
  j["n_tx"] = p.n_tx;
  j["n_rx"] = p.n_rx;
  j["d_min"] = p.d_min;
  j["aperture_tx"] = p.aperture_tx;
  j["aperture_rx"] = p.aperture_rx;
  j["pt_dbm"] = 10.0 * std::log10(p.power_budget) + 30.0;
  j["noise_comm_dbm"] = 10.0 * std::log10(p.noise_comm) + 30.0;
  j["noise_radar_dbm"] = 10.0 * std::log10(p.noise_radar) + 30.0;
  j["gamma_db"] = p.snr_threshold > 0.0 ? LinearToDb(p.snr_threshold)
                                        : -std::numeric_limits<double>::infinity();
  j["frame_len"] = p.frame_len;
  j["reflect_coeff"] = {p.reflect_coeff.real(), p.reflect_coeff.imag()};
  j["target_deg"] = p.target_angle / kDeg;
  j["lt"] = cfg.lt;
  j["kappa"] = cfg.kappa;
  if (cfg.los_aod) j["los_aod_deg"] = *cfg.los_aod / kDeg;
  else j["los_aod_deg"] = nullptr;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["mode"] = ToString(cfg.mode);
  Json schemes = Json::array();
  for (Scheme s : cfg.schemes.empty() ? DefaultSchemes(cfg.mode, cfg.lt) : cfg.schemes) {
    schemes.push_back(ToString(s));
  }
  j["schemes"] = schemes;
  j["axis"] = ToString(cfg.axis);
  j["values"] = cfg.values.empty() ? DefaultValues(cfg.axis, p) : cfg.values;
  if (cfg.quantize_step) j["quantize"] = *cfg.quantize_step;
  else j["quantize"] = nullptr;
  j["mm_eps"] = cfg.mm.eps;
  j["mm_max_iters"] = cfg.mm.max_iters;
  j["rgp_eps"] = cfg.rgp.eps;
  j["rgp_max_iters"] = cfg.rgp.max_iters;
  j["armijo_sigma"] = cfg.rgp.armijo_sigma;
  j["armijo_beta"] = cfg.rgp.armijo_beta;
  j["armijo_initial_step"] = cfg.rgp.initial_step;
  j["armijo_max_backtracks"] = cfg.rgp.max_backtracks;
  j["bfs_extra_layers"] = cfg.bfs.extra_layers;
  j["beam_step_deg"] = cfg.beam_step_deg;
  // The -inf gamma of a zero threshold is not valid JSON; dump() emits null.
  return j.dump();
}

ChannelPaths GenerateChannel(const ScenarioConfig& cfg, int trial_index) {
  CounterRng rng = CounterRng::Substream(cfg.seed, static_cast<std::uint64_t>(trial_index));
  std::normal_distribution<double> normal(0.0, 1.0);
  const int lt = cfg.lt;
  ComplexVector gains(lt);
  RealVector aods(lt);
  const double los_var = cfg.kappa / (cfg.kappa + 1.0);
  const double nlos_var = lt > 1 ? 1.0 / ((cfg.kappa + 1.0) * (lt - 1)) : 0.0;
  for (int p = 0; p < lt; ++p) {
    const double sd = std::sqrt((p == 0 ? los_var : nlos_var) / 2.0);
    const double re = normal(rng);
    const double im = normal(rng);
    gains[p] = Complex(sd * re, sd * im);
  }
  for (int p = 0; p < lt; ++p) aods[p] = -kPi / 2.0 + kPi * rng.Uniform();
  if (cfg.los_aod) aods[0] = *cfg.los_aod;
  return ChannelPaths(std::move(gains), std::move(aods));
}

Apv QuantizeApv(const Apv& x, double step, double d, double aperture) {
  if (!(step > 0.0)) throw Error(ErrorCode::kConfig, "quantization step must be positive");
  const Eigen::Index n = x.positions().size();
  const long min_gap = static_cast<long>(std::ceil(d / step - 1e-9));
  const long max_span = static_cast<long>(std::floor(aperture / step + 1e-9));
  if (min_gap * (n - 1) > max_span) {
    throw Error(ErrorCode::kRepairFailed, "no lattice array fits the aperture");
  }
  std::vector<long> k(n);
  for (Eigen::Index i = 0; i < n; ++i) k[i] = std::lround(x.positions()[i] / step);
  for (Eigen::Index i = 1; i < n; ++i) k[i] = std::max(k[i], k[i - 1] + min_gap);
  if (k[n - 1] - k[0] > max_span) {
    k[n - 1] = k[0] + max_span;
    for (Eigen::Index i = n - 2; i >= 1; --i) k[i] = std::min(k[i], k[i + 1] - min_gap);
    if (n >= 2 && k[1] - k[0] < min_gap) {
      throw Error(ErrorCode::kRepairFailed, "repair sweep could not restore spacing");
    }
  }
  RealVector q(n);
  for (Eigen::Index i = 0; i < n; ++i) q[i] = static_cast<double>(k[i]) * step;
  return Apv(std::move(q));
}

SchemeOutcome EvaluateScheme(const ScenarioConfig& cfg, const ChannelPaths& paths,
                             Scheme scheme, int trial_index) {
  const SystemParams& p = cfg.params;
  const double theta = p.target_angle;
  SchemeOutcome out;
  out.scheme = scheme;
  try {
    const Apv ulah_rx = UlahPositions(p.n_rx, p.d_min);
    const Apv ulah_tx = UlahPositions(p.n_tx, p.d_min);
    auto maybe_quantize = [&](const Apv& a, double aperture) {
      return cfg.quantize_step ? QuantizeApv(a, *cfg.quantize_step, p.d_min, aperture) : a;
    };
    const Apv ma_rx =
        maybe_quantize(TwoClusterPositions(p.n_rx, p.d_min, p.aperture_rx), p.aperture_rx);

    switch (cfg.mode) {
      case ArrayMode::kRx:
        out.tx = ulah_tx;
        out.rx = scheme == Scheme::kRxClosedForm ? ma_rx
                 : scheme == Scheme::kUlaf       ? UlafPositions(p.n_rx, p.aperture_rx)
                                                 : ulah_rx;
        break;
      case ArrayMode::kTx:
        out.rx = ulah_rx;
        break;
      case ArrayMode::kBoth:
        out.rx = scheme == Scheme::kUlah   ? ulah_rx
                 : scheme == Scheme::kUlaf ? UlafPositions(p.n_rx, p.aperture_rx)
                                           : ma_rx;
        break;
    }

    if (cfg.mode != ArrayMode::kRx) {
      switch (scheme) {
        case Scheme::kUlah:
          out.tx = ulah_tx;
          break;
        case Scheme::kUlaf:
          out.tx = UlafPositions(p.n_tx, p.aperture_tx);
          break;
        case Scheme::kBtBfs:
          out.tx = BtBfs(p, paths.aods[0], theta, cfg.bfs).apv;
          break;
        case Scheme::kBtDfs:
          out.tx = BtDfs(p, paths.aods[0], theta, TrialSeed(cfg.seed, trial_index, 0xD5)).apv;
          break;
        case Scheme::kMmRgp: {
          NlosOptions opts;
          opts.mm = cfg.mm;
          opts.rgp = cfg.rgp;
          out.tx = SolveTransmitNlos(paths, p, out.rx, opts).x;
          break;
        }
        case Scheme::kRandomInitRgp: {
          const Apv x1 = RandomFeasibleApv(p.n_tx, p.d_min, p.aperture_tx,
                                           TrialSeed(cfg.seed, trial_index, 0x5A));
          out.tx = Rgp(x1, paths, p, cfg.rgp).x;
          break;
        }
        case Scheme::kRxClosedForm:
          ConfigFail("rx-closed-form is only available in rx mode");
      }
      if (IsOptimized(scheme)) out.tx = maybe_quantize(out.tx, p.aperture_tx);
    }

    const ComplexVector h = Channel(out.tx, paths);
    const ComplexVector a = Steering(out.tx, theta);
    out.w = OptimalBeamformer(h, a, p).w;
    out.crb = CrbSimplified(out.tx, out.rx, out.w, p);
    out.snr = UserSnr(h, out.w, p.noise_comm);
    out.objective = cfg.mode == ArrayMode::kRx ? SpreadMetric(out.rx) : std::abs(h.dot(a));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    out.status = std::string(ToString(e.code()));
    out.crb = CrbValue{std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN()};
    out.snr = std::numeric_limits<double>::quiet_NaN();
    out.objective = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

ScenarioConfig AtSweepValue(const ScenarioConfig& cfg, double value) {
  ScenarioConfig c = cfg;
  switch (cfg.axis) {
    case SweepAxis::kGamma:
      c.params.snr_threshold = DbToLinear(value);
      break;
    case SweepAxis::kAperture:
      if (cfg.mode != ArrayMode::kTx) c.params.aperture_rx = value;
      if (cfg.mode != ArrayMode::kRx) c.params.aperture_tx = value;
      break;
    case SweepAxis::kNtx:
      c.params.n_tx = static_cast<int>(std::lround(value));
      break;
    case SweepAxis::kNrx:
      c.params.n_rx = static_cast<int>(std::lround(value));
      break;
  }
  return c;
}

std::vector<SweepRow> RunSweep(const ScenarioConfig& cfg) {
  cfg.Validate();
  const std::vector<Scheme> schemes =
      cfg.schemes.empty() ? DefaultSchemes(cfg.mode, cfg.lt) : cfg.schemes;
  const std::vector<double> values =
      cfg.values.empty() ? DefaultValues(cfg.axis, cfg.params) : cfg.values;
  const std::string axis = ToString(cfg.axis);

  std::vector<SweepRow> rows;
  std::vector<SweepRow> means;
  for (double value : values) {
    const ScenarioConfig cv = AtSweepValue(cfg, value);
    cv.Validate();
    std::vector<std::vector<SweepRow>> per_trial(cv.trials);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&]() {
      for (int t = next++; t < cv.trials; t = next++) {
        try {
          const ChannelPaths paths = GenerateChannel(cv, t);
          for (Scheme s : schemes) {
            const SchemeOutcome o = EvaluateScheme(cv, paths, s, t);
            SweepRow r;
            r.axis = axis;
            r.value = value;
            r.trial = t;
            r.scheme = ToString(s);
            r.root_crb_rad = o.crb.root_crb;
            r.root_crb_deg = o.crb.root_crb / kDeg;
            r.achieved_snr_db = LinearToDb(o.snr);
            r.objective = o.objective;
            r.status = o.status;
            r.seed = cv.seed;
            per_trial[t].push_back(r);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    int threads = cv.threads > 0 ? cv.threads
                                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, cv.trials);
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    for (const auto& tr : per_trial) rows.insert(rows.end(), tr.begin(), tr.end());
    for (std::size_t si = 0; si < schemes.size(); ++si) {
      SweepRow m;
      m.axis = axis;
      m.value = value;
      m.trial = -1;
      m.scheme = ToString(schemes[si]);
      m.seed = cv.seed;
      int ok = 0;
      double crb = 0.0;
      double snr = 0.0;
      double obj = 0.0;
      for (const auto& tr : per_trial) {
        const SweepRow& r = tr[si];
        if (r.status != "ok") continue;
        ++ok;
        crb += r.root_crb_rad;
        snr += r.achieved_snr_db;
        obj += r.objective;
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      m.root_crb_rad = ok ? crb / ok : nan;
      m.root_crb_deg = m.root_crb_rad / kDeg;
      m.achieved_snr_db = ok ? snr / ok : nan;
      m.objective = ok ? obj / ok : nan;
      m.status = ok == cv.trials ? "ok"
                                 : std::to_string(ok) + "/" + std::to_string(cv.trials) + " ok";
      means.push_back(m);
    }
  }
  rows.insert(rows.end(), means.begin(), means.end());
  return rows;
}

void WriteSweepCsv(std::ostream& os, const ScenarioConfig& cfg,
                   const std::vector<SweepRow>& rows) {
  os << "# config: " << ConfigToJson(cfg) << "\n";
  os << "axis,value,trial,scheme,root_crb_rad,root_crb_deg,achieved_snr_db,objective,status,seed\n";
  for (const SweepRow& r : rows) {
    os << r.axis << ',' << FormatDouble(r.value) << ','
       << (r.trial < 0 ? std::string("mean") : std::to_string(r.trial)) << ',' << r.scheme
       << ',' << FormatDouble(r.root_crb_rad) << ',' << FormatDouble(r.root_crb_deg) << ','
       << FormatDouble(r.achieved_snr_db) << ',' << FormatDouble(r.objective) << ','
       << r.status << ',' << r.seed << "\n";
  }
}

std::vector<BeamRow> RunBeampattern(const ScenarioConfig& cfg) {
  cfg.Validate();
  const std::vector<Scheme> schemes =
      cfg.schemes.empty() ? DefaultSchemes(cfg.mode, cfg.lt) : cfg.schemes;
  const ChannelPaths paths = GenerateChannel(cfg, 0);
  std::vector<double> grid;
  const int steps = static_cast<int>(std::floor(180.0 / cfg.beam_step_deg + 1e-9));
  for (int i = 0; i <= steps; ++i) grid.push_back((-90.0 + i * cfg.beam_step_deg) * kDeg);
  std::vector<BeamRow> rows;
  for (Scheme s : schemes) {
    const SchemeOutcome o = EvaluateScheme(cfg, paths, s, 0);
    if (o.status != "ok") {
      throw Error(ErrorCode::kInfeasible, ToString(s) + ": " + o.status);
    }
    const std::vector<double> power = Beampattern(o.tx, o.w, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      rows.push_back(BeamRow{grid[i] / kDeg, ToString(s), power[i]});
    }
  }
  return rows;
}

void WriteBeamCsv(std::ostream& os, const ScenarioConfig& cfg,
                  const std::vector<BeamRow>& rows) {
  os << "# config: " << ConfigToJson(cfg) << "\n";
  os << "angle_deg,scheme,power\n";
  for (const BeamRow& r : rows) {
    os << FormatDouble(r.angle_deg) << ',' << r.scheme << ',' << FormatDouble(r.power) << "\n";
  }
}

}  // namespace maisac
