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


// maisac: command-line front end for the movable-antenna ISAC library.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maisac/beamforming.hpp"
#include "maisac/chain_qp.hpp"
#include "maisac/error.hpp"
#include "maisac/harness.hpp"
#include "maisac/oracle.hpp"
#include "maisac/receive_opt.hpp"
#include "maisac/signal_model.hpp"
#include "maisac/transmit_los.hpp"
#include "maisac/transmit_nlos.hpp"

namespace {

using namespace maisac;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitOracle = 4;
constexpr double kDeg = kPi / 180.0;

// Flags shared by every subcommand; unset values leave the config untouched.
struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
  std::string out;
  std::optional<double> quantize;
  std::optional<int> ntx, nrx, lt;
  std::optional<double> gamma_db, aperture_tx, aperture_rx, pt_dbm, noise_dbm;
  std::optional<double> kappa, los_aod_deg, target_deg, dmin, wavelength;
  std::string schemes;
  std::string arrays;

  void Register(CLI::App* app) {
    app->add_option("--config", config_path, "JSON scenario file")->check(CLI::ExistingFile);
    app->add_option("--seed", seed, "64-bit RNG seed");
    app->add_option("--trials", trials, "Monte Carlo trials");
    app->add_option("--threads", threads, "worker threads (0 = all cores)");
    app->add_option("--out", out, "output CSV path (default stdout)");
    app->add_option("--quantize", quantize, "grid step for optimized arrays");
    app->add_option("--ntx", ntx, "transmit antennas N_t");
    app->add_option("--nrx", nrx, "receive antennas N_r");
    app->add_option("--lt", lt, "transmit paths L_t");
    app->add_option("--gamma-db", gamma_db, "SNR threshold in dB");
    app->add_option("--aperture-tx", aperture_tx, "transmit aperture D_x");
    app->add_option("--aperture-rx", aperture_rx, "receive aperture D_y");
    app->add_option("--pt-dbm", pt_dbm, "power budget in dBm");
    app->add_option("--noise-dbm", noise_dbm, "noise power (both links) in dBm");
    app->add_option("--kappa", kappa, "Rician factor (linear)");
    app->add_option("--los-aod-deg", los_aod_deg, "fixed departure angle of the first path");
    app->add_option("--target-deg", target_deg, "target angle theta in degrees");
    app->add_option("--dmin", dmin, "minimum antenna spacing d");
    app->add_option("--wavelength", wavelength,
                    "carrier wavelength in metres; lengths are then read in metres");
    app->add_option("--schemes", schemes, "comma-separated scheme list");
    app->add_option("--arrays", arrays, "movable arrays: rx, tx or both");
  }

  ScenarioConfig Resolve() const {
    Json j = Json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        j = Json::parse(buf.str());
      } catch (const std::exception& e) {
        throw Error(ErrorCode::kConfig, std::string("cannot parse config: ") + e.what());
      }
      if (!j.is_object()) throw Error(ErrorCode::kConfig, "config must be a JSON object");
    }
    auto set = [&](const char* key, const auto& v) {
      if (v) j[key] = *v;
    };
    set("seed", seed);
    set("trials", trials);
    set("threads", threads);
    set("quantize", quantize);
    set("n_tx", ntx);
    set("n_rx", nrx);
    set("lt", lt);
    set("gamma_db", gamma_db);
    set("aperture_tx", aperture_tx);
    set("aperture_rx", aperture_rx);
    set("pt_dbm", pt_dbm);
    set("noise_dbm", noise_dbm);
    set("kappa", kappa);
    set("los_aod_deg", los_aod_deg);
    set("target_deg", target_deg);
    set("d_min", dmin);
    set("wavelength", wavelength);
    if (!arrays.empty()) j["mode"] = arrays;
    if (!schemes.empty()) j["schemes"] = Split(schemes);
    ScenarioConfig cfg = ParseConfig(j.dump());
    cfg.Validate();
    return cfg;
  }

  static std::vector<std::string> Split(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) parts.push_back(item);
    }
    return parts;
  }
};

std::string Positions(const Apv& x) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << "]";
  return os.str();
}

Apv ParsePositions(const std::string& s) {
  std::vector<double> v;
  for (const std::string& part : CommonFlags::Split(s)) {
    try {
      v.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kConfig, "bad position '" + part + "'");
    }
  }
  try {
    return Apv(Eigen::Map<RealVector>(v.data(), static_cast<Eigen::Index>(v.size())));
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::kConfig, "cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void PrintOutcome(const SchemeOutcome& o) {
  std::cout << "scheme: " << ToString(o.scheme) << "\n"
            << "status: " << o.status << "\n"
            << "tx: " << Positions(o.tx) << "\n"
            << "rx: " << Positions(o.rx) << "\n"
            << "root_crb_rad: " << o.crb.root_crb << "\n"
            << "root_crb_deg: " << o.crb.root_crb / kDeg << "\n"
            << "achieved_snr_db: " << LinearToDb(o.snr) << "\n"
            << "objective: " << o.objective << "\n";
}

int StatusExit(const SchemeOutcome& o) { return o.status == "ok" ? kExitOk : kExitInfeasible; }

int RunCrb(const ScenarioConfig& cfg, const std::string& tx, const std::string& rx,
           const std::string& scheme, int trial) {
  const ChannelPaths paths = GenerateChannel(cfg, trial);
  if (tx.empty() && rx.empty()) {
    const Scheme s = scheme.empty() ? Scheme::kUlah : ParseScheme(scheme);
    const SchemeOutcome o = EvaluateScheme(cfg, paths, s, trial);
    PrintOutcome(o);
    return StatusExit(o);
  }
  const SystemParams& p = cfg.params;
  const Apv x = tx.empty() ? UlahPositions(p.n_tx, p.d_min) : ParsePositions(tx);
  const Apv y = rx.empty() ? UlahPositions(p.n_rx, p.d_min) : ParsePositions(rx);
  if (static_cast<int>(x.size()) != p.n_tx || static_cast<int>(y.size()) != p.n_rx) {
    throw Error(ErrorCode::kConfig, "position counts must match --ntx / --nrx");
  }
  const ComplexVector h = Channel(x, paths);
  const ComplexVector a = Steering(x, p.target_angle);
  const BeamformerResult bf = OptimalBeamformer(h, a, p);
  const CrbValue crb = CrbGeneral(x, y, bf.w, p);
  std::cout << "tx: " << Positions(x) << "\n"
            << "rx: " << Positions(y) << "\n"
            << "branch: " << (bf.branch == BeamBranch::kMatched ? "matched" : "constrained")
            << "\n"
            << "root_crb_rad: " << crb.root_crb << "\n"
            << "root_crb_deg: " << crb.root_crb / kDeg << "\n"
            << "achieved_snr_db: " << LinearToDb(UserSnr(h, bf.w, p.noise_comm)) << "\n";
  return kExitOk;
}

int RunOptimizeRx(const ScenarioConfig& cfg, bool tie_right) {
  const RxSolution sol =
      OptimalRxPositions(cfg.params, tie_right ? TieChoice::kRight : TieChoice::kLeft);
  Apv y = sol.apv;
  if (cfg.quantize_step) {
    y = QuantizeApv(y, *cfg.quantize_step, cfg.params.d_min, cfg.params.aperture_rx);
  }
  const GainRatio g = CrbGainRatio(cfg.params);
  std::cout << "rx: " << Positions(y) << "\n"
            << "spread: " << SpreadMetric(y) << "\n"
            << "crb_gain_over_ulaf_db: " << g.direct_db() << "\n"
            << "root_crb_min_deg: " << CrbMinimum(y, cfg.params).root_crb / kDeg << "\n";
  return kExitOk;
}

int RunOptimizeTx(ScenarioConfig cfg, const std::string& mode, int trial) {
  Scheme s;
  if (mode == "bfs") s = Scheme::kBtBfs;
  else if (mode == "dfs") s = Scheme::kBtDfs;
  else s = Scheme::kMmRgp;
  if ((s == Scheme::kBtBfs || s == Scheme::kBtDfs) && cfg.lt != 1) {
    throw Error(ErrorCode::kConfig, "--mode " + mode + " needs a single-path channel (--lt 1)");
  }
  cfg.mode = ArrayMode::kTx;
  const ChannelPaths paths = GenerateChannel(cfg, trial);
  const SchemeOutcome o = EvaluateScheme(cfg, paths, s, trial);
  PrintOutcome(o);
  return StatusExit(o);
}

int RunSweep(ScenarioConfig cfg, const std::string& axis, const std::string& values,
             const std::string& out) {
  if (!axis.empty()) cfg.axis = ParseSweepAxis(axis);
  if (!values.empty()) {
    cfg.values.clear();
    for (const std::string& v : CommonFlags::Split(values)) {
      try {
        cfg.values.push_back(std::stod(v));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kConfig, "bad sweep value '" + v + "'");
      }
    }
  }
  const std::vector<SweepRow> rows = maisac::RunSweep(cfg);
  Output o(out);
  WriteSweepCsv(o.stream(), cfg, rows);
  return kExitOk;
}

int RunBeampatternCmd(const ScenarioConfig& cfg, double step, const std::string& out) {
  ScenarioConfig c = cfg;
  c.beam_step_deg = step;
  const std::vector<BeamRow> rows = RunBeampattern(c);
  Output o(out);
  WriteBeamCsv(o.stream(), c, rows);
  return kExitOk;
}

int RunOracle(const ScenarioConfig& cfg, const std::string& check, int trial) {
  const SystemParams& p = cfg.params;
  bool ok = true;
  if (check == "rx") {
    const GridResult grid = GridSearchRx(p);
    const double spread = SpreadMetric(OptimalRxPositions(p).apv);
    ok = grid.value <= spread + grid.slack;
    std::cout << "closed_form_spread: " << spread << "\ngrid_spread: " << grid.value
              << "\nslack: " << grid.slack << "\npoints: " << grid.points << "\n";
  } else if (check == "tx-los") {
    const ChannelPaths paths = GenerateChannel(cfg, trial);
    const double aod = paths.aods[0];
    const LosSolution bfs = BtBfs(p, aod, p.target_angle, cfg.bfs);
    const GridResult grid = GridSearchTxLos(p, aod, p.target_angle);
    ok = bfs.objective >= grid.value - grid.slack;
    std::cout << "bfs_objective: " << bfs.objective << "\ngrid_objective: " << grid.value
              << "\nslack: " << grid.slack << "\npoints: " << grid.points << "\n";
  } else if (check == "grad") {
    const ChannelPaths paths = GenerateChannel(cfg, trial);
    const Apv x = RandomFeasibleApv(p.n_tx, p.d_min, p.aperture_tx, cfg.seed);
    const SurrogateState s = Surrogate(x, paths, p.target_angle);
    const RealVector fd_s = FdGradient(
        [&](const RealVector& v) { return SurrogateValue(s.z, s.alphas, v); }, x.positions());
    const double err_s = (s.grad - fd_s).norm() / std::max(fd_s.norm(), 1e-8);
    std::cout << "surrogate_grad_rel_err: " << err_s << "\n";
    ok = err_s < 1e-5;
    try {
      const RealVector g = GradP2(x, paths, p);
      const RealVector fd = FdGradient(
          [&](const RealVector& v) { return P2(Apv(v), paths, p); }, x.positions());
      const double err = (g - fd).norm() / std::max(fd.norm(), 1e-8);
      std::cout << "p2_grad_rel_err: " << err << "\n";
      ok = ok && err < 1e-5;
    } catch (const Error& e) {
      std::cout << "p2_grad: skipped (" << e.what() << ")\n";
    }
  } else if (check == "qp") {
    const ChannelPaths paths = GenerateChannel(cfg, trial);
    const Apv x = UlafPositions(p.n_tx, p.aperture_tx);
    const SurrogateState s = Surrogate(x, paths, p.target_angle);
    const RealVector ours =
        SolveQpStep(x.positions(), s.grad, s.delta1, p.d_min, p.aperture_tx);
    const RealVector linear = s.grad + s.delta1 * x.positions();
    const QpReferenceResult ref = QpReference(s.delta1, linear, p.d_min, p.aperture_tx);
    auto obj = [&](const RealVector& v) {
      return -0.5 * s.delta1 * v.squaredNorm() + linear.dot(v);
    };
    const double diff = std::abs(obj(ours) - obj(ref.x)) / std::max(1.0, std::abs(obj(ref.x)));
    ok = diff < 1e-7;
    std::cout << "objective_rel_diff: " << diff << "\nreference_kkt: " << ref.kkt_residual
              << "\n";
  } else {
    throw Error(ErrorCode::kConfig, "unknown oracle check '" + check + "'");
  }
  std::cout << "certified: " << (ok ? "yes" : "no") << "\n";
  return ok ? kExitOk : kExitOracle;
}

int ExitFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidGeometry:
    case ErrorCode::kOddNrUnsupported:
    case ErrorCode::kGridTooLarge:
      return kExitConfig;
    default:
      return kExitInfeasible;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Movable-antenna ISAC: sensing CRB optimization under an SNR constraint"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string tx, rx, scheme, tx_mode = "mm-rgp", axis, values, check;
  int trial = 0;
  bool tie_right = false;
  double beam_step = 0.5;

  auto* crb = app.add_subcommand("crb", "evaluate one configuration");
  flags.Register(crb);
  crb->add_option("--tx", tx, "comma-separated transmit positions");
  crb->add_option("--rx", rx, "comma-separated receive positions");
  crb->add_option("--scheme", scheme, "scheme to evaluate when no positions are given");
  crb->add_option("--trial", trial, "channel draw index");

  auto* orx = app.add_subcommand("optimize-rx", "closed-form receive placement");
  flags.Register(orx);
  orx->add_flag("--tie-right", tie_right, "odd N_r: put the middle antenna on the right");

  auto* otx = app.add_subcommand("optimize-tx", "transmit placement for one channel draw");
  flags.Register(otx);
  otx->add_option("--mode", tx_mode, "solver")->check(CLI::IsMember({"bfs", "dfs", "mm-rgp"}));
  otx->add_option("--trial", trial, "channel draw index");

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep to CSV");
  flags.Register(sweep);
  sweep->add_option("--axis", axis, "sweep axis")
      ->check(CLI::IsMember({"gamma", "aperture", "ntx", "nrx"}));
  sweep->add_option("--values", values, "comma-separated axis values");

  auto* beam = app.add_subcommand("beampattern", "transmit beampattern to CSV");
  flags.Register(beam);
  beam->add_option("--step-deg", beam_step, "angle grid step in degrees");

  auto* oracle = app.add_subcommand("oracle", "certify a solver against a reference");
  flags.Register(oracle);
  oracle->add_option("--check", check, "what to certify")
      ->required()
      ->check(CLI::IsMember({"rx", "tx-los", "grad", "qp"}));
  oracle->add_option("--trial", trial, "channel draw index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const ScenarioConfig cfg = flags.Resolve();
    if (crb->parsed()) return RunCrb(cfg, tx, rx, scheme, trial);
    if (orx->parsed()) return RunOptimizeRx(cfg, tie_right);
    if (otx->parsed()) return RunOptimizeTx(cfg, tx_mode, trial);
    if (sweep->parsed()) return RunSweep(cfg, axis, values, flags.out);
    if (beam->parsed()) return RunBeampatternCmd(cfg, beam_step, flags.out);
    if (oracle->parsed()) return RunOracle(cfg, check, trial);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
