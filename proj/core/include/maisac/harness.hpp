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


// Experiment harness: scenario configuration, Rician channel draws, scheme
// evaluation, sweeps, grid quantization and CSV output.

#ifndef MAISAC_HARNESS_HPP_
#define MAISAC_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "maisac/transmit_los.hpp"
#include "maisac/transmit_nlos.hpp"
#include "maisac/types.hpp"

namespace maisac {

enum class Scheme { kRxClosedForm, kBtBfs, kBtDfs, kMmRgp, kUlah, kUlaf, kRandomInitRgp };
enum class ArrayMode { kRx, kTx, kBoth };
enum class SweepAxis { kGamma, kAperture, kNtx, kNrx };

std::string ToString(Scheme s);
std::string ToString(ArrayMode m);
std::string ToString(SweepAxis a);
Scheme ParseScheme(const std::string& s);
ArrayMode ParseArrayMode(const std::string& s);
SweepAxis ParseSweepAxis(const std::string& s);

double DbToLinear(double db);
double DbmToWatts(double dbm);
double LinearToDb(double lin);

struct ScenarioConfig {
  SystemParams params;
  int lt = 18;
  double kappa = 3.0;
  std::optional<double> los_aod;  // radians; replaces the first path's draw
  std::uint64_t seed = 1;
  int trials = 100;
  ArrayMode mode = ArrayMode::kTx;
  std::vector<Scheme> schemes;
  SweepAxis axis = SweepAxis::kGamma;
  std::vector<double> values;  // dB for gamma, wavelengths for aperture, counts otherwise
  std::optional<double> quantize_step;
  int threads = 0;  // 0 picks the hardware concurrency
  MmOptions mm;
  RgpOptions rgp;
  BfsOptions bfs;
  double beam_step_deg = 0.5;

  // Default scenario: N_t = 18, N_r = 20, P_T = 20 dBm,
  // sigma^2 = 0 dBm, L = 30, D = 13.55, kappa = 3, L_t = 18, theta = 0.
  static ScenarioConfig Defaults();

  // Throws Error(kConfig) on inconsistent settings.
  void Validate() const;
};

// JSON text with the keys documented in the README. Powers and thresholds are
// given in dB/dBm, angles in degrees, lengths in wavelengths unless
// `wavelength` (metres) is present, in which case lengths are in metres.
ScenarioConfig ParseConfig(const std::string& json_text,
                           ScenarioConfig base = ScenarioConfig::Defaults());
std::string ConfigToJson(const ScenarioConfig& cfg);

// Independent per-trial draw from the (seed, trial) substream.
ChannelPaths GenerateChannel(const ScenarioConfig& cfg, int trial_index);

// Rounds to the nearest multiple of `step`, pushes violated gaps apart left to
// right and then pulls the array back inside the aperture. Throws
// kRepairFailed when no lattice configuration fits.
Apv QuantizeApv(const Apv& x, double step, double d, double aperture);

struct SchemeOutcome {
  Scheme scheme = Scheme::kUlah;
  Apv tx;
  Apv rx;
  BeamVector w;
  CrbValue crb;
  double snr = 0.0;
  double objective = 0.0;  // f(y) for receive schemes, |h^H a| otherwise
  std::string status = "ok";
};

// Runs one scheme on one channel draw. Solver errors are captured in
// `status` rather than thrown; configuration errors still throw.
SchemeOutcome EvaluateScheme(const ScenarioConfig& cfg, const ChannelPaths& paths,
                             Scheme scheme, int trial_index);

struct SweepRow {
  std::string axis;
  double value = 0.0;
  int trial = -1;  // -1 marks the mean row
  std::string scheme;
  double root_crb_rad = 0.0;
  double root_crb_deg = 0.0;
  double achieved_snr_db = 0.0;
  double objective = 0.0;
  std::string status;
  std::uint64_t seed = 0;
};

// Every (value, trial, scheme) row followed by per-(value, scheme) means.
std::vector<SweepRow> RunSweep(const ScenarioConfig& cfg);

// Applies one sweep value to a copy of the config.
ScenarioConfig AtSweepValue(const ScenarioConfig& cfg, double value);

void WriteSweepCsv(std::ostream& os, const ScenarioConfig& cfg,
                   const std::vector<SweepRow>& rows);

struct BeamRow {
  double angle_deg = 0.0;
  std::string scheme;
  double power = 0.0;
};

std::vector<BeamRow> RunBeampattern(const ScenarioConfig& cfg);
void WriteBeamCsv(std::ostream& os, const ScenarioConfig& cfg,
                  const std::vector<BeamRow>& rows);

}  // namespace maisac

#endif  // MAISAC_HARNESS_HPP_
