#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "kingsd/channel.hpp"
#include "kingsd/detector.hpp"
#include "kingsd/modulation.hpp"

namespace kingsd {

enum class DetectorKind { Ml, Sd, Kd, Ksd };

std::string detector_name(DetectorKind kind);

struct SimConfig {
  ChannelSpec channel{2, 2, std::nullopt};
  Modulation modulation = Modulation::FourQam;
  std::vector<DetectorKind> detectors{DetectorKind::Sd, DetectorKind::Ksd};
  SearchConfig search;
  std::vector<double> snr_grid_db{0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  std::size_t trials_per_point = 10000;
  std::uint64_t seed = 1;
  double ex = 1.0;  // total average transmit energy
  std::string output_path;
};

struct SweepRow {
  double snr_db = 0.0;
  std::string detector;
  std::string channel;     // "iid" or "kron"
  std::string modulation;  // "4qam" or "16qam"
  std::size_t k = 0;
  std::size_t n = 0;
  double avg_visited_nodes = 0.0;
  double ser = 0.0;
  std::size_t trials = 0;
};

struct TrialOutcome {
  std::uint64_t visited_nodes = 0;
  std::size_t symbol_errors = 0;  // complex symbols, out of K
  std::vector<int> symbols;
  double metric = 0.0;
};

/// One Monte-Carlo draw of (H, x, n); every configured detector decodes the
/// same instance. Deterministic in (seed, snr_index, trial_index).
std::map<DetectorKind, TrialOutcome> run_trial(const SimConfig& cfg,
                                               double snr_db,
                                               std::size_t snr_index,
                                               std::size_t trial_index);

/// Full SNR sweep; aborts if any paired trial has visited(KSD) > visited(SD).
std::vector<SweepRow> run_sweep(const SimConfig& cfg);

/// Header: snr_db,detector,channel,modulation,K,N,avg_visited_nodes,ser,trials
void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> read_csv(const std::string& path);

std::vector<DetectorKind> parse_detectors(const std::string& csv_list);

/// "start:step:stop" (inclusive stop, within half a step).
std::vector<double> parse_snr_range(const std::string& spec);

/// key=value file, '#' comments; keys mirror the CLI flags.
void apply_config_file(SimConfig& cfg, const std::string& path);

}  // namespace kingsd
