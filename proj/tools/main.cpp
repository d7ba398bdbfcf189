// kingsd CLI: Monte-Carlo sweeps, one-shot decoding, and a quick self test.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kingsd/channel.hpp"
#include "kingsd/detector.hpp"
#include "kingsd/dominance.hpp"
#include "kingsd/modulation.hpp"
#include "kingsd/sim.hpp"

using namespace kingsd;
using nlohmann::json;

namespace {

struct SweepFlags {
  std::string config, snr, detectors, channel, mod, out, enumeration, traversal;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> k, n, trials;
  std::optional<double> rho_t, rho_r;
};

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
  cmd->add_option("--config", f.config, "key=value config file");
  cmd->add_option("--seed", f.seed, "base RNG seed");
  cmd->add_option("--snr", f.snr, "SNR grid in dB, start:step:stop");
  cmd->add_option("--detectors", f.detectors,
                  "comma list drawn from ml,sd,kd,ksd");
  cmd->add_option("--channel", f.channel, "iid or kron");
  cmd->add_option("--rho-t", f.rho_t, "transmit correlation index");
  cmd->add_option("--rho-r", f.rho_r, "receive correlation index");
  cmd->add_option("--mod", f.mod, "4qam or 16qam");
  cmd->add_option("--k", f.k, "transmit antennas");
  cmd->add_option("--n", f.n, "receive antennas");
  cmd->add_option("--trials", f.trials, "trials per SNR point");
  cmd->add_option("--out", f.out, "output CSV path (default stdout)");
  cmd->add_option("--enumeration", f.enumeration, "natural or zigzag");
  cmd->add_option("--traversal", f.traversal, "dfs or bfs");
}

Modulation parse_mod(const std::string& s) {
  if (s == "4qam") return Modulation::FourQam;
  if (s == "16qam") return Modulation::SixteenQam;
  throw InvalidArgument("unknown modulation: " + s);
}

Enumeration parse_enumeration(const std::string& s) {
  if (s == "natural") return Enumeration::Natural;
  if (s == "zigzag") return Enumeration::ZigZag;
  throw InvalidArgument("unknown enumeration: " + s);
}

Traversal parse_traversal(const std::string& s) {
  if (s == "dfs") return Traversal::Dfs;
  if (s == "bfs") return Traversal::Bfs;
  throw InvalidArgument("unknown traversal: " + s);
}

// Config file first, then explicit flags override.
SimConfig resolve_config(const SweepFlags& f) {
  SimConfig cfg;
  if (!f.config.empty()) apply_config_file(cfg, f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (!f.snr.empty()) cfg.snr_grid_db = parse_snr_range(f.snr);
  if (!f.detectors.empty()) cfg.detectors = parse_detectors(f.detectors);
  if (f.k) cfg.channel.k = *f.k;
  if (f.n) cfg.channel.n = *f.n;
  if (!f.channel.empty()) {
    if (f.channel == "iid") {
      cfg.channel.fading.reset();
    } else if (f.channel == "kron") {
      if (!cfg.channel.fading) cfg.channel.fading = KroneckerFading{0.5, 0.5};
    } else {
      throw InvalidArgument("unknown channel: " + f.channel);
    }
  }
  if (f.rho_t || f.rho_r) {
    if (!cfg.channel.fading)
      throw InvalidArgument("--rho-t/--rho-r require --channel kron");
    if (f.rho_t) cfg.channel.fading->rho_t = *f.rho_t;
    if (f.rho_r) cfg.channel.fading->rho_r = *f.rho_r;
  }
  if (!f.mod.empty()) cfg.modulation = parse_mod(f.mod);
  if (f.trials) cfg.trials_per_point = *f.trials;
  if (!f.out.empty()) cfg.output_path = f.out;
  if (!f.enumeration.empty())
    cfg.search.enumeration = parse_enumeration(f.enumeration);
  if (!f.traversal.empty()) cfg.search.traversal = parse_traversal(f.traversal);
  return cfg;
}

int run_sweep_cmd(const SweepFlags& f) {
  SimConfig cfg = resolve_config(f);
  auto rows = run_sweep(cfg);
  if (cfg.output_path.empty()) {
    emit_csv(rows, std::cout);
  } else {
    emit_csv(rows, cfg.output_path);
    std::fprintf(stderr, "wrote %zu rows to %s\n", rows.size(),
                 cfg.output_path.c_str());
  }
  return 0;
}

ComplexMatrix read_complex_matrix(const json& re, const json& im) {
  const std::size_t rows = re.size();
  const std::size_t cols = rows ? re[0].size() : 0;
  if (im.size() != rows) throw InvalidArgument("re/im shape mismatch");
  ComplexMatrix h(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (re[i].size() != cols || im[i].size() != cols)
      throw InvalidArgument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j)
      h(i, j) = cplx(re[i][j].get<double>(), im[i][j].get<double>());
  }
  return h;
}

// Instance file: {"modulation": "4qam", "h_re": [[..]], "h_im": [[..]],
//                 "y_re": [..], "y_im": [..], "ex": 1.0}
int run_decode_cmd(const std::string& path, const std::string& detector,
                   const std::string& enumeration,
                   const std::string& traversal) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "cannot open %s\n", path.c_str());
    return 1;
  }
  json doc = json::parse(in);
  const Modulation mod = parse_mod(doc.value("modulation", "4qam"));
  ComplexMatrix h = read_complex_matrix(doc.at("h_re"), doc.at("h_im"));
  const json& yre = doc.at("y_re");
  const json& yim = doc.at("y_im");
  if (yre.size() != h.rows() || yim.size() != h.rows())
    throw InvalidArgument("y length does not match H");
  ComplexVector y(h.rows());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = cplx(yre[i].get<double>(), yim[i].get<double>());

  const std::size_t k = h.cols();
  const double ex = doc.value("ex", 1.0);
  const double scale = normalize_energy(mod, k, ex);
  const ComplexMatrix hc = mod == Modulation::SixteenQam ? expand_16qam(h) : h;
  DetectionProblem p = lift_4qam(hc, y, scale);

  SearchConfig cfg;
  if (!enumeration.empty()) cfg.enumeration = parse_enumeration(enumeration);
  if (!traversal.empty()) cfg.traversal = parse_traversal(traversal);

  DecodeResult r;
  if (detector == "ml") {
    r = ml_exhaustive(p);
  } else if (detector == "sd") {
    r = sphere_decode(p, cfg);
  } else if (detector == "kd") {
    r = king_decode(p);
  } else if (detector == "ksd") {
    r = king_sphere_decode(p, cfg);
  } else {
    throw InvalidArgument("unknown detector: " + detector);
  }

  ComplexVector sym = symbols_from_search(mod, r.symbols, k);
  std::printf("detector: %s\nmetric: %.12g\nvisited_nodes: %llu\n"
              "restarts: %u\nsymbols:\n",
              detector.c_str(), r.metric,
              static_cast<unsigned long long>(r.visited_nodes), r.restarts);
  for (std::size_t j = 0; j < sym.size(); ++j)
    std::printf("  x[%zu] = %+g%+gi\n", j + 1, sym[j].real(), sym[j].imag());
  return 0;
}

// Randomized oracle-equivalence suite; small but covers every detector.
int run_selftest_cmd(std::uint64_t seed, std::size_t trials) {
  std::uint64_t ml_violations = 0, node_violations = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double snr = static_cast<double>(t % 6) * 4.0;
    SimConfig cfg;
    cfg.channel = ChannelSpec{2, 2,
                              t % 2 ? std::optional<KroneckerFading>({0.5, 0.5})
                                    : std::nullopt};
    cfg.modulation = t % 4 < 2 ? Modulation::FourQam : Modulation::SixteenQam;
    cfg.detectors = {DetectorKind::Ml, DetectorKind::Sd, DetectorKind::Kd,
                     DetectorKind::Ksd};
    cfg.seed = seed;
    auto res = run_trial(cfg, snr, t % 6, t);
    const auto& ml = res.at(DetectorKind::Ml);
    for (auto& [kind, out] : res) {
      if (kind == DetectorKind::Ml) continue;
      if (out.symbols != ml.symbols && std::abs(out.metric - ml.metric) > 1e-9)
        ++ml_violations;
    }
    if (res.at(DetectorKind::Ksd).visited_nodes >
        res.at(DetectorKind::Sd).visited_nodes)
      ++node_violations;
  }
  const bool pass = ml_violations == 0 && node_violations == 0;
  std::printf("selftest: %zu trials, %llu ML violations, %llu node-dominance "
              "violations -> %s\n",
              trials, static_cast<unsigned long long>(ml_violations),
              static_cast<unsigned long long>(node_violations),
              pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIMO ML detection toolkit: sphere, king and king-sphere "
               "decoders"};
  app.require_subcommand(1);

  SweepFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "run an SNR sweep, emit CSV");
  add_sweep_flags(sweep, sweep_flags);

  std::string dec_in, dec_detector = "ksd", dec_enum, dec_trav;
  CLI::App* decode =
      app.add_subcommand("decode", "decode one instance from a JSON file");
  decode->add_option("input", dec_in, "instance JSON file")->required();
  decode->add_option("--detectors,--detector", dec_detector,
                     "ml, sd, kd or ksd");
  decode->add_option("--enumeration", dec_enum, "natural or zigzag");
  decode->add_option("--traversal", dec_trav, "dfs or bfs");

  std::uint64_t st_seed = 1;
  std::size_t st_trials = 500;
  CLI::App* selftest =
      app.add_subcommand("selftest", "randomized oracle-equivalence checks");
  selftest->add_option("--seed", st_seed, "base RNG seed");
  selftest->add_option("--trials", st_trials, "number of random instances");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return run_sweep_cmd(sweep_flags);
    if (decode->parsed())
      return run_decode_cmd(dec_in, dec_detector, dec_enum, dec_trav);
    if (selftest->parsed()) return run_selftest_cmd(st_seed, st_trials);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
