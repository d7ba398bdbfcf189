#include "kingsd/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kingsd/dominance.hpp"

namespace kingsd {

std::string detector_name(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::Ml: return "ml";
    case DetectorKind::Sd: return "sd";
    case DetectorKind::Kd: return "kd";
    case DetectorKind::Ksd: return "ksd";
  }
  throw InvalidArgument("detector_name: bad kind");
}

std::vector<DetectorKind> parse_detectors(const std::string& csv_list) {
  std::vector<DetectorKind> out;
  std::stringstream ss(csv_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "ml") out.push_back(DetectorKind::Ml);
    else if (tok == "sd") out.push_back(DetectorKind::Sd);
    else if (tok == "kd") out.push_back(DetectorKind::Kd);
    else if (tok == "ksd") out.push_back(DetectorKind::Ksd);
    else throw InvalidArgument("unknown detector: " + tok);
  }
  if (out.empty()) throw InvalidArgument("empty detector list");
  return out;
}

std::vector<double> parse_snr_range(const std::string& spec) {
  double start = 0, step = 0, stop = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3 ||
      step <= 0.0 || stop < start)
    throw InvalidArgument("bad SNR range, expected start:step:stop");
  std::vector<double> grid;
  for (double v = start; v <= stop + step / 2.0; v += step) grid.push_back(v);
  return grid;
}

std::map<DetectorKind, TrialOutcome> run_trial(const SimConfig& cfg,
                                               double snr_db,
                                               std::size_t snr_index,
                                               std::size_t trial_index) {
  const std::size_t k = cfg.channel.k;
  const double scale = normalize_energy(cfg.modulation, k, cfg.ex);
  const std::size_t m = search_depth(cfg.modulation, k);
  const double eta0 = eta0_for_snr(snr_db, cfg.ex);

  const RngStream base{cfg.seed, 0};
  const RngStream chan_rng = derive(base, snr_index, trial_index, 0);
  const RngStream sym_rng = derive(base, snr_index, trial_index, 1);
  const RngStream noise_rng = derive(base, snr_index, trial_index, 2);

  const ComplexMatrix h = draw_channel(cfg.channel, chan_rng);

  std::vector<int> s_true(m);
  {
    RandomStream rs(sym_rng);
    for (int& s : s_true) s = rs.pm1();
  }
  const ComplexVector grid_true = symbols_from_search(cfg.modulation, s_true, k);
  ComplexVector x(k);
  for (std::size_t j = 0; j < k; ++j) x[j] = scale * grid_true[j];

  const ComplexVector y = add_noise(h * x, eta0, noise_rng);
  const ComplexMatrix hc =
      cfg.modulation == Modulation::SixteenQam ? expand_16qam(h) : h;
  const DetectionProblem prob = lift_4qam(hc, y, scale);

  SearchConfig sd_cfg = cfg.search;
  sd_cfg.dominance_enabled = false;

  std::map<DetectorKind, TrialOutcome> out;
  for (DetectorKind kind : cfg.detectors) {
    DecodeResult r;
    switch (kind) {
      case DetectorKind::Ml: r = ml_exhaustive(prob); break;
      case DetectorKind::Sd: r = sphere_decode(prob, sd_cfg); break;
      case DetectorKind::Kd: r = king_decode(prob); break;
      case DetectorKind::Ksd: r = king_sphere_decode(prob, sd_cfg); break;
    }
    TrialOutcome t;
    t.visited_nodes = r.visited_nodes;
    const ComplexVector grid = symbols_from_search(cfg.modulation, r.symbols, k);
    for (std::size_t j = 0; j < k; ++j)
      if (grid[j] != grid_true[j]) ++t.symbol_errors;
    t.symbols = std::move(r.symbols);
    t.metric = r.metric;
    out.emplace(kind, std::move(t));
  }
  return out;
}

std::vector<SweepRow> run_sweep(const SimConfig& cfg) {
  if (cfg.trials_per_point < 1)
    throw InvalidArgument("run_sweep: trials_per_point must be >= 1");
  for (std::size_t i = 1; i < cfg.snr_grid_db.size(); ++i)
    if (cfg.snr_grid_db[i] <= cfg.snr_grid_db[i - 1])
      throw InvalidArgument("run_sweep: SNR grid must be strictly increasing");

  const bool paired = std::count(cfg.detectors.begin(), cfg.detectors.end(),
                                 DetectorKind::Sd) &&
                      std::count(cfg.detectors.begin(), cfg.detectors.end(),
                                 DetectorKind::Ksd);

  std::vector<SweepRow> rows;
  const std::string chan_tag = cfg.channel.fading ? "kron" : "iid";
  const std::string mod_tag =
      cfg.modulation == Modulation::FourQam ? "4qam" : "16qam";

  for (std::size_t si = 0; si < cfg.snr_grid_db.size(); ++si) {
    const double snr = cfg.snr_grid_db[si];
    std::map<DetectorKind, std::pair<std::uint64_t, std::size_t>> acc;
    for (DetectorKind kind : cfg.detectors) acc[kind] = {0, 0};

    for (std::size_t t = 0; t < cfg.trials_per_point; ++t) {
      auto res = run_trial(cfg, snr, si, t);
      if (paired &&
          res.at(DetectorKind::Ksd).visited_nodes >
              res.at(DetectorKind::Sd).visited_nodes) {
        std::ostringstream msg;
        msg << "node-dominance violation: KSD visited "
            << res.at(DetectorKind::Ksd).visited_nodes << " > SD "
            << res.at(DetectorKind::Sd).visited_nodes << " at snr=" << snr
            << " trial=" << t;
        throw std::runtime_error(msg.str());
      }
      for (auto& [kind, outcome] : res) {
        acc[kind].first += outcome.visited_nodes;
        acc[kind].second += outcome.symbol_errors;
      }
    }

    for (auto& [kind, sums] : acc) {
      SweepRow row;
      row.snr_db = snr;
      row.detector = detector_name(kind);
      row.channel = chan_tag;
      row.modulation = mod_tag;
      row.k = cfg.channel.k;
      row.n = cfg.channel.n;
      row.trials = cfg.trials_per_point;
      row.avg_visited_nodes =
          static_cast<double>(sums.first) / static_cast<double>(row.trials);
      row.ser = static_cast<double>(sums.second) /
                static_cast<double>(row.trials * cfg.channel.k);
      rows.push_back(std::move(row));
    }
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     if (a.snr_db != b.snr_db) return a.snr_db < b.snr_db;
                     return a.detector < b.detector;
                   });
  return rows;
}

namespace {
std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}
}  // namespace

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "snr_db,detector,channel,modulation,K,N,avg_visited_nodes,ser,trials\n";
  for (const SweepRow& r : rows) {
    out << fmt6(r.snr_db) << ',' << r.detector << ',' << r.channel << ','
        << r.modulation << ',' << r.k << ',' << r.n << ','
        << fmt6(r.avg_visited_nodes) << ',' << fmt6(r.ser) << ',' << r.trials
        << '\n';
  }
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
  emit_csv(rows, f);
  if (!f.good()) throw std::runtime_error("emit_csv: write failure on " + path);
}

std::vector<SweepRow> read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("read_csv: cannot open " + path);
  std::string line;
  if (!std::getline(f, line) ||
      line != "snr_db,detector,channel,modulation,K,N,avg_visited_nodes,ser,trials")
    throw std::runtime_error("read_csv: bad header in " + path);
  std::vector<SweepRow> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    SweepRow r;
    std::getline(ss, tok, ','); r.snr_db = std::stod(tok);
    std::getline(ss, r.detector, ',');
    std::getline(ss, r.channel, ',');
    std::getline(ss, r.modulation, ',');
    std::getline(ss, tok, ','); r.k = std::stoul(tok);
    std::getline(ss, tok, ','); r.n = std::stoul(tok);
    std::getline(ss, tok, ','); r.avg_visited_nodes = std::stod(tok);
    std::getline(ss, tok, ','); r.ser = std::stod(tok);
    std::getline(ss, tok, ','); r.trials = std::stoul(tok);
    rows.push_back(std::move(r));
  }
  return rows;
}

void apply_config_file(SimConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open " + path);
  std::string line;
  double rho_t = cfg.channel.fading ? cfg.channel.fading->rho_t : 0.5;
  double rho_r = cfg.channel.fading ? cfg.channel.fading->rho_r : 0.5;
  bool kron = cfg.channel.fading.has_value();
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(lineno) +
                            ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r\n");
      const auto b = s.find_last_not_of(" \t\r\n");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "seed") cfg.seed = std::stoull(val);
    else if (key == "trials") cfg.trials_per_point = std::stoul(val);
    else if (key == "k") cfg.channel.k = std::stoul(val);
    else if (key == "n") cfg.channel.n = std::stoul(val);
    else if (key == "ex") cfg.ex = std::stod(val);
    else if (key == "channel") kron = (val == "kron");
    else if (key == "rho_t") rho_t = std::stod(val);
    else if (key == "rho_r") rho_r = std::stod(val);
    else if (key == "mod")
      cfg.modulation = val == "16qam" ? Modulation::SixteenQam : Modulation::FourQam;
    else if (key == "detectors") cfg.detectors = parse_detectors(val);
    else if (key == "snr") cfg.snr_grid_db = parse_snr_range(val);
    else if (key == "out") cfg.output_path = val;
    else if (key == "enumeration")
      cfg.search.enumeration = val == "natural" ? Enumeration::Natural : Enumeration::ZigZag;
    else if (key == "traversal")
      cfg.search.traversal = val == "bfs" ? Traversal::Bfs : Traversal::Dfs;
    else throw InvalidArgument("config: unknown key '" + key + "'");
  }
  cfg.channel.fading = kron ? std::optional<KroneckerFading>({rho_t, rho_r})
                            : std::nullopt;
}

}  // namespace kingsd
