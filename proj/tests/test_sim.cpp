#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "kingsd/sim.hpp"
#include "test_util.hpp"

using namespace kingsd;

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.channel = ChannelSpec{2, 2, std::nullopt};
  cfg.modulation = Modulation::FourQam;
  cfg.detectors = {DetectorKind::Ml, DetectorKind::Sd, DetectorKind::Kd,
                   DetectorKind::Ksd};
  cfg.snr_grid_db = {0.0, 10.0, 20.0};
  cfg.trials_per_point = 200;
  cfg.seed = 12345;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("run_trial is deterministic and detectors agree with ML") {
  SimConfig cfg = small_config();
  for (std::size_t t = 0; t < 50; ++t) {
    auto a = run_trial(cfg, 10.0, 1, t);
    auto b = run_trial(cfg, 10.0, 1, t);
    for (auto& [kind, outcome] : a) {
      CHECK(outcome.symbols == b.at(kind).symbols);
      CHECK(outcome.visited_nodes == b.at(kind).visited_nodes);
    }
    const auto& ml = a.at(DetectorKind::Ml);
    for (auto& [kind, outcome] : a) {
      const bool same = outcome.symbols == ml.symbols;
      CHECK((same || std::abs(outcome.metric - ml.metric) <= 1e-9));
      CHECK(outcome.symbol_errors == ml.symbol_errors);
    }
  }
}

TEST_CASE("run_trial at very high SNR makes no symbol errors") {
  SimConfig cfg = small_config();
  for (std::size_t t = 0; t < 50; ++t) {
    auto res = run_trial(cfg, 60.0, 0, t);
    for (auto& [kind, outcome] : res) CHECK(outcome.symbol_errors == 0);
  }
}

TEST_CASE("run_sweep row structure") {
  SimConfig cfg = small_config();
  cfg.detectors = {DetectorKind::Sd, DetectorKind::Ksd};
  cfg.snr_grid_db = {5.0};
  cfg.trials_per_point = 1;
  auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].detector == "ksd");  // ascending name order
  CHECK(rows[1].detector == "sd");
  CHECK(rows[0].channel == "iid");
  CHECK(rows[0].modulation == "4qam");
  CHECK(rows[0].trials == 1);
}

TEST_CASE("run_sweep KSD average never exceeds SD average") {
  SimConfig cfg = small_config();
  cfg.detectors = {DetectorKind::Sd, DetectorKind::Ksd};
  cfg.trials_per_point = 300;
  auto rows = run_sweep(cfg);
  for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
    REQUIRE(rows[i].detector == "ksd");
    REQUIRE(rows[i + 1].detector == "sd");
    CHECK(rows[i].snr_db == rows[i + 1].snr_db);
    CHECK(rows[i].avg_visited_nodes <= rows[i + 1].avg_visited_nodes);
  }
}

TEST_CASE("sweep SER matches ML-measured SER when ML runs alongside") {
  SimConfig cfg = small_config();
  cfg.trials_per_point = 300;
  cfg.snr_grid_db = {20.0};
  auto rows = run_sweep(cfg);
  double ml_ser = -1.0;
  for (const auto& r : rows)
    if (r.detector == "ml") ml_ser = r.ser;
  REQUIRE(ml_ser >= 0.0);
  for (const auto& r : rows) CHECK(r.ser == ml_ser);
}

TEST_CASE("emit_csv header and empty case") {
  std::ostringstream os;
  emit_csv({}, os);
  CHECK(os.str() ==
        "snr_db,detector,channel,modulation,K,N,avg_visited_nodes,ser,trials\n");
}

TEST_CASE("csv round trip") {
  SimConfig cfg = small_config();
  cfg.detectors = {DetectorKind::Sd, DetectorKind::Ksd};
  cfg.trials_per_point = 50;
  auto rows = run_sweep(cfg);
  const std::string path = "test_roundtrip.csv";
  emit_csv(rows, path);
  auto back = read_csv(path);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].detector == rows[i].detector);
    CHECK(back[i].snr_db == doctest::Approx(rows[i].snr_db).epsilon(1e-5));
    CHECK(back[i].avg_visited_nodes ==
          doctest::Approx(rows[i].avg_visited_nodes).epsilon(1e-5));
    CHECK(back[i].ser == doctest::Approx(rows[i].ser).epsilon(1e-5));
    CHECK(back[i].trials == rows[i].trials);
  }
  std::remove(path.c_str());
}

TEST_CASE("identical configs give byte-identical CSVs") {
  SimConfig cfg = small_config();
  cfg.detectors = {DetectorKind::Sd, DetectorKind::Ksd};
  cfg.trials_per_point = 100;
  emit_csv(run_sweep(cfg), std::string("test_repro_a.csv"));
  emit_csv(run_sweep(cfg), std::string("test_repro_b.csv"));
  CHECK(slurp("test_repro_a.csv") == slurp("test_repro_b.csv"));
  std::remove("test_repro_a.csv");
  std::remove("test_repro_b.csv");
}

TEST_CASE("SER is nonincreasing in SNR up to Monte-Carlo slack") {
  SimConfig cfg = small_config();
  cfg.detectors = {DetectorKind::Sd};
  cfg.snr_grid_db = {0.0, 4.0, 8.0, 12.0};
  cfg.trials_per_point = 2000;
  auto rows = run_sweep(cfg);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double n = static_cast<double>(rows[i].trials * cfg.channel.k);
    const double se = std::sqrt(rows[i].ser * (1 - rows[i].ser) / n) +
                      std::sqrt(rows[i + 1].ser * (1 - rows[i + 1].ser) / n);
    CHECK(rows[i + 1].ser <= rows[i].ser + 3.0 * se + 1e-12);
  }
}

TEST_CASE("parse helpers") {
  auto grid = parse_snr_range("0:4:20");
  REQUIRE(grid.size() == 6);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 20.0);
  CHECK_THROWS_AS(parse_snr_range("5:0:10"), InvalidArgument);

  auto dets = parse_detectors("ml,ksd");
  REQUIRE(dets.size() == 2);
  CHECK(dets[0] == DetectorKind::Ml);
  CHECK_THROWS_AS(parse_detectors("bogus"), InvalidArgument);
}

TEST_CASE("config file application") {
  const std::string path = "test_cfg.txt";
  {
    std::ofstream f(path);
    f << "# comment\n"
      << "seed = 99\n"
      << "k = 4\n"
      << "n = 4\n"
      << "channel = kron\n"
      << "rho_t = 0.5\n"
      << "rho_r = 0.5\n"
      << "mod = 16qam\n"
      << "detectors = sd,ksd\n"
      << "snr = 0:10:20\n"
      << "trials = 7\n";
  }
  SimConfig cfg;
  apply_config_file(cfg, path);
  CHECK(cfg.seed == 99);
  CHECK(cfg.channel.k == 4);
  REQUIRE(cfg.channel.fading.has_value());
  CHECK(cfg.channel.fading->rho_t == 0.5);
  CHECK(cfg.modulation == Modulation::SixteenQam);
  CHECK(cfg.trials_per_point == 7);
  CHECK(cfg.snr_grid_db == std::vector<double>{0.0, 10.0, 20.0});
  std::remove(path.c_str());
}
