#include <benchmark/benchmark.h>

#include <vector>

#include "kingsd/channel.hpp"
#include "kingsd/detector.hpp"
#include "kingsd/dominance.hpp"
#include "kingsd/modulation.hpp"

using namespace kingsd;

namespace {

// Fixed pool of seeded 4x4 4-QAM instances at the given SNR.
std::vector<DetectionProblem> make_pool(double snr_db, std::size_t count) {
  const std::size_t k = 4, n = 4;
  const double scale = normalize_energy(Modulation::FourQam, k, 1.0);
  std::vector<DetectionProblem> pool;
  pool.reserve(count);
  for (std::uint64_t t = 0; t < count; ++t) {
    ComplexMatrix h = draw_iid_channel(n, k, RngStream{2024, t});
    RandomStream rs(derive(RngStream{2024, t}, 1));
    ComplexVector x(k);
    for (std::size_t j = 0; j < k; ++j)
      x[j] = scale * cplx(static_cast<double>(rs.pm1()),
                          static_cast<double>(rs.pm1()));
    ComplexVector y = add_noise(h * x, eta0_for_snr(snr_db, 1.0),
                                derive(RngStream{2024, t}, 2));
    pool.push_back(lift_4qam(h, y, scale));
  }
  return pool;
}

template <typename Decode>
void run(benchmark::State& state, Decode&& decode) {
  const auto pool = make_pool(static_cast<double>(state.range(0)), 64);
  std::size_t i = 0;
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    DecodeResult r = decode(pool[i]);
    benchmark::DoNotOptimize(r.metric);
    nodes += r.visited_nodes;
    i = (i + 1) % pool.size();
  }
  state.counters["nodes"] = benchmark::Counter(
      static_cast<double>(nodes), benchmark::Counter::kAvgIterations);
}

void BM_SphereDecode(benchmark::State& state) {
  run(state, [](const DetectionProblem& p) {
    return sphere_decode(p, SearchConfig{});
  });
}

void BM_KingSphereDecode(benchmark::State& state) {
  run(state, [](const DetectionProblem& p) {
    return king_sphere_decode(p, SearchConfig{});
  });
}

void BM_KingDecode(benchmark::State& state) {
  run(state, [](const DetectionProblem& p) { return king_decode(p); });
}

void BM_MlExhaustive(benchmark::State& state) {
  run(state, [](const DetectionProblem& p) { return ml_exhaustive(p); });
}

}  // namespace

BENCHMARK(BM_SphereDecode)->Arg(0)->Arg(10)->Arg(20);
BENCHMARK(BM_KingSphereDecode)->Arg(0)->Arg(10)->Arg(20);
BENCHMARK(BM_KingDecode)->Arg(0)->Arg(10)->Arg(20);
BENCHMARK(BM_MlExhaustive)->Arg(10);

BENCHMARK_MAIN();
