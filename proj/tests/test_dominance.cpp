#include <cmath>

#include "doctest.h"
#include "kingsd/channel.hpp"
#include "kingsd/detector.hpp"
#include "kingsd/dominance.hpp"
#include "kingsd/modulation.hpp"
#include "test_util.hpp"

using namespace kingsd;
using test::mat;

namespace {

DetectionProblem random_mimo_problem(std::size_t k, std::size_t n, double snr_db,
                                     std::uint64_t seed, std::uint64_t stream) {
  const double scale = normalize_energy(Modulation::FourQam, k, 1.0);
  const ComplexMatrix h = draw_iid_channel(n, k, RngStream{seed, stream});
  std::vector<int> s(2 * k);
  RandomStream rs(derive(RngStream{seed, stream}, 1));
  for (int& b : s) b = rs.pm1();
  ComplexVector x(k);
  for (std::size_t j = 0; j < k; ++j)
    x[j] = scale * cplx(static_cast<double>(s[j]), static_cast<double>(s[j + k]));
  ComplexVector y = add_noise(h * x, eta0_for_snr(snr_db, 1.0),
                              derive(RngStream{seed, stream}, 2));
  return lift_4qam(h, y, scale);
}

std::vector<int> flip_k(std::vector<int> x, std::size_t k) {
  x[k] = -x[k];
  return x;
}

}  // namespace

TEST_CASE("discrete_difference basics") {
  RandomStream rs({3, 3});
  DetectionProblem p = test::random_problem(5, 4, rs);
  std::vector<int> x = {1, -1, 1, 1};
  std::vector<int> xh = {-1, -1, 1, -1};
  CHECK(discrete_difference(p, x, x) == 0.0);
  CHECK(discrete_difference(p, x, xh) ==
        doctest::Approx(-discrete_difference(p, xh, x)).epsilon(1e-14));
  CHECK(discrete_difference(p, x, xh) ==
        doctest::Approx(full_metric(p, x) - full_metric(p, xh)).epsilon(1e-14));
}

TEST_CASE("discrete_difference_k hand case with identity Gram") {
  DetectionProblem p =
      make_detection_problem(mat({{1, 0}, {0, 1}}), {0.9, -0.3});
  CHECK(discrete_difference_k(p, {1, 1}, 0) ==
        doctest::Approx(-3.6).epsilon(1e-14));
  // orthogonal columns with z_k = 0: difference vanishes for both signs
  DetectionProblem q =
      make_detection_problem(mat({{1, 0}, {0, 1}}), {0.0, 0.5});
  CHECK(discrete_difference_k(q, {1, 1}, 0) == 0.0);
  CHECK(discrete_difference_k(q, {-1, 1}, 0) == 0.0);
}

TEST_CASE("discrete_difference_k matches direct evaluation (Prop 1 identity)") {
  RandomStream rs({101, 5});
  double max_err = 0.0;
  for (int t = 0; t < 100000; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(rs.uniform() * 5);
    DetectionProblem p = test::random_problem(m + 2, m, rs);
    std::vector<int> x(m);
    for (int& b : x) b = rs.pm1();
    const std::size_t k = static_cast<std::size_t>(rs.uniform() * m);
    const double closed = discrete_difference_k(p, x, k);
    const double direct = discrete_difference(p, x, flip_k(x, k));
    max_err = std::max(max_err, std::abs(closed - direct));
  }
  CHECK(max_err <= 1e-10);
}

TEST_CASE("dominance_check identity Gram always decides") {
  DetectionProblem p =
      make_detection_problem(mat({{1, 0}, {0, 1}}), {0.9, -0.3});
  DominanceContext ctx(p);
  auto d0 = dominance_check(ctx, 0, {});
  CHECK(d0.decided);
  CHECK(d0.symbol == 1);
  auto d1 = dominance_check(ctx, 1, {});
  CHECK(d1.decided);
  CHECK(d1.symbol == -1);
}

TEST_CASE("dominance_check hand example and brute-force confirmation") {
  // columns (1,0) and (0.6,0.8), y = (2.0, 0.1)
  DetectionProblem p =
      make_detection_problem(mat({{1, 0.6}, {0, 0.8}}), {2.0, 0.1});
  DominanceContext ctx(p);
  auto d = dominance_check(ctx, 0, {});
  CHECK(d.decided);
  CHECK(d.symbol == 1);
  // every vector with x_1 = -1 is beaten by some vector with x_1 = +1
  double best_plus = 1e300, best_minus = 1e300;
  for (int pat = 0; pat < 4; ++pat) {
    std::vector<int> x = {(pat & 1) ? 1 : -1, (pat & 2) ? 1 : -1};
    (x[0] == 1 ? best_plus : best_minus) =
        std::min(x[0] == 1 ? best_plus : best_minus, full_metric(p, x));
  }
  CHECK(best_plus < best_minus);

  DetectionProblem q =
      make_detection_problem(mat({{1, 0.6}, {0, 0.8}}), {0.5, 0.1});
  DominanceContext cq(q);
  CHECK_FALSE(dominance_check(cq, 0, {}).decided);
}

TEST_CASE("dominance_check argument guards") {
  DetectionProblem p =
      make_detection_problem(mat({{1, 0}, {0, 1}}), {0.9, -0.3});
  DominanceContext ctx(p);
  CHECK_THROWS_AS(dominance_check(ctx, 2, {}), IndexOutOfRange);
  const int known[] = {1};
  CHECK_THROWS_AS(dominance_check(ctx, 0, std::span<const int>(known, 1)),
                  InvalidArgument);
}

TEST_CASE("unconditional dominance is sound against the ML solution") {
  for (std::uint64_t t = 0; t < 500; ++t) {
    DetectionProblem p = random_mimo_problem(3, 3, 6.0, 777, t);
    DominanceContext ctx(p);
    DecodeResult ml = ml_exhaustive(p);
    for (std::size_t k = 0; k < p.depth(); ++k) {
      auto d = dominance_check(ctx, k, {});
      if (d.decided) CHECK(ml.symbols[k] == d.symbol);
    }
  }
}

TEST_CASE("conditional dominance is sound over completions") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    DetectionProblem p = random_mimo_problem(3, 3, 6.0, 888, t);
    const std::size_t m = p.depth();
    DominanceContext ctx(p);
    // precompute all leaf metrics
    std::vector<double> metric(std::size_t{1} << m);
    std::vector<int> x(m);
    for (std::size_t pat = 0; pat < metric.size(); ++pat) {
      for (std::size_t j = 0; j < m; ++j)
        x[j] = (pat >> (m - 1 - j)) & 1u ? 1 : -1;
      metric[pat] = full_metric(p, x);
    }
    for (std::size_t d = 0; d < m; ++d) {
      for (std::size_t wpat = 0; wpat < (std::size_t{1} << d); ++wpat) {
        std::vector<int> known(d);
        for (std::size_t j = 0; j < d; ++j)
          known[j] = (wpat >> (d - 1 - j)) & 1u ? 1 : -1;
        auto dec = dominance_check(ctx, d, known);
        if (!dec.decided) continue;
        double best_s = 1e300, best_ns = 1e300;
        const std::size_t rest = m - d - 1;
        for (std::size_t rpat = 0; rpat < (std::size_t{1} << rest) * 2; ++rpat) {
          const std::size_t kbit = rpat & 1;
          std::size_t pat = wpat << (m - d);
          pat |= kbit << (m - d - 1);
          pat |= rpat >> 1;
          const int sym = kbit ? 1 : -1;
          double& slot = sym == dec.symbol ? best_s : best_ns;
          slot = std::min(slot, metric[pat]);
        }
        CHECK(best_s <= best_ns);
      }
    }
  }
}

TEST_CASE("king_decode on orthogonal columns visits one path") {
  DetectionProblem p =
      make_detection_problem(mat({{2, 0}, {0, 3}}), {0.9, -0.3});
  DecodeResult r = king_decode(p);
  CHECK(r.visited_nodes == 2);
  CHECK(r.symbols == std::vector<int>{1, -1});
}

TEST_CASE("king_decode equals ml_exhaustive") {
  for (std::uint64_t t = 0; t < 10000; ++t) {
    const double snr = static_cast<double>(t % 6) * 4.0;
    DetectionProblem p = random_mimo_problem(2, 2, snr, 31337, t);
    DecodeResult ml = ml_exhaustive(p);
    DecodeResult kd = king_decode(p);
    const bool same = kd.symbols == ml.symbols;
    CHECK((same || std::abs(kd.metric - ml.metric) <= 1e-9));
    CHECK(kd.visited_nodes <= (std::uint64_t{2} << p.depth()));
  }
}

TEST_CASE("equilibrium necessity of the ML solution") {
  for (std::uint64_t t = 0; t < 2000; ++t) {
    DetectionProblem p = random_mimo_problem(2, 2, 8.0, 5150, t);
    DecodeResult ml = ml_exhaustive(p);
    for (std::size_t k = 0; k < p.depth(); ++k) {
      double bracket = p.z[k];
      for (std::size_t i = 0; i < p.depth(); ++i)
        if (i != k) bracket -= ml.symbols[i] * p.G(k, i);
      if (std::abs(bracket) > 1e-12)
        CHECK(ml.symbols[k] == (bracket > 0 ? 1 : -1));
    }
  }
}

TEST_CASE("king_sphere_decode identity Gram visits exactly M nodes") {
  RandomStream rs({404, 0});
  for (int t = 0; t < 20; ++t) {
    RealMatrix hr(6, 4);
    for (std::size_t j = 0; j < 4; ++j) hr(j, j) = 1.0 + rs.uniform();
    RealVector yr = test::random_vector(6, rs);
    DetectionProblem p = make_detection_problem(std::move(hr), std::move(yr));
    for (bool babai : {false, true}) {
      SearchConfig cfg;
      cfg.babai_radius = babai;
      DecodeResult r = king_sphere_decode(p, cfg);
      CHECK(r.visited_nodes == 4);
    }
  }
}

TEST_CASE("king_sphere_decode equals ML and never exceeds SD node count") {
  for (std::uint64_t t = 0; t < 10000; ++t) {
    const double snr = static_cast<double>(t % 6) * 4.0;
    DetectionProblem p = random_mimo_problem(2, 2, snr, 90210, t);
    DecodeResult ml = ml_exhaustive(p);
    for (Enumeration en : {Enumeration::Natural, Enumeration::ZigZag}) {
      SearchConfig cfg;
      cfg.enumeration = en;
      DecodeResult sd = sphere_decode(p, cfg);
      DecodeResult ksd = king_sphere_decode(p, cfg);
      const bool same = ksd.symbols == ml.symbols;
      CHECK((same || std::abs(ksd.metric - ml.metric) <= 1e-9));
      CHECK(ksd.visited_nodes <= sd.visited_nodes);
    }
  }
}

TEST_CASE("no-fire channels make KSD and SD identical") {
  // Orthogonal columns with y orthogonal to their span: every dominance
  // statistic is exactly zero, so no branch is ever cut.
  RandomStream rs({500, 1});
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 4;
    RealMatrix hr(m + 2, m);
    for (std::size_t j = 0; j < m; ++j) hr(j, j) = 1.0 + rs.uniform();
    RealVector yr(m + 2, 0.0);
    yr[m] = 1.0 + rs.uniform();
    yr[m + 1] = rs.normal();
    DetectionProblem p = make_detection_problem(std::move(hr), std::move(yr));
    DominanceContext ctx(p);
    for (std::size_t k = 0; k < m; ++k) CHECK_FALSE(dominance_check(ctx, k, {}).decided);
    SearchConfig cfg;
    DecodeResult sd = sphere_decode(p, cfg);
    DecodeResult ksd = king_sphere_decode(p, cfg);
    CHECK(ksd.visited_nodes == sd.visited_nodes);
    CHECK(ksd.symbols == sd.symbols);
  }
}
