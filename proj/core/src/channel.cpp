#include "kingsd/channel.hpp"

#include <cmath>

namespace kingsd {

RealMatrix kronecker_correlation(double rho, std::size_t n) {
  if (rho < 0.0 || rho >= 1.0)
    throw InvalidArgument("kronecker_correlation: rho must be in [0,1)");
  RealMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = static_cast<double>(i) - static_cast<double>(j);
      r(i, j) = std::pow(rho, d * d);
    }
  return r;
}

ComplexMatrix draw_iid_channel(std::size_t n, std::size_t k, RngStream rng) {
  RandomStream rs(rng);
  ComplexMatrix h(n, k);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const double a = rs.normal();
      const double b = rs.normal();
      h(i, j) = cplx(a * inv_sqrt2, b * inv_sqrt2);
    }
  return h;
}

ComplexMatrix draw_kronecker_channel(const ChannelSpec& spec, RngStream rng) {
  if (!spec.fading)
    throw InvalidArgument("draw_kronecker_channel: spec is not Kronecker");
  const RealMatrix st = psd_sqrt(kronecker_correlation(spec.fading->rho_t, spec.k));
  const RealMatrix sr = psd_sqrt(kronecker_correlation(spec.fading->rho_r, spec.n));
  const ComplexMatrix g = draw_iid_channel(spec.n, spec.k, rng);

  ComplexMatrix h(spec.n, spec.k);
  for (std::size_t i = 0; i < spec.n; ++i)
    for (std::size_t j = 0; j < spec.k; ++j) {
      cplx acc = 0.0;
      for (std::size_t a = 0; a < spec.n; ++a)
        for (std::size_t b = 0; b < spec.k; ++b)
          acc += sr(i, a) * g(a, b) * st(b, j);
      h(i, j) = acc;
    }
  return h;
}

ComplexMatrix draw_channel(const ChannelSpec& spec, RngStream rng) {
  return spec.fading ? draw_kronecker_channel(spec, rng)
                     : draw_iid_channel(spec.n, spec.k, rng);
}

ComplexVector add_noise(const ComplexVector& y_clean, double eta0, RngStream rng) {
  if (eta0 <= 0.0) throw InvalidArgument("add_noise: eta0 must be positive");
  RandomStream rs(rng);
  ComplexVector y(y_clean.size());
  const double sigma = std::sqrt(eta0 / 2.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double a = rs.normal();
    const double b = rs.normal();
    y[i] = y_clean[i] + cplx(a * sigma, b * sigma);
  }
  return y;
}

double eta0_for_snr(double snr_db, double ex) {
  if (ex <= 0.0) throw InvalidArgument("eta0_for_snr: Ex must be positive");
  return ex / std::pow(10.0, snr_db / 10.0);
}

}  // namespace kingsd
