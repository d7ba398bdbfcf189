#pragma once

#include <optional>

#include "kingsd/linalg.hpp"
#include "kingsd/rng.hpp"

namespace kingsd {

struct KroneckerFading {
  double rho_t = 0.0;  // transmit correlation index, in [0, 1)
  double rho_r = 0.0;  // receive correlation index, in [0, 1)
};

struct ChannelSpec {
  std::size_t n = 1;  // receive antennas
  std::size_t k = 1;  // transmit antennas
  std::optional<KroneckerFading> fading;  // nullopt -> i.i.d. Rayleigh
};

/// Correlation matrix with entries rho^((i-j)^2): unit diagonal, first
/// row 1, rho, rho^4, ..., rho^((n-1)^2).
RealMatrix kronecker_correlation(double rho, std::size_t n);

/// Entries (a + ib)/sqrt(2) with a, b standard normal, so E|h|^2 = 1.
ComplexMatrix draw_iid_channel(std::size_t n, std::size_t k, RngStream rng);

/// H = R_R^{1/2} G R_T^{1/2} with i.i.d. core G; identity correlations
/// reproduce the i.i.d. draw bit-for-bit on the same stream.
ComplexMatrix draw_kronecker_channel(const ChannelSpec& spec, RngStream rng);

ComplexMatrix draw_channel(const ChannelSpec& spec, RngStream rng);

/// Adds complex AWGN with per-entry variance eta0 (eta0/2 per real part).
ComplexVector add_noise(const ComplexVector& y_clean, double eta0, RngStream rng);

/// eta0 = Ex / 10^(snr_db/10), from SNR = Ex/eta0.
double eta0_for_snr(double snr_db, double ex);

}  // namespace kingsd
