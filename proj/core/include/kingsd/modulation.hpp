#pragma once

#include "kingsd/problem.hpp"

namespace kingsd {

enum class Modulation { FourQam, SixteenQam };

/// Per-real-dimension scale so that E|x|^2 over the K complex symbols
/// equals Ex. 4-QAM: sqrt(Ex/(2K)); 16-QAM: sqrt(Ex/(10K)).
double normalize_energy(Modulation mod, std::size_t k, double ex);

/// Doubles the model to real dimensions with alphabet {-1,+1}; the scale
/// is absorbed into the channel matrix so detectors search unit BPSK.
DetectionProblem lift_4qam(const ComplexMatrix& h, const ComplexVector& y,
                           double scale);

/// [H, 2H]: writes a 16-QAM system over K antennas as a 4-QAM system over
/// 2K, via x = x1 + 2*x2.
ComplexMatrix expand_16qam(const ComplexMatrix& h);

/// Entrywise x1 + 2*x2; 4-QAM inputs land on the {+-1,+-3} grid.
ComplexVector recompose_16qam(const ComplexVector& x1, const ComplexVector& x2);

/// Maps a decoded {-1,+1} search vector back to the K unscaled complex
/// grid symbols (4-QAM: +-1+-i; 16-QAM: recomposed {+-1,+-3} grid).
ComplexVector symbols_from_search(Modulation mod, const std::vector<int>& s,
                                  std::size_t k);

/// Search-vector length for K transmit antennas: 2K (4-QAM) or 4K (16-QAM).
std::size_t search_depth(Modulation mod, std::size_t k);

}  // namespace kingsd
