#pragma once

#include <stdexcept>

namespace kingsd {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct RankDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSymmetric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPSD : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace kingsd
