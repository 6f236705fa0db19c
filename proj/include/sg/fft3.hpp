#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "sg/types.hpp"

namespace sg {

// In-place 3-D DFT of node-major (x-fastest) data; inverse carries the 1/N
// normalization so fft3(fwd) followed by fft3(inv) is the identity.
void fft3(Eigen::VectorXcd& data, const std::array<std::int64_t, 3>& dims,
          bool inverse);

// Angular frequency of DFT bin j for n samples with grid spacing h
// (standard wrap: bins above n/2 are negative).
Real fft_freq(std::int64_t j, std::int64_t n, Real spacing);

}  // namespace sg
