#include "sg/fft3.hpp"

#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace sg {

void fft3(Eigen::VectorXcd& data, const std::array<std::int64_t, 3>& dims,
          bool inverse) {
  const std::int64_t nx = dims[0], ny = dims[1], nz = dims[2];
  if (data.size() != nx * ny * nz) {
    throw std::invalid_argument("fft3: data size does not match dims");
  }
  Eigen::FFT<Real> fft;
  const std::int64_t stride[3] = {1, nx, nx * ny};

  for (int axis = 0; axis < 3; ++axis) {
    const std::int64_t n = dims[axis];
    const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
    Eigen::VectorXcd line(n), out(n);
    for (std::int64_t j2 = 0; j2 < dims[a2]; ++j2) {
      for (std::int64_t j1 = 0; j1 < dims[a1]; ++j1) {
        const std::int64_t base = j1 * stride[a1] + j2 * stride[a2];
        for (std::int64_t j = 0; j < n; ++j) line[j] = data[base + j * stride[axis]];
        if (inverse) {
          fft.inv(out, line);
        } else {
          fft.fwd(out, line);
        }
        for (std::int64_t j = 0; j < n; ++j) data[base + j * stride[axis]] = out[j];
      }
    }
  }
}

Real fft_freq(std::int64_t j, std::int64_t n, Real spacing) {
  const std::int64_t k = (j <= (n - 1) / 2) ? j : j - n;
  return 2.0 * pi * static_cast<Real>(k) / (static_cast<Real>(n) * spacing);
}

}  // namespace sg
