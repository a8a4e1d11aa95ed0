#pragma once

#include "salsa/grid.hpp"

#include <vector>

namespace salsa {

// Square convolution kernel with odd support, taps addressed by signed offsets
// (di, dj) from the center.
class Kernel {
 public:
  // taps are row-major, support*support entries.
  Kernel(int support, std::vector<double> taps);

  static Kernel identity();
  static Kernel uniform(int support);
  static Kernel gaussian(int support, double sigma);
  // h(i, j) = 1 / (1 + i^2 + j^2) on offsets |i|, |j| <= radius.
  static Kernel inverse_quadratic(int radius);

  int support() const { return support_; }
  int radius() const { return support_ / 2; }
  double at(int di, int dj) const { return taps_[index(di, dj)]; }
  const std::vector<double>& taps() const { return taps_; }

  double sum() const;
  Kernel normalized() const;

 private:
  std::size_t index(int di, int dj) const;

  int support_;
  std::vector<double> taps_;
};

// Eigenvalues of the periodic convolution y = k (*) x on an h x w grid: the
// unnormalized DFT of the kernel embedded with offset (0,0) at index (0,0)
// and negative offsets wrapped. With U the unitary DFT, B = U^H diag(D) U.
ComplexImage kernel_frequency_response(const Kernel& kernel, Index height, Index width);

// Periodic convolution through the frequency response.
Image convolve_periodic(const Kernel& kernel, const Image& image);

}  // namespace salsa
