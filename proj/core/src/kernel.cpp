#include "salsa/kernel.hpp"

#include "salsa/fft.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace salsa {

Kernel::Kernel(int support, std::vector<double> taps) : support_(support), taps_(std::move(taps)) {
  if (support < 1 || support % 2 == 0) throw std::invalid_argument("Kernel: support must be odd and positive");
  if (taps_.size() != static_cast<std::size_t>(support) * support) {
    throw std::invalid_argument("Kernel: expected support*support taps");
  }
  for (double t : taps_) {
    if (!std::isfinite(t)) throw std::invalid_argument("Kernel: non-finite tap");
  }
}

Kernel Kernel::identity() { return Kernel(1, {1.0}); }

Kernel Kernel::uniform(int support) {
  const auto n = static_cast<std::size_t>(support) * support;
  return Kernel(support, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Kernel Kernel::gaussian(int support, double sigma) {
  if (sigma <= 0) throw std::invalid_argument("Kernel::gaussian: sigma must be positive");
  const int r = support / 2;
  std::vector<double> taps;
  taps.reserve(static_cast<std::size_t>(support) * support);
  for (int i = -r; i <= r; ++i) {
    for (int j = -r; j <= r; ++j) taps.push_back(std::exp(-(i * i + j * j) / (2.0 * sigma * sigma)));
  }
  return Kernel(support, std::move(taps)).normalized();
}

Kernel Kernel::inverse_quadratic(int radius) {
  const int support = 2 * radius + 1;
  std::vector<double> taps;
  taps.reserve(static_cast<std::size_t>(support) * support);
  for (int i = -radius; i <= radius; ++i) {
    for (int j = -radius; j <= radius; ++j) taps.push_back(1.0 / (1.0 + i * i + j * j));
  }
  return Kernel(support, std::move(taps));
}

std::size_t Kernel::index(int di, int dj) const {
  const int r = radius();
  if (di < -r || di > r || dj < -r || dj > r) throw std::out_of_range("Kernel: offset outside support");
  return static_cast<std::size_t>(di + r) * support_ + static_cast<std::size_t>(dj + r);
}

double Kernel::sum() const { return std::accumulate(taps_.begin(), taps_.end(), 0.0); }

Kernel Kernel::normalized() const {
  const double s = sum();
  if (s == 0.0) throw std::invalid_argument("Kernel::normalized: taps sum to zero");
  std::vector<double> taps = taps_;
  for (double& t : taps) t /= s;
  return Kernel(support_, std::move(taps));
}

ComplexImage kernel_frequency_response(const Kernel& kernel, Index height, Index width) {
  if (kernel.support() > std::min(height, width)) {
    throw std::invalid_argument("kernel_frequency_response: kernel larger than image");
  }
  ComplexImage embedded(height, width);
  const int r = kernel.radius();
  for (int di = -r; di <= r; ++di) {
    for (int dj = -r; dj <= r; ++dj) {
      const Index row = (di % height + height) % height;
      const Index col = (dj % width + width) % width;
      embedded(row, col) += kernel.at(di, dj);
    }
  }
  const Fft2 fft(height, width);
  ComplexVector response = fft.forward(embedded.data());
  return ComplexImage(height, width, std::move(response));
}

Image convolve_periodic(const Kernel& kernel, const Image& image) {
  const ComplexImage response = kernel_frequency_response(kernel, image.height(), image.width());
  const Fft2 fft(image.height(), image.width());
  ComplexVector spectrum = fft.unitary_forward(image.data());
  spectrum.array() *= response.data().array();
  return Image(image.height(), image.width(), fft.unitary_backward_real(spectrum));
}

}  // namespace salsa
