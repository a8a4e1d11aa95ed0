#include "salsa/problems.hpp"

#include "salsa/rng.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace salsa {

BlurId parse_blur_id(std::string_view text) {
  if (text == "1") return BlurId::uniform_9;
  if (text == "2A") return BlurId::gaussian_a;
  if (text == "2B") return BlurId::gaussian_b;
  if (text == "3A") return BlurId::inverse_quadratic_a;
  if (text == "3B") return BlurId::inverse_quadratic_b;
  throw std::invalid_argument("unknown blur id '" + std::string(text) + "' (expected 1, 2A, 2B, 3A or 3B)");
}

std::string_view to_string(BlurId id) {
  switch (id) {
    case BlurId::uniform_9:
      return "1";
    case BlurId::gaussian_a:
      return "2A";
    case BlurId::gaussian_b:
      return "2B";
    case BlurId::inverse_quadratic_a:
      return "3A";
    case BlurId::inverse_quadratic_b:
      return "3B";
  }
  return "?";
}

Kernel make_blur_unnormalized(BlurId id) {
  switch (id) {
    case BlurId::uniform_9:
      return Kernel(9, std::vector<double>(81, 1.0));
    case BlurId::gaussian_a:
    case BlurId::gaussian_b: {
      std::vector<double> taps;
      for (int i = -7; i <= 7; ++i) {
        for (int j = -7; j <= 7; ++j) taps.push_back(std::exp(-(i * i + j * j) / (2.0 * 2.0 * 2.0)));
      }
      return Kernel(15, std::move(taps));
    }
    case BlurId::inverse_quadratic_a:
    case BlurId::inverse_quadratic_b:
      return Kernel::inverse_quadratic(7);
  }
  throw std::invalid_argument("make_blur: unknown id");
}

Kernel make_blur(BlurId id) { return make_blur_unnormalized(id).normalized(); }

double blur_noise_variance(BlurId id) {
  switch (id) {
    case BlurId::uniform_9:
      return 0.56 * 0.56;
    case BlurId::gaussian_a:
    case BlurId::inverse_quadratic_a:
      return 2.0;
    case BlurId::gaussian_b:
    case BlurId::inverse_quadratic_b:
      return 8.0;
  }
  throw std::invalid_argument("blur_noise_variance: unknown id");
}

MaskOp make_radial_mask(Index height, Index width, int lines) {
  if (lines < 1) throw std::invalid_argument("make_radial_mask: lines must be >= 1");
  const Index ch = height / 2;
  const Index cw = width / 2;
  std::vector<char> hit(static_cast<std::size_t>(height * width), 0);
  const double reach = static_cast<double>(std::max(height, width));
  const auto steps = static_cast<long>(2.0 * reach);
  for (int l = 0; l < lines; ++l) {
    const double angle = std::numbers::pi * l / lines;
    const double dr = -std::sin(angle);
    const double dc = std::cos(angle);
    // Half-pixel steps; rounding is symmetric in t so each line is mirrored
    // through the origin.
    for (long s = -steps; s <= steps; ++s) {
      const double t = 0.5 * static_cast<double>(s);
      const Index r = ch + static_cast<Index>(std::round(t * dr));
      const Index c = cw + static_cast<Index>(std::round(t * dc));
      if (r < 0 || r >= height || c < 0 || c >= width) continue;
      const Index rr = ((r - ch) % height + height) % height;
      const Index cc = ((c - cw) % width + width) % width;
      hit[static_cast<std::size_t>(rr * width + cc)] = 1;
    }
  }
  std::vector<Index> kept;
  for (Index i = 0; i < height * width; ++i) {
    if (hit[static_cast<std::size_t>(i)]) kept.push_back(i);
  }
  return MaskOp(std::move(kept), height, width);
}

namespace {

struct Ellipse {
  double intensity, a, b, x0, y0, phi_deg;
};

// Modified Shepp-Logan (Toft), intensities chosen for display in [0, 1].
constexpr std::array<Ellipse, 10> kSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
}};

}  // namespace

Image shepp_logan(Index height, Index width) {
  if (height != width) throw std::invalid_argument("shepp_logan: phantom must be square");
  if (height < 2) throw std::invalid_argument("shepp_logan: size must be >= 2");
  const Index n = height;
  const double half = 0.5 * static_cast<double>(n - 1);
  Image image(n, n);
  for (const Ellipse& e : kSheppLogan) {
    const double phi = e.phi_deg * std::numbers::pi / 180.0;
    const double cp = std::cos(phi), sp = std::sin(phi);
    for (Index r = 0; r < n; ++r) {
      const double y = (half - static_cast<double>(r)) / half;
      for (Index c = 0; c < n; ++c) {
        const double x = (static_cast<double>(c) - half) / half;
        const double xr = (x - e.x0) * cp + (y - e.y0) * sp;
        const double yr = -(x - e.x0) * sp + (y - e.y0) * cp;
        if ((xr * xr) / (e.a * e.a) + (yr * yr) / (e.b * e.b) <= 1.0) image(r, c) += e.intensity;
      }
    }
  }
  image.data() = image.data().cwiseMax(0.0).cwiseMin(1.0);
  return image;
}

MaskOp make_missing_pixel_mask(Index height, Index width, double missing_fraction, std::uint64_t seed) {
  if (!(missing_fraction >= 0.0 && missing_fraction < 1.0)) {
    throw std::invalid_argument("make_missing_pixel_mask: missing_fraction must be in [0, 1)");
  }
  const Index n = height * width;
  const auto missing = static_cast<Index>(std::floor(missing_fraction * static_cast<double>(n)));
  auto rng = make_rng(seed, RngStream::mask);
  const auto dropped = sample_without_replacement(rng, n, missing);
  std::vector<Index> kept;
  kept.reserve(static_cast<std::size_t>(n - missing));
  std::size_t next = 0;
  for (Index i = 0; i < n; ++i) {
    if (next < dropped.size() && dropped[next] == i) {
      ++next;
      continue;
    }
    kept.push_back(i);
  }
  return MaskOp(std::move(kept), height, width);
}

Vector add_gaussian_noise(const Vector& clean, double variance, std::uint64_t seed) {
  if (!(variance >= 0.0)) throw std::invalid_argument("add_gaussian_noise: variance must be >= 0");
  if (variance == 0.0) return clean;
  auto rng = make_rng(seed, RngStream::noise);
  const double sigma = std::sqrt(variance);
  Vector noisy = clean;
  for (Index i = 0; i < noisy.size(); ++i) noisy[i] += sigma * rng.normal();
  return noisy;
}

Image center_crop(const Image& image, Index height, Index width) {
  if (height > image.height() || width > image.width() || height <= 0 || width <= 0) {
    throw std::invalid_argument("center_crop: crop larger than image");
  }
  const Index r0 = (image.height() - height) / 2;
  const Index c0 = (image.width() - width) / 2;
  Image out(height, width);
  for (Index r = 0; r < height; ++r) {
    for (Index c = 0; c < width; ++c) out(r, c) = image(r0 + r, c0 + c);
  }
  return out;
}

Metrics compute_metrics(const Image& truth, const std::optional<Image>& degraded, const Image& estimate,
                        bool require_isnr) {
  if (!truth.same_shape(estimate)) throw std::invalid_argument("compute_metrics: estimate shape mismatch");
  if (require_isnr && !degraded) throw std::invalid_argument("compute_metrics: ISNR needs a degraded image");
  Metrics m;
  const double err = (estimate.data() - truth.data()).squaredNorm();
  m.mse = err / static_cast<double>(truth.size());
  if (degraded) {
    if (!truth.same_shape(*degraded)) throw std::invalid_argument("compute_metrics: degraded shape mismatch");
    const double before = (degraded->data() - truth.data()).squaredNorm();
    m.isnr_db = err == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(before / err);
  }
  return m;
}

std::string format_metric(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace salsa
