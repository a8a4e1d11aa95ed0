#pragma once

#include "salsa/grid.hpp"
#include "salsa/kernel.hpp"
#include "salsa/operators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace salsa {

// Rows of the deconvolution benchmark table.
enum class BlurId { uniform_9, gaussian_a, gaussian_b, inverse_quadratic_a, inverse_quadratic_b };

BlurId parse_blur_id(std::string_view text);  // "1", "2A", "2B", "3A", "3B"
std::string_view to_string(BlurId id);

// Kernel taps before normalization (uniform 9x9; 15x15 Gaussian with sigma 2;
// 15x15 1/(1 + i^2 + j^2)).
Kernel make_blur_unnormalized(BlurId id);
// Unit-sum kernel for the row.
Kernel make_blur(BlurId id);
// Noise variance paired with the row: 0.56^2, 2, 8, 2, 8.
double blur_noise_variance(BlurId id);

// DFT-grid samples on `lines` lines through the zero frequency at angles
// l * pi / lines, rasterized nearest-neighbour on the centered grid and
// returned in DC-at-origin indexing.
MaskOp make_radial_mask(Index height, Index width, int lines);

// Modified (Toft) ten-ellipse Shepp-Logan head phantom, square, in [0, 1].
Image shepp_logan(Index height, Index width);

// Pixel mask losing exactly floor(missing_fraction * n) pixels.
MaskOp make_missing_pixel_mask(Index height, Index width, double missing_fraction, std::uint64_t seed);

// Adds i.i.d. N(0, variance) to every entry. For interleaved complex data
// this is circular complex noise of variance 2 * variance per sample, so pass
// sigma^2 / 2 for complex variance sigma^2.
Vector add_gaussian_noise(const Vector& clean, double variance, std::uint64_t seed);

Image center_crop(const Image& image, Index height, Index width);

struct Metrics {
  double mse = 0.0;
  // +inf when the estimate is exact; absent without a degraded image.
  std::optional<double> isnr_db;
  double final_objective = 0.0;
  int iterations = 0;
};

// mse = ||estimate - truth||^2 / n and, when `degraded` is given,
// isnr = 10 log10(||degraded - truth||^2 / ||estimate - truth||^2).
// Throws when require_isnr is set and no degraded image is available.
Metrics compute_metrics(const Image& truth, const std::optional<Image>& degraded, const Image& estimate,
                        bool require_isnr = false);

std::string format_metric(double value);

}  // namespace salsa
