#include "salsa/frames.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace salsa {

std::string_view to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::orthogonal_haar:
      return "orthogonal-haar";
    case FrameKind::undecimated_haar:
      return "undecimated-haar";
  }
  return "unknown";
}

Frame::Frame(Index height, Index width, int levels) : height_(height), width_(width), levels_(levels) {
  if (height <= 0 || width <= 0) throw std::invalid_argument("Frame: dimensions must be positive");
  if (levels < 1 || levels > 30) throw std::invalid_argument("Frame: levels must be in [1, 30]");
  const Index block = Index{1} << levels;
  if (height % block != 0 || width % block != 0) {
    throw std::invalid_argument("Frame: image dimensions must be divisible by 2^levels (" + std::to_string(block) +
                                ")");
  }
}

Vector Frame::analysis(const Vector& image) const {
  if (image.size() != image_dim()) throw std::invalid_argument("Frame::analysis: dimension mismatch");
  return do_analysis(image);
}

Vector Frame::analysis(const Image& image) const {
  if (image.height() != height_ || image.width() != width_) {
    throw std::invalid_argument("Frame::analysis: image shape mismatch");
  }
  return do_analysis(image.data());
}

Vector Frame::synthesis(const Vector& coefficients) const {
  if (coefficients.size() != coeff_dim()) throw std::invalid_argument("Frame::synthesis: dimension mismatch");
  return do_synthesis(coefficients);
}

Image Frame::synthesis_image(const Vector& coefficients) const {
  return Image(height_, width_, synthesis(coefficients));
}

// ---------------------------------------------------------------------------
// Orthogonal Haar

OrthogonalHaar::OrthogonalHaar(Index height, Index width, int levels) : Frame(height, width, levels) {}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// One orthonormal Haar step over the top-left rows x cols block, in place.
void haar_forward_block(double* data, Index stride, Index rows, Index cols, std::vector<double>& scratch) {
  scratch.resize(static_cast<std::size_t>(std::max(rows, cols)));
  const Index half_c = cols / 2;
  for (Index r = 0; r < rows; ++r) {
    double* row = data + r * stride;
    for (Index c = 0; c < half_c; ++c) {
      scratch[c] = (row[2 * c] + row[2 * c + 1]) * kInvSqrt2;
      scratch[half_c + c] = (row[2 * c] - row[2 * c + 1]) * kInvSqrt2;
    }
    std::copy_n(scratch.begin(), cols, row);
  }
  const Index half_r = rows / 2;
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < half_r; ++r) {
      const double a = data[(2 * r) * stride + c];
      const double b = data[(2 * r + 1) * stride + c];
      scratch[r] = (a + b) * kInvSqrt2;
      scratch[half_r + r] = (a - b) * kInvSqrt2;
    }
    for (Index r = 0; r < rows; ++r) data[r * stride + c] = scratch[r];
  }
}

void haar_inverse_block(double* data, Index stride, Index rows, Index cols, std::vector<double>& scratch) {
  scratch.resize(static_cast<std::size_t>(std::max(rows, cols)));
  const Index half_r = rows / 2;
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < half_r; ++r) {
      const double s = data[r * stride + c];
      const double d = data[(half_r + r) * stride + c];
      scratch[2 * r] = (s + d) * kInvSqrt2;
      scratch[2 * r + 1] = (s - d) * kInvSqrt2;
    }
    for (Index r = 0; r < rows; ++r) data[r * stride + c] = scratch[r];
  }
  const Index half_c = cols / 2;
  for (Index r = 0; r < rows; ++r) {
    double* row = data + r * stride;
    for (Index c = 0; c < half_c; ++c) {
      scratch[2 * c] = (row[c] + row[half_c + c]) * kInvSqrt2;
      scratch[2 * c + 1] = (row[c] - row[half_c + c]) * kInvSqrt2;
    }
    std::copy_n(scratch.begin(), cols, row);
  }
}

}  // namespace

Vector OrthogonalHaar::do_analysis(const Vector& image) const {
  Vector out = image;
  std::vector<double> scratch;
  for (int level = 0; level < levels(); ++level) {
    haar_forward_block(out.data(), width(), height() >> level, width() >> level, scratch);
  }
  return out;
}

Vector OrthogonalHaar::do_synthesis(const Vector& coefficients) const {
  Vector out = coefficients;
  std::vector<double> scratch;
  for (int level = levels() - 1; level >= 0; --level) {
    haar_inverse_block(out.data(), width(), height() >> level, width() >> level, scratch);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Undecimated Haar

UndecimatedHaar::UndecimatedHaar(Index height, Index width, int levels) : Frame(height, width, levels) {}

namespace {

// lo[n] = (x[n] + x[n+s]) / 2, hi[n] = (x[n] - x[n+s]) / 2 along columns
// (horizontal) of an h x w image, periodic.
void split_horizontal(const double* x, Index h, Index w, Index s, double* lo, double* hi) {
  for (Index r = 0; r < h; ++r) {
    const double* row = x + r * w;
    for (Index c = 0; c < w; ++c) {
      const double a = row[c];
      const double b = row[(c + s) % w];
      lo[r * w + c] = 0.5 * (a + b);
      hi[r * w + c] = 0.5 * (a - b);
    }
  }
}

void split_vertical(const double* x, Index h, Index w, Index s, double* lo, double* hi) {
  for (Index r = 0; r < h; ++r) {
    const double* row = x + r * w;
    const double* next = x + ((r + s) % h) * w;
    for (Index c = 0; c < w; ++c) {
      lo[r * w + c] = 0.5 * (row[c] + next[c]);
      hi[r * w + c] = 0.5 * (row[c] - next[c]);
    }
  }
}

// Adjoint of split_horizontal: out[n] = (lo[n] + lo[n-s]) / 2 + (hi[n] - hi[n-s]) / 2.
void merge_horizontal(const double* lo, const double* hi, Index h, Index w, Index s, double* out) {
  for (Index r = 0; r < h; ++r) {
    for (Index c = 0; c < w; ++c) {
      const Index prev = r * w + (c - s % w + w) % w;
      const Index here = r * w + c;
      out[here] = 0.5 * (lo[here] + lo[prev]) + 0.5 * (hi[here] - hi[prev]);
    }
  }
}

void merge_vertical(const double* lo, const double* hi, Index h, Index w, Index s, double* out) {
  for (Index r = 0; r < h; ++r) {
    const Index pr = (r - s % h + h) % h;
    for (Index c = 0; c < w; ++c) {
      const Index here = r * w + c;
      const Index prev = pr * w + c;
      out[here] = 0.5 * (lo[here] + lo[prev]) + 0.5 * (hi[here] - hi[prev]);
    }
  }
}

}  // namespace

Vector UndecimatedHaar::do_analysis(const Vector& image) const {
  const Index h = height(), w = width(), n = image_dim();
  Vector out(coeff_dim());
  Vector approx = image;
  Vector col_lo(n), col_hi(n);
  for (int level = 0; level < levels(); ++level) {
    const Index s = Index{1} << level;
    split_horizontal(approx.data(), h, w, s, col_lo.data(), col_hi.data());
    double* band = out.data() + Index{3} * level * n;
    // (row-high, col-low), (row-low, col-high), (row-high, col-high)
    Vector next_approx(n);
    split_vertical(col_lo.data(), h, w, s, next_approx.data(), band);
    split_vertical(col_hi.data(), h, w, s, band + n, band + 2 * n);
    approx.swap(next_approx);
  }
  out.tail(n) = approx;
  return out;
}

Vector UndecimatedHaar::do_synthesis(const Vector& coefficients) const {
  const Index h = height(), w = width(), n = image_dim();
  Vector approx = coefficients.tail(n);
  Vector col_lo(n), col_hi(n);
  for (int level = levels() - 1; level >= 0; --level) {
    const Index s = Index{1} << level;
    const double* band = coefficients.data() + Index{3} * level * n;
    merge_vertical(approx.data(), band, h, w, s, col_lo.data());
    merge_vertical(band + n, band + 2 * n, h, w, s, col_hi.data());
    merge_horizontal(col_lo.data(), col_hi.data(), h, w, s, approx.data());
  }
  return approx;
}

std::shared_ptr<const Frame> make_frame(FrameKind kind, Index height, Index width, int levels) {
  switch (kind) {
    case FrameKind::orthogonal_haar:
      return std::make_shared<OrthogonalHaar>(height, width, levels);
    case FrameKind::undecimated_haar:
      return std::make_shared<UndecimatedHaar>(height, width, levels);
  }
  throw std::invalid_argument("make_frame: unknown frame kind");
}

}  // namespace salsa
