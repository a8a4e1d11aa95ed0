#pragma once

#include "salsa/grid.hpp"

#include <memory>
#include <string_view>

namespace salsa {

enum class FrameKind { orthogonal_haar, undecimated_haar };

std::string_view to_string(FrameKind kind);

// Synthesis operator W (coefficients -> image) with analysis adjoint W^H.
// Every frame here is Parseval: synthesis(analysis(x)) == x.
class Frame {
 public:
  virtual ~Frame() = default;

  virtual FrameKind kind() const = 0;
  int levels() const { return levels_; }
  Index height() const { return height_; }
  Index width() const { return width_; }
  Index image_dim() const { return height_ * width_; }
  virtual Index coeff_dim() const = 0;

  // W^H x.
  Vector analysis(const Vector& image) const;
  Vector analysis(const Image& image) const;
  // W beta.
  Vector synthesis(const Vector& coefficients) const;
  Image synthesis_image(const Vector& coefficients) const;

 protected:
  Frame(Index height, Index width, int levels);

  virtual Vector do_analysis(const Vector& image) const = 0;
  virtual Vector do_synthesis(const Vector& coefficients) const = 0;

 private:
  Index height_;
  Index width_;
  int levels_;
};

// Separable orthonormal Haar basis (Mallat layout, coarsest band top-left).
// W is square and unitary.
class OrthogonalHaar final : public Frame {
 public:
  OrthogonalHaar(Index height, Index width, int levels);
  FrameKind kind() const override { return FrameKind::orthogonal_haar; }
  Index coeff_dim() const override { return image_dim(); }

 protected:
  Vector do_analysis(const Vector& image) const override;
  Vector do_synthesis(const Vector& coefficients) const override;
};

// Undecimated (translation-invariant) Haar frame with periodic boundaries.
// Level j filters with taps at distance 2^j: lowpass (x[n] + x[n+s]) / 2 and
// highpass (x[n] - x[n+s]) / 2 along each axis, so the squared responses sum
// to one and the frame is Parseval with constant 1.
//
// Coefficient layout, each band an image-sized block: for level 0..L-1 the
// (row-high, col-low), (row-low, col-high), (row-high, col-high) details,
// followed by the final approximation band. coeff_dim = n * (3L + 1).
class UndecimatedHaar final : public Frame {
 public:
  UndecimatedHaar(Index height, Index width, int levels);
  FrameKind kind() const override { return FrameKind::undecimated_haar; }
  Index coeff_dim() const override { return image_dim() * (3 * levels() + 1); }

 protected:
  Vector do_analysis(const Vector& image) const override;
  Vector do_synthesis(const Vector& coefficients) const override;
};

std::shared_ptr<const Frame> make_frame(FrameKind kind, Index height, Index width, int levels = 4);

}  // namespace salsa
