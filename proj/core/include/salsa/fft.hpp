#pragma once

#include "salsa/grid.hpp"

#include <memory>

namespace salsa {

// Planned 2D complex DFT of a fixed shape. Transforms are unnormalized; the
// unitary pair dft2/idft2 below applies the 1/sqrt(hw) scaling.
//
// Plans are shared process-wide per shape and are safe to execute from
// several threads at once.
class Fft2 {
 public:
  Fft2(Index height, Index width);

  Index height() const { return height_; }
  Index width() const { return width_; }
  Index size() const { return height_ * width_; }

  // out[k] = sum_n in[n] exp(-2 pi i <k, n> / N). in and out may alias.
  void forward(const Complex* in, Complex* out) const;
  // out[n] = sum_k in[k] exp(+2 pi i <k, n> / N), no 1/N factor.
  void backward(const Complex* in, Complex* out) const;

  ComplexVector forward(const ComplexVector& in) const;
  ComplexVector backward(const ComplexVector& in) const;

  // Unitary transforms of a real signal and back to its real part.
  ComplexVector unitary_forward(const Vector& in) const;
  Vector unitary_backward_real(const ComplexVector& in) const;

 private:
  struct Plans;
  Index height_;
  Index width_;
  std::shared_ptr<const Plans> plans_;
};

// Unitary 2D DFT: ||dft2(x)|| = ||x||, idft2(dft2(x)) = x.
ComplexImage dft2(const ComplexImage& image);
ComplexImage dft2(const Image& image);
ComplexImage idft2(const ComplexImage& spectrum);

}  // namespace salsa
