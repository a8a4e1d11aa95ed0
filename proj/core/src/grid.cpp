#include "salsa/grid.hpp"

#include <limits>

namespace salsa {

ComplexImage to_complex(const Image& image) {
  return ComplexImage(image.height(), image.width(), image.data().cast<Complex>());
}

Image real_part(const ComplexImage& image) {
  return Image(image.height(), image.width(), image.data().real());
}

bool all_finite(const Image& image) { return image.data().allFinite(); }

bool all_finite(const ComplexImage& image) {
  return image.data().real().allFinite() && image.data().imag().allFinite();
}

double relative_error(const Vector& a, const Vector& b) {
  const double denom = std::max(b.norm(), std::numeric_limits<double>::min());
  return (a - b).norm() / denom;
}

double relative_error(const ComplexVector& a, const ComplexVector& b) {
  const double denom = std::max(b.norm(), std::numeric_limits<double>::min());
  return (a - b).norm() / denom;
}

}  // namespace salsa
