#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace salsa {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

// Dense 2D grid stored row-major in a flat Eigen vector, so that images can
// be handed to operators as plain vectors without copies.
template <typename T>
class Grid {
 public:
  using Scalar = T;
  using Storage = Eigen::Matrix<T, Eigen::Dynamic, 1>;

  Grid() = default;

  Grid(Index height, Index width) : height_(height), width_(width), data_(Storage::Zero(height * width)) {
    check_shape();
  }

  Grid(Index height, Index width, Storage data) : height_(height), width_(width), data_(std::move(data)) {
    check_shape();
    if (data_.size() != height_ * width_) {
      throw std::invalid_argument("Grid: data length " + std::to_string(data_.size()) + " != " +
                                  std::to_string(height_) + "x" + std::to_string(width_));
    }
  }

  static Grid constant(Index height, Index width, T value) {
    return Grid(height, width, Storage::Constant(height * width, value));
  }

  Index height() const { return height_; }
  Index width() const { return width_; }
  Index size() const { return data_.size(); }

  T& operator()(Index row, Index col) { return data_[row * width_ + col]; }
  const T& operator()(Index row, Index col) const { return data_[row * width_ + col]; }

  const Storage& data() const& { return data_; }
  Storage& data() & { return data_; }
  Storage data() && { return std::move(data_); }

  bool same_shape(const Grid& other) const { return height_ == other.height_ && width_ == other.width_; }

  template <typename U>
  bool same_shape(const Grid<U>& other) const {
    return height_ == other.height() && width_ == other.width();
  }

 private:
  void check_shape() const {
    if (height_ <= 0 || width_ <= 0) throw std::invalid_argument("Grid: dimensions must be positive");
  }

  Index height_ = 0;
  Index width_ = 0;
  Storage data_;
};

using Image = Grid<double>;
using ComplexImage = Grid<Complex>;

ComplexImage to_complex(const Image& image);
Image real_part(const ComplexImage& image);

// True when every entry is finite (no NaN or Inf).
bool all_finite(const Image& image);
bool all_finite(const ComplexImage& image);

// Relative l2 distance ||a - b|| / max(||b||, tiny).
double relative_error(const Vector& a, const Vector& b);
double relative_error(const ComplexVector& a, const ComplexVector& b);

}  // namespace salsa
