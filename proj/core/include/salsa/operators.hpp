#pragma once

#include "salsa/fft.hpp"
#include "salsa/frames.hpp"
#include "salsa/grid.hpp"
#include "salsa/kernel.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace salsa {

enum class Structure { circulant_convolution, binary_mask, partial_fourier, synthesis_composite, generic_dense };

std::string_view to_string(Structure s);

// A^H A written as Q^H diag(eigenvalues) Q with Q either the identity (pixel
// basis) or the unitary 2D DFT (Fourier basis). Eigenvalues are real and >= 0.
struct DiagonalGram {
  enum class Basis { pixel, fourier };
  Basis basis = Basis::pixel;
  Index height = 0;
  Index width = 0;
  Vector eigenvalues;
};

// Exact solver for (A^H A + mu I) x = rhs, built for one mu. Any filters it
// needs are computed once at construction.
class GramSolver {
 public:
  virtual ~GramSolver() = default;
  double mu() const { return mu_; }
  Index dim() const { return dim_; }
  Vector solve(const Vector& rhs) const;

 protected:
  GramSolver(double mu, Index dim);
  virtual Vector do_solve(const Vector& rhs) const = 0;

 private:
  double mu_;
  Index dim_;
};

// Real-linear observation operator A: R^in_dim -> R^out_dim. Complex-valued
// observations are stored as interleaved (re, im) pairs, and adjoint() is the
// adjoint for the real inner product, so <A u, v> = <u, A^H v> always holds.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Index in_dim() const = 0;
  virtual Index out_dim() const = 0;
  virtual Structure structure() const = 0;

  Vector apply(const Vector& x) const;
  Vector adjoint(const Vector& y) const;

  // Pixel- or Fourier-diagonal A^H A, when the operator has one.
  virtual std::optional<DiagonalGram> diagonal_gram() const { return std::nullopt; }

  // Throws std::invalid_argument if mu <= 0, std::logic_error if the
  // structure class has no exact solver.
  std::unique_ptr<GramSolver> gram_solver(double mu) const;

 protected:
  virtual Vector do_apply(const Vector& x) const = 0;
  virtual Vector do_adjoint(const Vector& y) const = 0;
  virtual std::unique_ptr<GramSolver> make_gram_solver(double mu) const;
};

using OperatorPtr = std::shared_ptr<const LinearOperator>;

// (A^H A + mu I)^{-1} rhs, non-iteratively.
Vector solve_regularized_gram(const LinearOperator& op, const Vector& rhs, double mu);

// Periodic 2D convolution B = U^H diag(D) U on an h x w image.
class CirculantConvolution final : public LinearOperator {
 public:
  CirculantConvolution(const Kernel& kernel, Index height, Index width);

  Index in_dim() const override { return fft_.size(); }
  Index out_dim() const override { return fft_.size(); }
  Structure structure() const override { return Structure::circulant_convolution; }
  std::optional<DiagonalGram> diagonal_gram() const override;

  Index height() const { return fft_.height(); }
  Index width() const { return fft_.width(); }
  const ComplexVector& frequency_response() const { return response_; }

 protected:
  Vector do_apply(const Vector& x) const override;
  Vector do_adjoint(const Vector& y) const override;
  std::unique_ptr<GramSolver> make_gram_solver(double mu) const override;

 private:
  Vector filter(const Vector& x, bool conjugate) const;

  Fft2 fft_;
  ComplexVector response_;
};

// Row-subset of the identity: keeps `kept` indices out of `total`. B B^T = I.
class MaskOp final : public LinearOperator {
 public:
  // Flat mask over a 1 x total grid.
  MaskOp(std::vector<Index> kept, Index total);
  // Mask over the pixels (or DFT bins) of an h x w grid, row-major indices.
  MaskOp(std::vector<Index> kept, Index height, Index width);
  // Keeps pixels where mask(r, c) != 0.
  static MaskOp from_image(const Image& mask);

  Index in_dim() const override { return total_; }
  Index out_dim() const override { return static_cast<Index>(kept_.size()); }
  Structure structure() const override { return Structure::binary_mask; }
  std::optional<DiagonalGram> diagonal_gram() const override;

  const std::vector<Index>& kept() const { return kept_; }
  Index total() const { return total_; }
  // B^T B as a 0/1 diagonal.
  Vector indicator() const;
  // B^T B applied to x.
  Vector project(const Vector& x) const;

  Index height() const { return height_; }
  Index width() const { return width_; }

 protected:
  Vector do_apply(const Vector& x) const override;
  Vector do_adjoint(const Vector& y) const override;
  std::unique_ptr<GramSolver> make_gram_solver(double mu) const override;

 private:
  std::vector<Index> kept_;
  Index total_;
  Index height_;
  Index width_;
};

// A = B U: kept samples of the unitary DFT of a real h x w image, returned as
// interleaved (re, im) pairs (out_dim = 2 * kept).
class PartialFourier final : public LinearOperator {
 public:
  // frequency_mask indexes the DFT grid in DC-at-origin order.
  explicit PartialFourier(const MaskOp& frequency_mask);

  Index in_dim() const override { return fft_.size(); }
  Index out_dim() const override { return 2 * static_cast<Index>(kept_.size()); }
  Structure structure() const override { return Structure::partial_fourier; }
  std::optional<DiagonalGram> diagonal_gram() const override;

  Index height() const { return fft_.height(); }
  Index width() const { return fft_.width(); }
  const std::vector<Index>& kept() const { return kept_; }

  // Zero-filled spectrum U^H B^T y before taking the real part.
  ComplexVector zero_filled_spectrum(const Vector& y) const;

 protected:
  Vector do_apply(const Vector& x) const override;
  Vector do_adjoint(const Vector& y) const override;
  std::unique_ptr<GramSolver> make_gram_solver(double mu) const override;

 private:
  Fft2 fft_;
  std::vector<Index> kept_;
};

// A = B W for a Parseval frame W; the unknown is the coefficient vector.
class SynthesisComposite final : public LinearOperator {
 public:
  SynthesisComposite(OperatorPtr observation, std::shared_ptr<const Frame> frame);

  Index in_dim() const override { return frame_->coeff_dim(); }
  Index out_dim() const override { return observation_->out_dim(); }
  Structure structure() const override { return Structure::synthesis_composite; }

  const LinearOperator& observation() const { return *observation_; }
  const Frame& frame() const { return *frame_; }

 protected:
  Vector do_apply(const Vector& x) const override;
  Vector do_adjoint(const Vector& y) const override;
  std::unique_ptr<GramSolver> make_gram_solver(double mu) const override;

 private:
  OperatorPtr observation_;
  std::shared_ptr<const Frame> frame_;
};

// Explicit matrix. Its Gram solve is a dense Cholesky factorization; it exists
// as a reference for tests, not for image-sized problems.
class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXd matrix);

  Index in_dim() const override { return matrix_.cols(); }
  Index out_dim() const override { return matrix_.rows(); }
  Structure structure() const override { return Structure::generic_dense; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

 protected:
  Vector do_apply(const Vector& x) const override { return matrix_ * x; }
  Vector do_adjoint(const Vector& y) const override { return matrix_.transpose() * y; }
  std::unique_ptr<GramSolver> make_gram_solver(double mu) const override;

 private:
  Eigen::MatrixXd matrix_;
};

// Explicit matrix of any operator, column by column. O(n) applications.
Eigen::MatrixXd to_dense(const LinearOperator& op);

}  // namespace salsa
