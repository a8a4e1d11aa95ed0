#include "salsa/operators.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace salsa {

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::circulant_convolution:
      return "circulant-convolution";
    case Structure::binary_mask:
      return "binary-mask";
    case Structure::partial_fourier:
      return "partial-fourier";
    case Structure::synthesis_composite:
      return "synthesis-composite";
    case Structure::generic_dense:
      return "generic-dense";
  }
  return "unknown";
}

namespace {

void require_dim(const char* what, Index got, Index want) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (got " + std::to_string(got) +
                                ", expected " + std::to_string(want) + ")");
  }
}

// Applies Q^H diag(weights) Q to a real vector, Q the identity or the unitary DFT.
Vector apply_diagonal(const DiagonalGram& gram, const Vector& weights, const Fft2* fft, const Vector& x) {
  if (gram.basis == DiagonalGram::Basis::pixel) return weights.cwiseProduct(x);
  ComplexVector spectrum = x.cast<Complex>();
  fft->forward(spectrum.data(), spectrum.data());
  spectrum.array() *= weights.array().cast<Complex>();
  fft->backward(spectrum.data(), spectrum.data());
  return spectrum.real() * (1.0 / static_cast<double>(x.size()));
}

// (Q^H diag(lambda) Q + mu I)^{-1} = Q^H diag(1 / (lambda + mu)) Q.
class DiagonalGramSolver final : public GramSolver {
 public:
  DiagonalGramSolver(DiagonalGram gram, double mu)
      : GramSolver(mu, gram.eigenvalues.size()), gram_(std::move(gram)) {
    inverse_ = (gram_.eigenvalues.array() + mu).inverse();
    if (gram_.basis == DiagonalGram::Basis::fourier) fft_.emplace(gram_.height, gram_.width);
  }

 protected:
  Vector do_solve(const Vector& rhs) const override {
    return apply_diagonal(gram_, inverse_, fft_ ? &*fft_ : nullptr, rhs);
  }

 private:
  DiagonalGram gram_;
  Vector inverse_;
  std::optional<Fft2> fft_;
};

// Synthesis case A = B W with W W^H = I and B^H B = Q^H diag(lambda) Q.
// Sherman-Morrison-Woodbury gives
//   (W^H B^H B W + mu I)^{-1} = (1/mu) (I - W^H F W),
//   F = Q^H diag(lambda / (lambda + mu)) Q.
// For a convolution F = U^H D^* (|D|^2 + mu)^{-1} D U; for a 0/1 mask
// F = B^T B / (1 + mu).
class SmwSynthesisSolver final : public GramSolver {
 public:
  SmwSynthesisSolver(std::shared_ptr<const Frame> frame, DiagonalGram gram, double mu)
      : GramSolver(mu, frame->coeff_dim()), frame_(std::move(frame)), gram_(std::move(gram)) {
    filter_ = gram_.eigenvalues.array() / (gram_.eigenvalues.array() + mu);
    if (gram_.basis == DiagonalGram::Basis::fourier) fft_.emplace(gram_.height, gram_.width);
  }

 protected:
  Vector do_solve(const Vector& rhs) const override {
    const Vector image = frame_->synthesis(rhs);
    const Vector filtered = apply_diagonal(gram_, filter_, fft_ ? &*fft_ : nullptr, image);
    return (rhs - frame_->analysis(filtered)) / mu();
  }

 private:
  std::shared_ptr<const Frame> frame_;
  DiagonalGram gram_;
  Vector filter_;
  std::optional<Fft2> fft_;
};

class DenseGramSolver final : public GramSolver {
 public:
  DenseGramSolver(const Eigen::MatrixXd& a, double mu) : GramSolver(mu, a.cols()) {
    Eigen::MatrixXd gram = a.transpose() * a;
    gram.diagonal().array() += mu;
    factor_.compute(gram);
    if (factor_.info() != Eigen::Success) throw std::runtime_error("DenseGramSolver: factorization failed");
  }

 protected:
  Vector do_solve(const Vector& rhs) const override { return factor_.solve(rhs); }

 private:
  Eigen::LLT<Eigen::MatrixXd> factor_;
};

}  // namespace

// ---------------------------------------------------------------------------

GramSolver::GramSolver(double mu, Index dim) : mu_(mu), dim_(dim) {}

Vector GramSolver::solve(const Vector& rhs) const {
  require_dim("GramSolver::solve", rhs.size(), dim_);
  return do_solve(rhs);
}

Vector LinearOperator::apply(const Vector& x) const {
  require_dim("LinearOperator::apply", x.size(), in_dim());
  return do_apply(x);
}

Vector LinearOperator::adjoint(const Vector& y) const {
  require_dim("LinearOperator::adjoint", y.size(), out_dim());
  return do_adjoint(y);
}

std::unique_ptr<GramSolver> LinearOperator::gram_solver(double mu) const {
  if (!(mu > 0.0)) throw std::invalid_argument("gram_solver: mu must be positive");
  return make_gram_solver(mu);
}

std::unique_ptr<GramSolver> LinearOperator::make_gram_solver(double) const {
  throw std::logic_error(std::string("no exact (A^H A + mu I) solver for structure ") +
                         std::string(to_string(structure())));
}

Vector solve_regularized_gram(const LinearOperator& op, const Vector& rhs, double mu) {
  require_dim("solve_regularized_gram", rhs.size(), op.in_dim());
  return op.gram_solver(mu)->solve(rhs);
}

Eigen::MatrixXd to_dense(const LinearOperator& op) {
  Eigen::MatrixXd m(op.out_dim(), op.in_dim());
  Vector e = Vector::Zero(op.in_dim());
  for (Index j = 0; j < op.in_dim(); ++j) {
    e[j] = 1.0;
    m.col(j) = op.apply(e);
    e[j] = 0.0;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Circulant convolution

CirculantConvolution::CirculantConvolution(const Kernel& kernel, Index height, Index width)
    : fft_(height, width), response_(kernel_frequency_response(kernel, height, width).data()) {}

Vector CirculantConvolution::filter(const Vector& x, bool conjugate) const {
  ComplexVector spectrum = x.cast<Complex>();
  fft_.forward(spectrum.data(), spectrum.data());
  if (conjugate) {
    spectrum.array() *= response_.array().conjugate();
  } else {
    spectrum.array() *= response_.array();
  }
  fft_.backward(spectrum.data(), spectrum.data());
  return spectrum.real() * (1.0 / static_cast<double>(fft_.size()));
}

Vector CirculantConvolution::do_apply(const Vector& x) const { return filter(x, false); }
Vector CirculantConvolution::do_adjoint(const Vector& y) const { return filter(y, true); }

std::optional<DiagonalGram> CirculantConvolution::diagonal_gram() const {
  return DiagonalGram{DiagonalGram::Basis::fourier, height(), width(), response_.cwiseAbs2()};
}

std::unique_ptr<GramSolver> CirculantConvolution::make_gram_solver(double mu) const {
  return std::make_unique<DiagonalGramSolver>(*diagonal_gram(), mu);
}

// ---------------------------------------------------------------------------
// Mask

MaskOp::MaskOp(std::vector<Index> kept, Index total) : MaskOp(std::move(kept), 1, total) {}

MaskOp::MaskOp(std::vector<Index> kept, Index height, Index width)
    : kept_(std::move(kept)), total_(height * width), height_(height), width_(width) {
  if (height <= 0 || width <= 0) throw std::invalid_argument("MaskOp: dimensions must be positive");
  std::sort(kept_.begin(), kept_.end());
  if (std::adjacent_find(kept_.begin(), kept_.end()) != kept_.end()) {
    throw std::invalid_argument("MaskOp: duplicate kept index");
  }
  if (!kept_.empty() && (kept_.front() < 0 || kept_.back() >= total_)) {
    throw std::invalid_argument("MaskOp: kept index out of range");
  }
}

MaskOp MaskOp::from_image(const Image& mask) {
  std::vector<Index> kept;
  for (Index i = 0; i < mask.size(); ++i) {
    if (mask.data()[i] != 0.0) kept.push_back(i);
  }
  return MaskOp(std::move(kept), mask.height(), mask.width());
}

Vector MaskOp::indicator() const {
  Vector d = Vector::Zero(total_);
  for (Index i : kept_) d[i] = 1.0;
  return d;
}

Vector MaskOp::project(const Vector& x) const { return do_adjoint(do_apply(x)); }

Vector MaskOp::do_apply(const Vector& x) const {
  Vector y(out_dim());
  for (std::size_t k = 0; k < kept_.size(); ++k) y[static_cast<Index>(k)] = x[kept_[k]];
  return y;
}

Vector MaskOp::do_adjoint(const Vector& y) const {
  Vector x = Vector::Zero(total_);
  for (std::size_t k = 0; k < kept_.size(); ++k) x[kept_[k]] = y[static_cast<Index>(k)];
  return x;
}

std::optional<DiagonalGram> MaskOp::diagonal_gram() const {
  return DiagonalGram{DiagonalGram::Basis::pixel, height_, width_, indicator()};
}

std::unique_ptr<GramSolver> MaskOp::make_gram_solver(double mu) const {
  // Entries 1/(1 + mu) where observed, 1/mu where missing.
  return std::make_unique<DiagonalGramSolver>(*diagonal_gram(), mu);
}

// ---------------------------------------------------------------------------
// Partial Fourier

PartialFourier::PartialFourier(const MaskOp& frequency_mask)
    : fft_(frequency_mask.height(), frequency_mask.width()), kept_(frequency_mask.kept()) {}

Vector PartialFourier::do_apply(const Vector& x) const {
  const ComplexVector spectrum = fft_.unitary_forward(x);
  Vector y(out_dim());
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    const Complex c = spectrum[kept_[k]];
    y[2 * static_cast<Index>(k)] = c.real();
    y[2 * static_cast<Index>(k) + 1] = c.imag();
  }
  return y;
}

ComplexVector PartialFourier::zero_filled_spectrum(const Vector& y) const {
  require_dim("PartialFourier::zero_filled_spectrum", y.size(), out_dim());
  ComplexVector spectrum = ComplexVector::Zero(fft_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    spectrum[kept_[k]] = Complex(y[2 * static_cast<Index>(k)], y[2 * static_cast<Index>(k) + 1]);
  }
  return spectrum;
}

Vector PartialFourier::do_adjoint(const Vector& y) const {
  // Real-inner-product adjoint: Re(U^H B^T y).
  return fft_.unitary_backward_real(zero_filled_spectrum(y));
}

std::optional<DiagonalGram> PartialFourier::diagonal_gram() const {
  // For real x, Re(U^H M U x) = U^H diag((M(k) + M(-k)) / 2) U x, where -k is
  // the mirrored DFT bin. For conjugate-symmetric masks this is M itself.
  const Index h = height(), w = width();
  Vector m = Vector::Zero(h * w);
  for (Index idx : kept_) m[idx] = 1.0;
  Vector sym(h * w);
  for (Index r = 0; r < h; ++r) {
    for (Index c = 0; c < w; ++c) {
      const Index mirror = ((h - r) % h) * w + (w - c) % w;
      sym[r * w + c] = 0.5 * (m[r * w + c] + m[mirror]);
    }
  }
  return DiagonalGram{DiagonalGram::Basis::fourier, h, w, std::move(sym)};
}

std::unique_ptr<GramSolver> PartialFourier::make_gram_solver(double mu) const {
  return std::make_unique<DiagonalGramSolver>(*diagonal_gram(), mu);
}

// ---------------------------------------------------------------------------
// Synthesis composite

SynthesisComposite::SynthesisComposite(OperatorPtr observation, std::shared_ptr<const Frame> frame)
    : observation_(std::move(observation)), frame_(std::move(frame)) {
  if (!observation_ || !frame_) throw std::invalid_argument("SynthesisComposite: null constituent");
  require_dim("SynthesisComposite", observation_->in_dim(), frame_->image_dim());
}

Vector SynthesisComposite::do_apply(const Vector& x) const { return observation_->apply(frame_->synthesis(x)); }

Vector SynthesisComposite::do_adjoint(const Vector& y) const { return frame_->analysis(observation_->adjoint(y)); }

std::unique_ptr<GramSolver> SynthesisComposite::make_gram_solver(double mu) const {
  auto gram = observation_->diagonal_gram();
  if (!gram) {
    throw std::logic_error(std::string("no exact synthesis solver for observation structure ") +
                           std::string(to_string(observation_->structure())));
  }
  return std::make_unique<SmwSynthesisSolver>(frame_, std::move(*gram), mu);
}

// ---------------------------------------------------------------------------
// Dense

DenseOperator::DenseOperator(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.cols() == 0) throw std::invalid_argument("DenseOperator: empty matrix");
}

std::unique_ptr<GramSolver> DenseOperator::make_gram_solver(double mu) const {
  return std::make_unique<DenseGramSolver>(matrix_, mu);
}

}  // namespace salsa
