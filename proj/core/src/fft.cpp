#include "salsa/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace salsa {

namespace {

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const Complex* p) { return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p)); }

}  // namespace

struct Fft2::Plans {
  // New-array execution must match the plan's in-place status, so both
  // variants are kept.
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  fftw_plan forward_inplace = nullptr;
  fftw_plan backward_inplace = nullptr;

  Plans(Index h, Index w) {
    std::lock_guard lock(planner_mutex());
    // Planned on scratch buffers; FFTW_UNALIGNED lets the new-array execute
    // interface accept any Eigen-allocated buffer.
    const auto n = static_cast<std::size_t>(h * w);
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    const int hi = static_cast<int>(h);
    const int wi = static_cast<int>(w);
    forward = fftw_plan_dft_2d(hi, wi, in, out, FFTW_FORWARD, flags);
    backward = fftw_plan_dft_2d(hi, wi, in, out, FFTW_BACKWARD, flags);
    forward_inplace = fftw_plan_dft_2d(hi, wi, in, in, FFTW_FORWARD, flags);
    backward_inplace = fftw_plan_dft_2d(hi, wi, in, in, FFTW_BACKWARD, flags);
    fftw_free(in);
    fftw_free(out);
    if (!forward || !backward || !forward_inplace || !backward_inplace) {
      throw std::runtime_error("Fft2: FFTW planning failed");
    }
  }

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_destroy_plan(forward_inplace);
    fftw_destroy_plan(backward_inplace);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Fft2::Fft2(Index height, Index width) : height_(height), width_(width) {
  if (height <= 0 || width <= 0) throw std::invalid_argument("Fft2: dimensions must be positive");
  static std::mutex cache_mutex;
  static std::map<std::pair<Index, Index>, std::weak_ptr<const Plans>> cache;
  std::lock_guard lock(cache_mutex);
  auto& slot = cache[{height, width}];
  plans_ = slot.lock();
  if (!plans_) {
    plans_ = std::make_shared<const Plans>(height, width);
    slot = plans_;
  }
}

void Fft2::forward(const Complex* in, Complex* out) const {
  fftw_execute_dft(in == out ? plans_->forward_inplace : plans_->forward, as_fftw(in), as_fftw(out));
}

void Fft2::backward(const Complex* in, Complex* out) const {
  fftw_execute_dft(in == out ? plans_->backward_inplace : plans_->backward, as_fftw(in), as_fftw(out));
}

ComplexVector Fft2::forward(const ComplexVector& in) const {
  if (in.size() != size()) throw std::invalid_argument("Fft2::forward: size mismatch");
  ComplexVector out(size());
  forward(in.data(), out.data());
  return out;
}

ComplexVector Fft2::backward(const ComplexVector& in) const {
  if (in.size() != size()) throw std::invalid_argument("Fft2::backward: size mismatch");
  ComplexVector out(size());
  backward(in.data(), out.data());
  return out;
}

ComplexVector Fft2::unitary_forward(const Vector& in) const {
  if (in.size() != size()) throw std::invalid_argument("Fft2::unitary_forward: size mismatch");
  ComplexVector buf = in.cast<Complex>();
  forward(buf.data(), buf.data());
  buf *= 1.0 / std::sqrt(static_cast<double>(size()));
  return buf;
}

Vector Fft2::unitary_backward_real(const ComplexVector& in) const {
  if (in.size() != size()) throw std::invalid_argument("Fft2::unitary_backward_real: size mismatch");
  ComplexVector buf(size());
  backward(in.data(), buf.data());
  return buf.real() * (1.0 / std::sqrt(static_cast<double>(size())));
}

ComplexImage dft2(const ComplexImage& image) {
  const Fft2 fft(image.height(), image.width());
  ComplexVector out = fft.forward(image.data());
  out *= 1.0 / std::sqrt(static_cast<double>(image.size()));
  return ComplexImage(image.height(), image.width(), std::move(out));
}

ComplexImage dft2(const Image& image) { return dft2(to_complex(image)); }

ComplexImage idft2(const ComplexImage& spectrum) {
  const Fft2 fft(spectrum.height(), spectrum.width());
  ComplexVector out = fft.backward(spectrum.data());
  out *= 1.0 / std::sqrt(static_cast<double>(spectrum.size()));
  return ComplexImage(spectrum.height(), spectrum.width(), std::move(out));
}

}  // namespace salsa
