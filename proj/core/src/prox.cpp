#include "salsa/prox.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace salsa {

std::string_view to_string(RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::l1:
      return "l1";
    case RegularizerKind::l0:
      return "l0";
    case RegularizerKind::tv_iso:
      return "tv-iso";
  }
  return "unknown";
}

Regularizer Regularizer::l1(double tau) {
  Regularizer r{RegularizerKind::l1, tau};
  r.validate();
  return r;
}

Regularizer Regularizer::l0(double tau) {
  Regularizer r{RegularizerKind::l0, tau};
  r.validate();
  return r;
}

Regularizer Regularizer::tv(double tau, Index height, Index width, int inner_iters) {
  Regularizer r{RegularizerKind::tv_iso, tau, inner_iters, height, width};
  r.validate();
  return r;
}

void Regularizer::validate() const {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("Regularizer: tau must be finite and >= 0");
  if (kind == RegularizerKind::tv_iso) {
    if (height <= 0 || width <= 0) throw std::invalid_argument("Regularizer: TV needs a positive image shape");
    if (tv_inner_iters < 1) throw std::invalid_argument("Regularizer: tv_inner_iters must be >= 1");
  }
}

Vector soft_threshold(const Vector& v, double threshold) {
  return v.unaryExpr([threshold](double y) {
    const double mag = std::abs(y) - threshold;
    return mag > 0.0 ? std::copysign(mag, y) : 0.0;
  });
}

Vector hard_threshold(const Vector& v, double threshold) {
  return v.unaryExpr([threshold](double y) { return std::abs(y) >= threshold ? y : 0.0; });
}

namespace {

// Forward differences, zero across the last row/column. grad has 2n entries:
// horizontal differences first, vertical second.
void gradient(const double* x, Index h, Index w, double* gx, double* gy) {
  for (Index r = 0; r < h; ++r) {
    for (Index c = 0; c < w; ++c) {
      const Index i = r * w + c;
      gx[i] = c + 1 < w ? x[i + 1] - x[i] : 0.0;
      gy[i] = r + 1 < h ? x[i + w] - x[i] : 0.0;
    }
  }
}

// div = -grad^T.
void divergence(const double* px, const double* py, Index h, Index w, double* out) {
  for (Index r = 0; r < h; ++r) {
    for (Index c = 0; c < w; ++c) {
      const Index i = r * w + c;
      double d = 0.0;
      if (c + 1 < w) d += px[i];
      if (c > 0) d -= px[i - 1];
      if (r + 1 < h) d += py[i];
      if (r > 0) d -= py[i - w];
      out[i] = d;
    }
  }
}

Vector tv_prox(const Regularizer& r, const Vector& v, double lambda, Vector& dual, std::vector<double>* record) {
  const Index h = r.height, w = r.width, n = h * w;
  if (v.size() != n) throw std::invalid_argument("prox(tv): vector size does not match image shape");
  if (dual.size() != 2 * n) dual = Vector::Zero(2 * n);

  double* px = dual.data();
  double* py = dual.data() + n;
  Vector div(n), u(n), gx(n), gy(n);
  const double inv_lambda = 1.0 / lambda;

  auto primal = [&]() {
    divergence(px, py, h, w, div.data());
    return Vector(v - lambda * div);
  };
  if (record) {
    record->clear();
    record->push_back(denoising_objective(r, primal(), v, lambda));
  }

  for (int it = 0; it < r.tv_inner_iters; ++it) {
    divergence(px, py, h, w, div.data());
    u = div - v * inv_lambda;
    gradient(u.data(), h, w, gx.data(), gy.data());
    for (Index i = 0; i < n; ++i) {
      const double norm = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
      const double denom = 1.0 + kChambolleStep * norm;
      px[i] = (px[i] + kChambolleStep * gx[i]) / denom;
      py[i] = (py[i] + kChambolleStep * gy[i]) / denom;
    }
    if (record) record->push_back(denoising_objective(r, primal(), v, lambda));
  }
  return primal();
}

}  // namespace

Vector prox(const Regularizer& r, const Vector& v, double scale, ProxState* state) {
  if (!(scale > 0.0)) throw std::invalid_argument("prox: scale must be positive");
  const double lambda = r.tau / scale;
  if (state) state->inner_objectives_.clear();
  if (lambda == 0.0) return v;
  switch (r.kind) {
    case RegularizerKind::l1:
      return soft_threshold(v, lambda);
    case RegularizerKind::l0:
      return hard_threshold(v, std::sqrt(2.0 * lambda));
    case RegularizerKind::tv_iso: {
      if (state) {
        return tv_prox(r, v, lambda, state->dual_, state->record_inner_ ? &state->inner_objectives_ : nullptr);
      }
      Vector dual;
      return tv_prox(r, v, lambda, dual, nullptr);
    }
  }
  throw std::invalid_argument("prox: unknown regularizer");
}

double total_variation(const Vector& image, Index height, Index width) {
  if (image.size() != height * width) throw std::invalid_argument("total_variation: shape mismatch");
  double tv = 0.0;
  for (Index r = 0; r < height; ++r) {
    for (Index c = 0; c < width; ++c) {
      const Index i = r * width + c;
      const double dx = c + 1 < width ? image[i + 1] - image[i] : 0.0;
      const double dy = r + 1 < height ? image[i + width] - image[i] : 0.0;
      tv += std::sqrt(dx * dx + dy * dy);
    }
  }
  return tv;
}

double regularizer_value(const Regularizer& r, const Vector& x) {
  switch (r.kind) {
    case RegularizerKind::l1:
      return x.lpNorm<1>();
    case RegularizerKind::l0:
      return static_cast<double>((x.array() != 0.0).count());
    case RegularizerKind::tv_iso:
      return total_variation(x, r.height, r.width);
  }
  throw std::invalid_argument("regularizer_value: unknown regularizer");
}

double objective(const LinearOperator& op, const Vector& y, const Regularizer& r, const Vector& x) {
  if (y.size() != op.out_dim()) throw std::invalid_argument("objective: observation dimension mismatch");
  const Vector residual = op.apply(x) - y;
  const double penalty = r.tau == 0.0 ? 0.0 : r.tau * regularizer_value(r, x);
  return 0.5 * residual.squaredNorm() + penalty;
}

double denoising_objective(const Regularizer& r, const Vector& x, const Vector& v, double lambda) {
  return 0.5 * (x - v).squaredNorm() + lambda * regularizer_value(r, x);
}

}  // namespace salsa
