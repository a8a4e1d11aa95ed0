#pragma once

#include "salsa/grid.hpp"
#include "salsa/operators.hpp"

#include <string_view>
#include <vector>

namespace salsa {

enum class RegularizerKind { l1, l0, tv_iso };

std::string_view to_string(RegularizerKind kind);

// phi together with its weight tau. Immutable; any warm-start state lives in
// a ProxState owned by the caller.
struct Regularizer {
  RegularizerKind kind = RegularizerKind::l1;
  double tau = 0.0;
  int tv_inner_iters = 5;
  // Image shape, required for tv_iso.
  Index height = 0;
  Index width = 0;

  static Regularizer l1(double tau);
  static Regularizer l0(double tau);
  static Regularizer tv(double tau, Index height, Index width, int inner_iters = 5);

  void validate() const;
};

// Step of the dual fixed-point iteration used for the TV prox.
inline constexpr double kChambolleStep = 0.248;

// Mutable companion of a Regularizer inside one solver run: the TV dual
// variable (warm start across calls) and, optionally, the denoising objective
// at every inner iterate of the most recent call.
class ProxState {
 public:
  ProxState() = default;
  explicit ProxState(bool record_inner) : record_inner_(record_inner) {}

  void reset() { dual_.resize(0); }
  bool record_inner() const { return record_inner_; }
  const std::vector<double>& last_inner_objectives() const { return inner_objectives_; }

 private:
  friend Vector prox(const Regularizer&, const Vector&, double, ProxState*);
  Vector dual_;
  bool record_inner_ = false;
  std::vector<double> inner_objectives_;
};

// Psi_{(tau/scale) phi}(v) = argmin_x 1/2 ||x - v||^2 + (tau/scale) phi(x).
// l1: soft threshold at tau/scale. l0: hard threshold at sqrt(2 tau/scale),
// keeping |v| >= threshold. tv_iso: tv_inner_iters dual iterations, warm
// started from state when provided.
Vector prox(const Regularizer& r, const Vector& v, double scale, ProxState* state = nullptr);

Vector soft_threshold(const Vector& v, double threshold);
Vector hard_threshold(const Vector& v, double threshold);

// Isotropic TV with forward differences and Neumann boundary.
double total_variation(const Vector& image, Index height, Index width);

// phi(x): l1 norm, number of nonzeros, or isotropic TV.
double regularizer_value(const Regularizer& r, const Vector& x);

// 1/2 ||A x - y||^2 + tau phi(x).
double objective(const LinearOperator& op, const Vector& y, const Regularizer& r, const Vector& x);

// 1/2 ||x - v||^2 + lambda phi(x), the denoising objective minimized by prox
// with lambda = tau / scale.
double denoising_objective(const Regularizer& r, const Vector& x, const Vector& v, double lambda);

}  // namespace salsa
