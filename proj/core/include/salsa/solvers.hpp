#pragma once

#include "salsa/operators.hpp"
#include "salsa/prox.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace salsa {

struct SolverConfig {
  // Augmented-Lagrangian penalty; unused by IST/FISTA.
  double mu = 1.0;
  int max_iters = 1000;
  // Stop when |F_k - F_{k-1}| < rel_obj_tol * |F_{k-1}|. Zero disables.
  double rel_obj_tol = 1e-5;
  // Stop as soon as the objective is <= target.
  std::optional<double> target_objective;
  // Record the TV-prox denoising objective along its inner iterations.
  bool record_prox_inner = false;

  // mu = 0.1 tau, the default penalty.
  static SolverConfig for_tau(double tau);
  void validate() const;
};

struct TraceRow {
  int iter = 0;
  double objective = 0.0;
  // ||x_k - v_k|| for split methods, 0 for IST/FISTA.
  double gap = 0.0;
  double seconds = 0.0;
};

enum class StopReason { max_iters, rel_obj_tol, target_objective };

std::string_view to_string(StopReason reason);

struct SolverTrace {
  std::vector<TraceRow> rows;
  // Largest step-to-step relative increase of the TV denoising objective
  // inside each outer iteration (<= 0 means monotone). Filled when
  // record_prox_inner.
  std::vector<double> prox_inner_max_increase;
  StopReason stop_reason = StopReason::max_iters;

  int iterations() const { return static_cast<int>(rows.size()); }
  double final_objective() const;
  // First iteration whose objective is <= target.
  std::optional<int> first_reaching(double target) const;
};

struct SolverResult {
  Vector estimate;
  SolverTrace trace;
};

// Snapshot handed to an observer after every split-method iteration:
// x' = v_k + d_k, x = x_{k+1}, v = v_{k+1}, d = d_{k+1}.
struct SplitIterate {
  int k;
  const Vector& x_prime;
  const Vector& x;
  const Vector& v;
  const Vector& d;
};

using SplitObserver = std::function<void(const SplitIterate&)>;

// SALSA for min 1/2 ||A x - y||^2 + tau phi(x):
//   x'     = v_k + d_k
//   x_k+1  = (A^H A + mu I)^{-1} (A^H y + mu x')
//   v'     = x_k+1 - d_k
//   v_k+1  = Psi_{tau phi / mu}(v')
//   d_k+1  = d_k - (x_k+1 - v_k+1)
// Starts from v_0 = init (default A^H y), d_0 = 0 and returns v_K.
// Throws std::logic_error when op has no exact Gram solver.
SolverResult salsa_run(const LinearOperator& op, const Vector& y, const Regularizer& r, const SolverConfig& cfg,
                       const std::optional<Vector>& init = std::nullopt, const SplitObserver& observer = {});

// Generic ADMM for min f1(u) + f2(G u).
struct AdmmProblem {
  // argmin_u f1(u) + mu/2 ||G u - target||^2
  std::function<Vector(const Vector& target, double mu)> solve_f1;
  // argmin_v f2(v) + mu/2 ||v - point||^2
  std::function<Vector(const Vector& point, double mu)> prox_f2;
  // G; nullptr stands for the identity.
  const LinearOperator* constraint = nullptr;
  // Traced once per iteration.
  std::function<double(const Vector& u, const Vector& v)> objective;
};

struct AdmmResult {
  Vector u;
  Vector v;
  Vector d;
  SolverTrace trace;
};

AdmmResult admm_run(const AdmmProblem& problem, const SolverConfig& cfg, const Vector& v0,
                    const SplitObserver& observer = {});

// IST: x_k+1 = Psi_{tau phi / gamma}(x_k - (1/gamma) A^H (A x_k - y)).
SolverResult ist_run(const LinearOperator& op, const Vector& y, const Regularizer& r, double step_gamma,
                     const SolverConfig& cfg, const std::optional<Vector>& init = std::nullopt);

// FISTA with constant step 1/L.
SolverResult fista_run(const LinearOperator& op, const Vector& y, const Regularizer& r, double lipschitz,
                       const SolverConfig& cfg, const std::optional<Vector>& init = std::nullopt);

// t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2.
double fista_next_momentum(double t);

// ||A||_2 by power iteration on A^H A from a seeded random start.
double power_method_norm(const LinearOperator& op, int iterations = 100, std::uint64_t seed = 0x5a15a);

struct TraceCsvOptions {
  // When false the seconds column is written as 0 so that files from
  // repeated runs compare byte-for-byte.
  bool include_timing = true;
};

void write_trace_csv(std::ostream& out, const SolverTrace& trace, const TraceCsvOptions& options = {});
void write_trace_csv(const std::filesystem::path& path, const SolverTrace& trace, const TraceCsvOptions& options = {});
SolverTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace salsa
