#include "salsa/solvers.hpp"

#include "salsa/rng.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace salsa {

SolverConfig SolverConfig::for_tau(double tau) {
  SolverConfig cfg;
  cfg.mu = 0.1 * tau;
  return cfg;
}

void SolverConfig::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("SolverConfig: mu must be positive");
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (!(rel_obj_tol >= 0.0)) throw std::invalid_argument("SolverConfig: rel_obj_tol must be >= 0");
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::max_iters:
      return "max_iters";
    case StopReason::rel_obj_tol:
      return "rel_obj_tol";
    case StopReason::target_objective:
      return "target_objective";
  }
  return "unknown";
}

double SolverTrace::final_objective() const {
  if (rows.empty()) throw std::logic_error("SolverTrace: empty trace");
  return rows.back().objective;
}

std::optional<int> SolverTrace::first_reaching(double target) const {
  for (const auto& row : rows) {
    if (row.objective <= target) return row.iter;
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

// Appends trace rows and evaluates the stopping rules.
class TraceRecorder {
 public:
  explicit TraceRecorder(const SolverConfig& cfg) : cfg_(cfg), start_(Clock::now()) {}

  // Returns true when the run should stop after this iteration.
  bool record(double objective, double gap) {
    const double seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    const int k = static_cast<int>(trace_.rows.size()) + 1;
    trace_.rows.push_back({k, objective, gap, seconds});
    if (!std::isfinite(objective)) throw std::runtime_error("solver diverged: non-finite objective");

    if (cfg_.target_objective && objective <= *cfg_.target_objective) {
      trace_.stop_reason = StopReason::target_objective;
      return true;
    }
    if (k >= 2 && cfg_.rel_obj_tol > 0.0) {
      const double prev = trace_.rows[trace_.rows.size() - 2].objective;
      if (std::abs(objective - prev) < cfg_.rel_obj_tol * std::abs(prev)) {
        trace_.stop_reason = StopReason::rel_obj_tol;
        return true;
      }
    }
    if (k >= cfg_.max_iters) {
      trace_.stop_reason = StopReason::max_iters;
      return true;
    }
    return false;
  }

  void record_prox(const ProxState& state) {
    if (!state.record_inner()) return;
    const auto& values = state.last_inner_objectives();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < values.size(); ++i) {
      const double scale = std::max(std::abs(values[i - 1]), std::numeric_limits<double>::min());
      worst = std::max(worst, (values[i] - values[i - 1]) / scale);
    }
    if (values.size() >= 2) trace_.prox_inner_max_increase.push_back(worst);
  }

  SolverTrace take() { return std::move(trace_); }

 private:
  const SolverConfig& cfg_;
  Clock::time_point start_;
  SolverTrace trace_;
};

Vector initial_point(const std::optional<Vector>& init, const Vector& fallback, const char* who) {
  if (!init) return fallback;
  if (init->size() != fallback.size()) throw std::invalid_argument(std::string(who) + ": init dimension mismatch");
  return *init;
}

}  // namespace

SolverResult salsa_run(const LinearOperator& op, const Vector& y, const Regularizer& r, const SolverConfig& cfg,
                       const std::optional<Vector>& init, const SplitObserver& observer) {
  cfg.validate();
  r.validate();
  const auto solver = op.gram_solver(cfg.mu);
  const double mu = cfg.mu;
  const Vector aty = op.adjoint(y);

  Vector v = initial_point(init, aty, "salsa_run");
  Vector d = Vector::Zero(v.size());
  Vector x_prime, x, v_prime;
  ProxState prox_state(cfg.record_prox_inner);
  TraceRecorder recorder(cfg);

  for (int k = 0;; ++k) {
    x_prime = v + d;
    x = solver->solve(aty + mu * x_prime);
    v_prime = x - d;
    v = prox(r, v_prime, mu, &prox_state);
    d = d - (x - v);

    recorder.record_prox(prox_state);
    if (observer) observer({k, x_prime, x, v, d});
    if (recorder.record(objective(op, y, r, v), (x - v).norm())) break;
  }
  return {std::move(v), recorder.take()};
}

AdmmResult admm_run(const AdmmProblem& problem, const SolverConfig& cfg, const Vector& v0,
                    const SplitObserver& observer) {
  cfg.validate();
  if (!problem.solve_f1 || !problem.prox_f2 || !problem.objective) {
    throw std::invalid_argument("admm_run: solve_f1, prox_f2 and objective are required");
  }
  const LinearOperator* g = problem.constraint;
  if (g && g->out_dim() != v0.size()) throw std::invalid_argument("admm_run: v0 does not live in the range of G");
  const double mu = cfg.mu;

  Vector v = v0;
  Vector d = Vector::Zero(v.size());
  Vector target, u, gu;
  TraceRecorder recorder(cfg);

  for (int k = 0;; ++k) {
    target = v + d;
    u = problem.solve_f1(target, mu);
    gu = g ? g->apply(u) : u;
    if (gu.size() != v.size()) throw std::invalid_argument("admm_run: G u and v dimensions differ");
    v = problem.prox_f2(gu - d, mu);
    d = d - (gu - v);

    if (observer) observer({k, target, gu, v, d});
    if (recorder.record(problem.objective(u, v), (gu - v).norm())) break;
  }
  return {std::move(u), std::move(v), std::move(d), recorder.take()};
}

SolverResult ist_run(const LinearOperator& op, const Vector& y, const Regularizer& r, double step_gamma,
                     const SolverConfig& cfg, const std::optional<Vector>& init) {
  if (!(step_gamma > 0.0)) throw std::invalid_argument("ist_run: gamma must be positive");
  cfg.validate();
  r.validate();
  Vector x = initial_point(init, op.adjoint(y), "ist_run");
  ProxState prox_state(cfg.record_prox_inner);
  TraceRecorder recorder(cfg);

  for (;;) {
    const Vector gradient = op.adjoint(op.apply(x) - y);
    x = prox(r, x - gradient / step_gamma, step_gamma, &prox_state);
    recorder.record_prox(prox_state);
    if (recorder.record(objective(op, y, r, x), 0.0)) break;
  }
  return {std::move(x), recorder.take()};
}

double fista_next_momentum(double t) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t)); }

SolverResult fista_run(const LinearOperator& op, const Vector& y, const Regularizer& r, double lipschitz,
                       const SolverConfig& cfg, const std::optional<Vector>& init) {
  if (!(lipschitz > 0.0)) throw std::invalid_argument("fista_run: L must be positive");
  cfg.validate();
  r.validate();
  Vector x = initial_point(init, op.adjoint(y), "fista_run");
  Vector z = x;
  Vector x_prev;
  double t = 1.0;
  ProxState prox_state(cfg.record_prox_inner);
  TraceRecorder recorder(cfg);

  for (;;) {
    const Vector gradient = op.adjoint(op.apply(z) - y);
    x_prev.swap(x);
    x = prox(r, z - gradient / lipschitz, lipschitz, &prox_state);
    const double t_next = fista_next_momentum(t);
    z = x + ((t - 1.0) / t_next) * (x - x_prev);
    t = t_next;
    recorder.record_prox(prox_state);
    if (recorder.record(objective(op, y, r, x), 0.0)) break;
  }
  return {std::move(x), recorder.take()};
}

double power_method_norm(const LinearOperator& op, int iterations, std::uint64_t seed) {
  if (iterations < 1) throw std::invalid_argument("power_method_norm: iterations must be >= 1");
  auto rng = make_rng(seed, RngStream::power_method);
  Vector x(op.in_dim());
  for (Index i = 0; i < x.size(); ++i) x[i] = rng.normal();
  x.normalize();
  for (int it = 0; it < iterations; ++it) {
    Vector next = op.adjoint(op.apply(x));
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    x = next / norm;
  }
  return op.apply(x).norm();
}

}  // namespace salsa
