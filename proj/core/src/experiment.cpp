#include "salsa/experiment.hpp"

#include "salsa/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace salsa {

namespace {

Vector zero_filled(const MaskOp& mask, const Vector& y) { return mask.adjoint(y); }

double noise_variance_for(const ExperimentSpec& spec, const Image& truth) {
  if (spec.noise_variance) return *spec.noise_variance;
  if (spec.snr_db) return truth.data().squaredNorm() / static_cast<double>(truth.size()) * std::pow(10.0, -*spec.snr_db / 10.0);
  if (spec.blur_id) return blur_noise_variance(*spec.blur_id);
  return 0.0;
}

OperatorPtr image_operator(const ExperimentSpec& spec, Index h, Index w) {
  switch (spec.problem) {
    case ProblemKind::deblur_frame:
    case ProblemKind::deblur_ortho:
    case ProblemKind::deblur_tv:
      return std::make_shared<CirculantConvolution>(make_blur(*spec.blur_id), h, w);
    case ProblemKind::inpaint_tv:
      return std::make_shared<MaskOp>(make_missing_pixel_mask(h, w, *spec.missing_fraction, spec.seed));
    case ProblemKind::mri_tv:
      return std::make_shared<PartialFourier>(make_radial_mask(h, w, *spec.radial_lines));
  }
  throw std::logic_error("image_operator: unknown problem");
}

Regularizer make_regularizer(const Problem& p, int tv_inner_iters) {
  if (p.frame) return Regularizer::l1(p.tau);
  return Regularizer::tv(p.tau, p.truth.height(), p.truth.width(), tv_inner_iters);
}

double tune_score(const Metrics& m) {
  if (m.isnr_db) return *m.isnr_db;
  return m.mse > 0 ? -10.0 * std::log10(m.mse) : std::numeric_limits<double>::infinity();
}

}  // namespace

double default_tau(ProblemKind problem, std::optional<BlurId> blur) {
  // Tuned with `recover tune-tau` on the shipped 256x256 test image (seed 0).
  auto by_blur = [&](double b1, double b2a, double b2b, double b3a, double b3b) {
    if (!blur) throw std::invalid_argument("default_tau: deblurring needs a blur_id");
    switch (*blur) {
      case BlurId::uniform_9:
        return b1;
      case BlurId::gaussian_a:
        return b2a;
      case BlurId::gaussian_b:
        return b2b;
      case BlurId::inverse_quadratic_a:
        return b3a;
      case BlurId::inverse_quadratic_b:
        return b3b;
    }
    return b1;
  };
  switch (problem) {
    case ProblemKind::deblur_frame:
      return by_blur(0.0124, 0.0346, 0.134, 0.0882, 0.228);
    case ProblemKind::deblur_ortho:
      return by_blur(0.0239, 0.113, 0.319, 0.129, 0.362);
    case ProblemKind::deblur_tv:
      return by_blur(0.0100, 0.0271, 0.0979, 0.0551, 0.162);
    case ProblemKind::inpaint_tv:
      // ISNR is flat to 0.03 dB over [1e-3, 0.08]; largest tau on the plateau.
      return 0.08;
    case ProblemKind::mri_tv:
      return 4.06e-6;
  }
  throw std::logic_error("default_tau: unknown problem");
}

int default_tv_inner_iters(ProblemKind problem) {
  switch (problem) {
    case ProblemKind::inpaint_tv:
      return 20;
    case ProblemKind::mri_tv:
      return 40;
    default:
      return 5;
  }
}

int default_levels(ProblemKind) { return 4; }

double default_mu_factor(ProblemKind problem) { return problem == ProblemKind::mri_tv ? 25.5 : 0.1; }

Image Problem::to_image(const Vector& estimate) const {
  if (frame) return frame->synthesis_image(estimate);
  return Image(truth.height(), truth.width(), estimate);
}

SolverConfig Problem::solver_config() const {
  SolverConfig cfg;
  cfg.mu = mu;
  cfg.max_iters = max_iters;
  cfg.rel_obj_tol = rel_obj_tol;
  return cfg;
}

Image load_truth(const ExperimentSpec& spec) {
  if (spec.phantom) return shepp_logan(*spec.phantom, *spec.phantom);
  if (!spec.image_path) throw std::invalid_argument("load_truth: no input source");
  Image image = read_pgm(*spec.image_path);
  if (spec.crop) image = center_crop(image, *spec.crop, *spec.crop);
  return image;
}

Vector degrade(const Image& truth, const ExperimentSpec& spec, const LinearOperator& op) {
  if (op.in_dim() != truth.size()) throw std::invalid_argument("degrade: operator does not act on the image");
  const Vector clean = op.apply(truth.data());
  double variance = noise_variance_for(spec, truth);
  // Circular complex noise of variance sigma^2 on F = sqrt(hw) U splits evenly
  // over (re, im) and shrinks by hw on the unitary scale.
  if (spec.problem == ProblemKind::mri_tv) variance /= 2.0 * static_cast<double>(truth.size());
  if (variance == 0.0) return clean;
  return add_gaussian_noise(clean, variance, spec.seed);
}

Problem build_problem(const ExperimentSpec& spec) {
  validate(spec);
  Problem p;
  p.kind = spec.problem;
  p.truth = load_truth(spec);
  const Index h = p.truth.height();
  const Index w = p.truth.width();

  OperatorPtr image_op = image_operator(spec, h, w);
  p.observation = degrade(p.truth, spec, *image_op);

  switch (spec.problem) {
    case ProblemKind::deblur_frame:
    case ProblemKind::deblur_ortho: {
      const FrameKind kind =
          spec.problem == ProblemKind::deblur_frame ? FrameKind::undecimated_haar : FrameKind::orthogonal_haar;
      p.frame = make_frame(kind, h, w, spec.levels.value_or(default_levels(spec.problem)));
      p.op = std::make_shared<SynthesisComposite>(image_op, p.frame);
      p.degraded = Image(h, w, p.observation);
      break;
    }
    case ProblemKind::deblur_tv:
      p.op = image_op;
      p.degraded = Image(h, w, p.observation);
      break;
    case ProblemKind::inpaint_tv:
      p.op = image_op;
      p.degraded = Image(h, w, zero_filled(static_cast<const MaskOp&>(*image_op), p.observation));
      break;
    case ProblemKind::mri_tv:
      p.op = image_op;
      break;
  }

  p.tau = spec.tau.value_or(default_tau(spec.problem, spec.blur_id));
  p.mu = spec.mu.value_or(default_mu_factor(spec.problem) * p.tau);
  p.max_iters = spec.max_iters.value_or(SolverConfig{}.max_iters);
  p.rel_obj_tol = spec.rel_obj_tol.value_or(SolverConfig{}.rel_obj_tol);
  p.regularizer = make_regularizer(p, spec.tv_inner_iters.value_or(default_tv_inner_iters(spec.problem)));
  p.regularizer.validate();
  return p;
}

double lipschitz_constant(const LinearOperator& op) {
  if (auto gram = op.diagonal_gram()) return gram->eigenvalues.maxCoeff();
  if (const auto* composite = dynamic_cast<const SynthesisComposite*>(&op)) {
    // W W^H = I for a Parseval frame, so ||A W|| = ||A||.
    return lipschitz_constant(composite->observation());
  }
  const double norm = power_method_norm(op);
  return norm * norm;
}

ExperimentResult run_solver(const Problem& problem, SolverKind solver, const RunOptions& options) {
  SolverConfig cfg = problem.solver_config();
  if (options.max_iters) cfg.max_iters = *options.max_iters;
  if (options.rel_obj_tol) cfg.rel_obj_tol = *options.rel_obj_tol;
  cfg.target_objective = options.target_objective;
  cfg.record_prox_inner = options.record_prox_inner;

  SolverResult raw;
  switch (solver) {
    case SolverKind::salsa:
      raw = salsa_run(*problem.op, problem.observation, problem.regularizer, cfg);
      break;
    case SolverKind::ist:
      raw = ist_run(*problem.op, problem.observation, problem.regularizer, lipschitz_constant(*problem.op), cfg);
      break;
    case SolverKind::fista:
      raw = fista_run(*problem.op, problem.observation, problem.regularizer, lipschitz_constant(*problem.op), cfg);
      break;
  }

  ExperimentResult out;
  out.solver = solver;
  out.estimate = problem.to_image(raw.estimate);
  out.metrics = compute_metrics(problem.truth, problem.degraded, out.estimate);
  out.metrics.final_objective = raw.trace.final_objective();
  out.metrics.iterations = raw.trace.iterations();
  out.trace = std::move(raw.trace);
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, SolverKind solver, const RunOptions& options) {
  return run_solver(build_problem(spec), solver, options);
}

std::vector<ExperimentResult> compare_solvers(const Problem& problem, const std::vector<SolverKind>& solvers,
                                              int baseline_max_iters) {
  if (solvers.empty()) throw std::invalid_argument("compare_solvers: no solvers given");
  if (baseline_max_iters < 1) throw std::invalid_argument("compare_solvers: baseline_max_iters must be >= 1");

  ExperimentResult reference = run_solver(problem, SolverKind::salsa);
  RunOptions baseline;
  baseline.target_objective = reference.metrics.final_objective;
  baseline.max_iters = baseline_max_iters;
  baseline.rel_obj_tol = 0.0;

  std::vector<ExperimentResult> results;
  for (SolverKind s : solvers) {
    if (s == SolverKind::salsa) {
      results.push_back(reference);
    } else {
      results.push_back(run_solver(problem, s, baseline));
    }
  }
  return results;
}

std::vector<ExperimentResult> compare_solvers(const ExperimentSpec& spec, const std::vector<SolverKind>& solvers,
                                              int baseline_max_iters) {
  return compare_solvers(build_problem(spec), solvers, baseline_max_iters);
}

TuneResult tune_tau(const ExperimentSpec& spec, double tau_min, double tau_max, int evaluations) {
  if (!(tau_min > 0) || !(tau_max > tau_min)) throw std::invalid_argument("tune_tau: need 0 < tau_min < tau_max");
  if (evaluations < 3) throw std::invalid_argument("tune_tau: need at least 3 evaluations");

  Problem problem = build_problem(spec);
  const int inner = problem.regularizer.tv_inner_iters;
  TuneResult result;
  result.best_score = -std::numeric_limits<double>::infinity();

  auto evaluate = [&](double log_tau) {
    const double tau = std::exp(log_tau);
    problem.tau = tau;
    problem.mu = default_mu_factor(problem.kind) * tau;
    problem.regularizer = make_regularizer(problem, inner);
    const double score = tune_score(run_solver(problem, SolverKind::salsa).metrics);
    result.evaluations.push_back({tau, score});
    if (score > result.best_score) {
      result.best_score = score;
      result.best_tau = tau;
    }
    return score;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(tau_min);
  double b = std::log(tau_max);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = evaluate(c);
  double fd = evaluate(d);
  for (int i = 2; i < evaluations; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = evaluate(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = evaluate(d);
    }
  }
  return result;
}

void write_outputs(const std::filesystem::path& dir, const Problem& problem, const ExperimentResult& result,
                   const OutputOptions& options) {
  std::filesystem::create_directories(dir);
  write_trace_csv(dir / "trace.csv", result.trace, options.trace);
  write_pgm16(dir / "estimate.pgm", result.estimate);
  write_f64(dir / "estimate.f64", result.estimate);

  std::ofstream out(dir / "metrics.txt");
  if (!out) throw std::runtime_error("cannot write " + (dir / "metrics.txt").string());
  out << "problem = " << to_string(problem.kind) << '\n';
  out << "solver = " << to_string(result.solver) << '\n';
  out << "height = " << result.estimate.height() << '\n';
  out << "width = " << result.estimate.width() << '\n';
  out << "tau = " << format_metric(problem.tau) << '\n';
  out << "mu = " << format_metric(problem.mu) << '\n';
  out << "mse = " << format_metric(result.metrics.mse) << '\n';
  if (result.metrics.isnr_db) out << "isnr_db = " << format_metric(*result.metrics.isnr_db) << '\n';
  out << "final_objective = " << format_metric(result.metrics.final_objective) << '\n';
  out << "iterations = " << result.metrics.iterations << '\n';
  out << "stop_reason = " << to_string(result.trace.stop_reason) << '\n';
  if (!out) throw std::runtime_error("write failed for " + (dir / "metrics.txt").string());
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto first = s.find_first_not_of(" \t\r");
      if (first == std::string::npos) return std::string();
      return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
    };
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace salsa
