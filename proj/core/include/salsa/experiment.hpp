#pragma once

#include "salsa/frames.hpp"
#include "salsa/operators.hpp"
#include "salsa/problems.hpp"
#include "salsa/prox.hpp"
#include "salsa/solvers.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace salsa {

enum class ProblemKind { deblur_frame, deblur_ortho, deblur_tv, inpaint_tv, mri_tv };
enum class SolverKind { salsa, ist, fista };

ProblemKind parse_problem_kind(std::string_view text);
std::string_view to_string(ProblemKind kind);
SolverKind parse_solver_kind(std::string_view text);
std::string_view to_string(SolverKind kind);

// One benchmark instance. Only the fields that matter for `problem` may be
// set; parse_experiment_spec rejects the rest.
struct ExperimentSpec {
  ProblemKind problem = ProblemKind::deblur_frame;
  std::optional<BlurId> blur_id;
  std::optional<double> noise_variance;
  // Inpainting may give its noise as an SNR instead of a variance.
  std::optional<double> snr_db;
  std::optional<double> missing_fraction;
  std::optional<int> radial_lines;
  std::optional<double> tau;
  std::optional<double> mu;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> image_path;
  // Side length of a Shepp-Logan phantom used as the ground truth.
  std::optional<int> phantom;
  // Center crop applied to image_path inputs.
  std::optional<int> crop;
  std::optional<int> levels;
  std::optional<int> tv_inner_iters;
  std::optional<int> max_iters;
  std::optional<double> rel_obj_tol;
};

// Parses `key = value` lines ('#' starts a comment). Relative image paths are
// resolved against base_dir.
ExperimentSpec parse_experiment_spec(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);
std::string format_experiment_spec(const ExperimentSpec& spec);

// Checks field relevance and ranges; throws std::invalid_argument.
void validate(const ExperimentSpec& spec);

// Checked-in tau defaults from tune-tau runs (see README).
double default_tau(ProblemKind problem, std::optional<BlurId> blur);
int default_tv_inner_iters(ProblemKind problem);
// mu / tau when mu is not given: 0.1 for 0-255 images, the same rule
// rescaled to unit peak intensity (0.1 * 255) for the phantom problem.
double default_mu_factor(ProblemKind problem);
int default_levels(ProblemKind problem);

// Everything needed to run solvers on one instance.
struct Problem {
  ProblemKind kind = ProblemKind::deblur_frame;
  Image truth;
  OperatorPtr op;
  std::shared_ptr<const Frame> frame;  // synthesis problems only
  Regularizer regularizer;
  Vector observation;
  std::optional<Image> degraded;  // same-domain degraded image, for ISNR
  double tau = 0.0;
  double mu = 0.0;
  int max_iters = 0;
  double rel_obj_tol = 0.0;

  // Maps a solver iterate to an image (W beta for synthesis problems).
  Image to_image(const Vector& estimate) const;
  SolverConfig solver_config() const;
};

Image load_truth(const ExperimentSpec& spec);
// Observation y = A x + n, deterministic in spec.seed. For mri-tv the noise
// variance refers to unnormalized DFT coefficients and is rescaled by 1/(h w)
// for the unitary operator.
Vector degrade(const Image& truth, const ExperimentSpec& spec, const LinearOperator& op);
Problem build_problem(const ExperimentSpec& spec);

struct ExperimentResult {
  SolverKind solver = SolverKind::salsa;
  Metrics metrics;
  SolverTrace trace;
  Image estimate;
};

struct RunOptions {
  // Overrides the problem's SolverConfig fields when set.
  std::optional<double> target_objective;
  std::optional<int> max_iters;
  std::optional<double> rel_obj_tol;
  bool record_prox_inner = false;
};

ExperimentResult run_solver(const Problem& problem, SolverKind solver, const RunOptions& options = {});
ExperimentResult run_experiment(const ExperimentSpec& spec, SolverKind solver, const RunOptions& options = {});

// Runs SALSA first, then each baseline until it reaches SALSA's final
// objective (or baseline_max_iters). All solvers see the same observation.
std::vector<ExperimentResult> compare_solvers(const Problem& problem, const std::vector<SolverKind>& solvers,
                                              int baseline_max_iters = 10000);
std::vector<ExperimentResult> compare_solvers(const ExperimentSpec& spec, const std::vector<SolverKind>& solvers,
                                              int baseline_max_iters = 10000);

// Squared spectral norm of the operator; exact for diagonal-Gram structures.
double lipschitz_constant(const LinearOperator& op);

struct TuneEvaluation {
  double tau;
  double score;  // ISNR in dB, or -10 log10(MSE) without a degraded image
};

struct TuneResult {
  double best_tau = 0.0;
  double best_score = 0.0;
  std::vector<TuneEvaluation> evaluations;
};

// Golden-section search over log(tau) in [tau_min, tau_max] with
// mu = default_mu_factor * tau.
TuneResult tune_tau(const ExperimentSpec& spec, double tau_min, double tau_max, int evaluations = 16);

struct OutputOptions {
  TraceCsvOptions trace;
};

// Writes trace.csv, estimate.pgm (+ .range sidecar), estimate.f64 and
// metrics.txt into dir.
void write_outputs(const std::filesystem::path& dir, const Problem& problem, const ExperimentResult& result,
                   const OutputOptions& options = {});

// key = value lines of metrics.txt.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

}  // namespace salsa
