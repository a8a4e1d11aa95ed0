#include "salsa/experiment.hpp"
#include "salsa/pgm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace salsa;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("salsa_experiment_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kDeblur = R"(
# small deblurring instance
problem = deblur-tv
blur_id = 2A
phantom = 32
seed = 5
tau = 0.02
max_iters = 50
)";

}  // namespace

TEST(SpecParse, Kinds) {
  for (const char* k : {"deblur-frame", "deblur-ortho", "deblur-tv", "inpaint-tv", "mri-tv"})
    EXPECT_EQ(to_string(parse_problem_kind(k)), k);
  for (const char* k : {"salsa", "ist", "fista"}) EXPECT_EQ(to_string(parse_solver_kind(k)), k);
  EXPECT_THROW(parse_problem_kind("deblur"), std::invalid_argument);
  EXPECT_THROW(parse_solver_kind("twist"), std::invalid_argument);
}

TEST(SpecParse, FieldsAndComments) {
  const ExperimentSpec s = parse_experiment_spec(kDeblur);
  EXPECT_EQ(s.problem, ProblemKind::deblur_tv);
  EXPECT_EQ(s.blur_id, BlurId::gaussian_a);
  EXPECT_EQ(s.phantom, 32);
  EXPECT_EQ(s.seed, 5u);
  EXPECT_DOUBLE_EQ(*s.tau, 0.02);
  EXPECT_EQ(s.max_iters, 50);
  EXPECT_FALSE(s.mu.has_value());
}

TEST(SpecParse, FormatRoundTrip) {
  const ExperimentSpec s = parse_experiment_spec(kDeblur);
  const ExperimentSpec t = parse_experiment_spec(format_experiment_spec(s));
  EXPECT_EQ(format_experiment_spec(t), format_experiment_spec(s));
  EXPECT_EQ(t.tau, s.tau);
}

TEST(SpecParse, RelativeImagePath) {
  const ExperimentSpec s = parse_experiment_spec("problem = inpaint-tv\nmissing_fraction = 0.4\nsnr_db = 40\n"
                                                 "image_path = img.pgm\n",
                                                 "/data/specs");
  EXPECT_EQ(*s.image_path, fs::path("/data/specs/img.pgm"));
}

TEST(SpecValidate, RejectsBadInput) {
  const auto bad = [](const std::string& text) {
    EXPECT_THROW(parse_experiment_spec(text), std::invalid_argument) << text;
  };
  bad("blur_id = 1\nphantom = 32\n");                                  // no problem
  bad("problem = deblur-tv\nphantom = 32\n");                          // no blur
  bad("problem = deblur-tv\nblur_id = 1\nphantom = 32\nfoo = 1\n");    // unknown key
  bad("problem = deblur-tv\nblur_id = 1\nblur_id = 2A\nphantom = 32\n");  // duplicate
  bad("problem = deblur-tv\nblur_id = 1\nphantom = 32\ntau = -1\n");
  bad("problem = deblur-tv\nblur_id = 1\nphantom = 32\ntau = 1x\n");
  bad("problem = deblur-tv\nblur_id = 1\nphantom = 32\nlevels = 2\n");
  bad("problem = deblur-frame\nblur_id = 1\nphantom = 32\ntv_inner_iters = 2\n");
  bad("problem = deblur-tv\nblur_id = 1\n");                           // no image
  bad("problem = deblur-tv\nblur_id = 1\nphantom = 32\nimage_path = a.pgm\n");
  bad("problem = deblur-tv\nblur_id = 1\nphantom = 32\ncrop = 16\n");
  bad("problem = mri-tv\nphantom = 32\nradial_lines = 4\n");           // no noise
  bad("problem = mri-tv\nphantom = 32\nnoise_variance = 1e-3\nradial_lines = 4\nblur_id = 1\n");
  bad("problem = inpaint-tv\nphantom = 32\n");                         // no fraction
  bad("problem = inpaint-tv\nphantom = 32\nmissing_fraction = 1.5\n");
  bad("problem = inpaint-tv\nphantom = 32\nmissing_fraction = 0.4\nsnr_db = 40\nnoise_variance = 1\n");
  bad("problem = deblur-tv\nblur_id = 1\nphantom = 32\nsnr_db = 40\n");
  bad("problem deblur-tv\n");
}

TEST(Defaults, Sensible) {
  EXPECT_EQ(default_tv_inner_iters(ProblemKind::inpaint_tv), 20);
  EXPECT_EQ(default_tv_inner_iters(ProblemKind::mri_tv), 40);
  EXPECT_GT(default_tau(ProblemKind::deblur_frame, BlurId::uniform_9), 0.0);
  EXPECT_GT(default_tau(ProblemKind::mri_tv, std::nullopt), 0.0);
  EXPECT_DOUBLE_EQ(default_mu_factor(ProblemKind::deblur_tv), 0.1);
}

TEST(BuildProblem, DeblurShapesAndParameters) {
  const Problem p = build_problem(parse_experiment_spec(kDeblur));
  EXPECT_EQ(p.op->in_dim(), 32 * 32);
  EXPECT_EQ(p.op->structure(), Structure::circulant_convolution);
  ASSERT_TRUE(p.degraded.has_value());
  EXPECT_EQ(p.degraded->data(), p.observation);
  EXPECT_DOUBLE_EQ(p.tau, 0.02);
  EXPECT_DOUBLE_EQ(p.mu, 0.002);
  EXPECT_EQ(p.regularizer.kind, RegularizerKind::tv_iso);
}

TEST(BuildProblem, SynthesisUsesFrame) {
  const Problem p = build_problem(parse_experiment_spec("problem = deblur-frame\nblur_id = 1\nphantom = 32\nlevels = 2\n"));
  ASSERT_NE(p.frame, nullptr);
  EXPECT_EQ(p.op->in_dim(), 32 * 32 * 7);
  EXPECT_EQ(p.regularizer.kind, RegularizerKind::l1);
  EXPECT_EQ(p.to_image(Vector::Zero(p.op->in_dim())).size(), 32 * 32);
}

TEST(BuildProblem, InpaintAndMri) {
  const Problem inpaint = build_problem(
      parse_experiment_spec("problem = inpaint-tv\nphantom = 32\nmissing_fraction = 0.25\nsnr_db = 30\n"));
  EXPECT_EQ(inpaint.observation.size(), 32 * 32 - 256);
  ASSERT_TRUE(inpaint.degraded.has_value());
  EXPECT_EQ(inpaint.regularizer.tv_inner_iters, 20);

  const Problem mri = build_problem(
      parse_experiment_spec("problem = mri-tv\nphantom = 32\nradial_lines = 6\nnoise_variance = 0\n"));
  EXPECT_EQ(mri.op->structure(), Structure::partial_fourier);
  EXPECT_FALSE(mri.degraded.has_value());
  EXPECT_LE((mri.observation - mri.op->apply(mri.truth.data())).norm(), 1e-12);
  EXPECT_DOUBLE_EQ(mri.mu, default_mu_factor(ProblemKind::mri_tv) * mri.tau);
}

TEST(Degrade, NoiseLevelFollowsSpec) {
  ExperimentSpec s = parse_experiment_spec(kDeblur);
  s.noise_variance = 9.0;
  const Problem p = build_problem(s);
  const Vector clean = p.op->apply(p.truth.data());
  const double var = (p.observation - clean).squaredNorm() / clean.size();
  EXPECT_NEAR(var, 9.0, 1.5);
  EXPECT_EQ(degrade(p.truth, s, *p.op), p.observation);
}

TEST(RunSolver, OutputsRecomputeToMetrics) {
  const Problem p = build_problem(parse_experiment_spec(kDeblur));
  const ExperimentResult r = run_solver(p, SolverKind::salsa);
  const fs::path dir = scratch_dir("outputs");
  write_outputs(dir, p, r);
  for (const char* f : {"trace.csv", "estimate.pgm", "estimate.pgm.range", "estimate.f64", "metrics.txt"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;

  const auto kv = read_key_values(dir / "metrics.txt");
  const Image est = read_f64(dir / "estimate.f64", 32, 32);
  const Metrics again = compute_metrics(p.truth, p.degraded, est);
  EXPECT_NEAR(std::stod(kv.at("mse")), again.mse, 1e-10 * again.mse);
  EXPECT_NEAR(std::stod(kv.at("isnr_db")), *again.isnr_db, 1e-10);
  EXPECT_EQ(std::stoi(kv.at("iterations")), r.trace.iterations());
  EXPECT_EQ(kv.at("solver"), "salsa");

  std::ifstream csv(dir / "trace.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "iter,objective,gap,seconds");
}

TEST(RunSolver, OverridesApply) {
  const Problem p = build_problem(parse_experiment_spec(kDeblur));
  RunOptions o;
  o.max_iters = 7;
  o.rel_obj_tol = 0.0;
  EXPECT_EQ(run_solver(p, SolverKind::fista, o).trace.iterations(), 7);
}

TEST(Compare, BaselinesChaseSalsa) {
  const Problem p = build_problem(parse_experiment_spec(kDeblur));
  const auto rs = compare_solvers(p, {SolverKind::salsa, SolverKind::ist, SolverKind::fista}, 3000);
  ASSERT_EQ(rs.size(), 3u);
  EXPECT_EQ(rs[0].solver, SolverKind::salsa);
  for (std::size_t i = 1; i < rs.size(); ++i) {
    if (rs[i].trace.stop_reason == StopReason::target_objective) {
      EXPECT_LE(rs[i].metrics.final_objective, rs[0].metrics.final_objective);
    }
  }
}

TEST(Lipschitz, ExactForStructuredOperators) {
  const Problem p = build_problem(parse_experiment_spec(kDeblur));
  EXPECT_NEAR(lipschitz_constant(*p.op), 1.0, 1e-12);
  const MaskOp m({0, 2}, 4);
  EXPECT_DOUBLE_EQ(lipschitz_constant(m), 1.0);
  Eigen::MatrixXd a(2, 2);
  a << 3, 0, 0, 1;
  EXPECT_NEAR(lipschitz_constant(DenseOperator(a)), 9.0, 1e-6);
}

TEST(Determinism, RepeatedRunsIdentical) {
  const Problem p = build_problem(parse_experiment_spec(kDeblur));
  std::ostringstream a, b;
  write_trace_csv(a, run_solver(p, SolverKind::salsa).trace, {.include_timing = false});
  write_trace_csv(b, run_solver(build_problem(parse_experiment_spec(kDeblur)), SolverKind::salsa).trace,
                  {.include_timing = false});
  EXPECT_EQ(a.str(), b.str());
}

TEST(Tune, FindsInteriorOptimum) {
  ExperimentSpec s = parse_experiment_spec(kDeblur);
  s.tau.reset();
  const TuneResult t = tune_tau(s, 1e-3, 10.0, 6);
  EXPECT_EQ(t.evaluations.size(), 6u);
  for (const auto& e : t.evaluations) EXPECT_LE(e.score, t.best_score);
  EXPECT_GE(t.best_tau, 1e-3);
  EXPECT_LE(t.best_tau, 10.0);
}
