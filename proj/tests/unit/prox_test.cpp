#include "oracles.hpp"
#include "salsa/operators.hpp"
#include "salsa/prox.hpp"

#include <gtest/gtest.h>

using namespace salsa;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

Vector piecewise_image(Index h, Index w) {
  Vector x(h * w);
  for (Index r = 0; r < h; ++r) {
    for (Index c = 0; c < w; ++c) x[r * w + c] = (r < h / 2 ? 1.0 : 0.0) + (c < w / 3 ? 0.5 : 0.0);
  }
  return x;
}

}  // namespace

TEST(Prox, SoftThresholdExample) {
  EXPECT_DOUBLE_EQ(prox(Regularizer::l1(1.0), scalar(3.0), 1.0)[0], 2.0);
  EXPECT_DOUBLE_EQ(prox(Regularizer::l1(2.0), scalar(-3.0), 2.0)[0], -2.0);
  EXPECT_DOUBLE_EQ(prox(Regularizer::l1(1.0), scalar(0.5), 1.0)[0], 0.0);
}

TEST(Prox, HardThresholdExample) {
  // Threshold sqrt(2 * 0.5) = 1.
  EXPECT_DOUBLE_EQ(prox(Regularizer::l0(0.5), scalar(0.9), 1.0)[0], 0.0);
  EXPECT_DOUBLE_EQ(prox(Regularizer::l0(0.5), scalar(1.0), 1.0)[0], 1.0);
  EXPECT_DOUBLE_EQ(prox(Regularizer::l0(0.5), scalar(-1.5), 1.0)[0], -1.5);
}

TEST(Prox, ScalarOraclesOnGrid) {
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double v = -5.0 + 10.0 * i / 9.0 + 0.013;
      const double lambda = 0.05 + 3.0 * j / 9.0;
      EXPECT_NEAR(prox(Regularizer::l1(lambda), scalar(v), 1.0)[0], oracle::l1_prox_numeric(v, lambda), 1e-6);
      EXPECT_NEAR(prox(Regularizer::l0(lambda), scalar(v), 1.0)[0], oracle::l0_prox_numeric(v, lambda), 1e-6);
    }
  }
}

TEST(Prox, ScaleDividesTau) {
  const Vector v = oracle::random_vector(20);
  EXPECT_EQ(prox(Regularizer::l1(3.0), v, 2.0), soft_threshold(v, 1.5));
  EXPECT_EQ(prox(Regularizer::l0(3.0), v, 2.0), hard_threshold(v, std::sqrt(3.0)));
  EXPECT_THROW(prox(Regularizer::l1(1.0), v, 0.0), std::invalid_argument);
}

TEST(Prox, ZeroTauIsIdentity) {
  const Vector v = oracle::random_vector(36);
  EXPECT_EQ(prox(Regularizer::l1(0.0), v, 1.0), v);
  EXPECT_EQ(prox(Regularizer::l0(0.0), v, 1.0), v);
  EXPECT_EQ(prox(Regularizer::tv(0.0, 6, 6), v, 1.0), v);
}

TEST(Prox, TvOfConstantImage) {
  const Vector v = Vector::Constant(64, 2.5);
  EXPECT_LE((prox(Regularizer::tv(1.0, 8, 8, 50), v, 1.0) - v).norm(), 1e-12);
}

TEST(Prox, L1IsNonexpansive) {
  const Regularizer r = Regularizer::l1(0.7);
  for (int t = 0; t < 100; ++t) {
    const Vector u = oracle::random_vector(30), v = oracle::random_vector(30);
    EXPECT_LE((prox(r, u, 1.0) - prox(r, v, 1.0)).norm(), (u - v).norm() + 1e-15);
  }
}

TEST(Prox, OptimalityAgainstPerturbations) {
  const Vector v = oracle::random_vector(64);
  const Regularizer l1 = Regularizer::l1(0.4);
  const Regularizer tv = Regularizer::tv(0.4, 8, 8, 2000);
  for (const Regularizer* r : {&l1, &tv}) {
    const Vector x = prox(*r, v, 1.0);
    const double best = denoising_objective(*r, x, v, r->tau);
    int worse = 0;
    for (int t = 0; t < 1000; ++t) {
      const Vector y = x + 1e-3 * oracle::random_vector(64);
      worse += denoising_objective(*r, y, v, r->tau) >= best - 1e-12;
    }
    EXPECT_EQ(worse, 1000) << to_string(r->kind);
  }
}

TEST(Prox, ChambolleInnerObjectiveIsMonotone) {
  const Index h = 16, w = 16;
  const Vector v = piecewise_image(h, w) + 0.2 * oracle::random_vector(h * w);
  for (double lambda : {0.01, 0.1, 1.0, 10.0}) {
    const Regularizer r = Regularizer::tv(lambda, h, w, 200);
    ProxState state(true);
    prox(r, v, 1.0, &state);
    const auto& f = state.last_inner_objectives();
    ASSERT_EQ(f.size(), 201u);
    for (std::size_t k = 1; k < f.size(); ++k) EXPECT_LE(f[k], f[k - 1] + 1e-10) << lambda << " step " << k;
  }
}

TEST(Prox, WarmStartContinuesDualIteration) {
  // Two warm-started calls of n iterations equal one cold call of 2n.
  const Index h = 8, w = 8;
  const Vector v = oracle::random_vector(h * w);
  ProxState state;
  prox(Regularizer::tv(0.3, h, w, 10), v, 1.0, &state);
  const Vector warm = prox(Regularizer::tv(0.3, h, w, 10), v, 1.0, &state);
  const Vector cold = prox(Regularizer::tv(0.3, h, w, 20), v, 1.0);
  EXPECT_LE((warm - cold).norm(), 1e-12 * cold.norm());
}

TEST(Prox, TvProxConvergesTowardOneDimensionalSolution) {
  // A single row: TV denoising of a step reduces the jump by 2 lambda / run length.
  const Index w = 8;
  Vector v(w);
  v << 0, 0, 0, 0, 1, 1, 1, 1;
  const Vector x = prox(Regularizer::tv(0.2, 1, w, 5000), v, 1.0);
  for (Index i = 0; i < 4; ++i) EXPECT_NEAR(x[i], 0.05, 1e-6);
  for (Index i = 4; i < 8; ++i) EXPECT_NEAR(x[i], 0.95, 1e-6);
}

TEST(RegularizerValue, Examples) {
  EXPECT_EQ(regularizer_value(Regularizer::l1(1.0), Vector{{1.0, -1.0}}), 2.0);
  EXPECT_EQ(regularizer_value(Regularizer::l0(1.0), Vector{{0.0, 3.0, 0.0, -2.0}}), 2.0);
  EXPECT_EQ(regularizer_value(Regularizer::tv(1.0, 4, 4), Vector::Constant(16, 3.0)), 0.0);
}

TEST(RegularizerValue, TvMatchesOracle) {
  const Vector x = oracle::random_vector(7 * 9);
  EXPECT_NEAR(total_variation(x, 7, 9), oracle::total_variation(x, 7, 9), 1e-12 * oracle::total_variation(x, 7, 9));
  EXPECT_THROW(total_variation(x, 8, 9), std::invalid_argument);
}

TEST(Objective, IdentityExample) {
  const DenseOperator id(Eigen::MatrixXd::Identity(2, 2));
  EXPECT_DOUBLE_EQ(objective(id, Vector::Zero(2), Regularizer::l1(1.0), Vector{{1.0, -1.0}}), 3.0);
  const Vector y{{0.3, 0.4}};
  EXPECT_EQ(objective(id, y, Regularizer::l1(0.0), y), 0.0);
  EXPECT_THROW(objective(id, Vector::Zero(3), Regularizer::l1(1.0), y), std::invalid_argument);
}

TEST(Objective, MatchesStraightLineEvaluator) {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(30, 36);
  const DenseOperator op(a);
  const Vector x = oracle::random_vector(36), y = oracle::random_vector(30);
  double data = 0.0;
  for (Index i = 0; i < 30; ++i) {
    double ax = 0.0;
    for (Index j = 0; j < 36; ++j) ax += a(i, j) * x[j];
    data += 0.5 * (ax - y[i]) * (ax - y[i]);
  }
  double l1 = 0.0;
  for (Index j = 0; j < 36; ++j) l1 += std::abs(x[j]);
  const double tv = oracle::total_variation(x, 6, 6);
  EXPECT_NEAR(objective(op, y, Regularizer::l1(0.3), x), data + 0.3 * l1, 1e-12 * (data + l1));
  EXPECT_NEAR(objective(op, y, Regularizer::tv(0.3, 6, 6), x), data + 0.3 * tv, 1e-12 * (data + tv));
}

TEST(Regularizer, Validation) {
  EXPECT_THROW(Regularizer::l1(-1.0).validate(), std::invalid_argument);
  EXPECT_THROW(Regularizer::tv(1.0, 0, 4).validate(), std::invalid_argument);
  EXPECT_THROW(Regularizer::tv(1.0, 4, 4, 0).validate(), std::invalid_argument);
  EXPECT_THROW(prox(Regularizer::tv(1.0, 4, 4), Vector::Zero(15), 1.0), std::invalid_argument);
}
